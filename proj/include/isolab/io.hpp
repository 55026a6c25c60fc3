#ifndef ISOLAB_IO_HPP
#define ISOLAB_IO_HPP

// JSON encodings of every value type (schema "isolab/1"). Rationals travel as
// "num/den" strings.

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cochar.hpp"
#include "coeffs.hpp"
#include "errors.hpp"
#include "invariants.hpp"
#include "laurent.hpp"
#include "matl.hpp"
#include "resgroups.hpp"

namespace isolab::io {

using nlohmann::json;

inline constexpr const char *kSchema = "isolab/1";

namespace detail {

[[noreturn]] inline void bad(const std::string &what) { fail(ErrorKind::ParseError, what); }

inline const json &field(const json &j, const char *key, const char *what)
{
    if (!j.is_object() || !j.contains(key))
        bad(std::string(what) + " needs a \"" + key + "\" field");
    return j.at(key);
}

inline int as_int(const json &j, const char *what)
{
    if (!j.is_number_integer())
        bad(std::string(what) + " must be an integer");
    return j.get<int>();
}

} // namespace detail

inline json field_to_json(const FieldCtx &F)
{
    return {{"p", F.p()}, {"m", F.m()}, {"modulus", F.modulus()}};
}

inline json ffelem_to_json(const FieldCtx &F, FFElem x) { return F.coords(x); }

inline FFElem ffelem_from_json(const FieldCtx &F, const json &j)
{
    if (j.is_number_integer() && F.m() == 1)
        return F.from_int(j.get<std::int64_t>());
    if (!j.is_array())
        detail::bad("field element must be an array of " + std::to_string(F.m()) + " integers");
    std::vector<int> c;
    for (const auto &x : j)
        c.push_back(detail::as_int(x, "field coordinate"));
    return F.from_coords(c);
}

inline json series_to_json(const LaurentSeries &x)
{
    json coeffs = json::array();
    for (const auto &c : x.coeffs())
        coeffs.push_back(ffelem_to_json(x.ctx(), c));
    return {{"val", x.stored_val()}, {"prec", x.prec()}, {"exact", x.exact()}, {"coeffs", std::move(coeffs)}};
}

/// Shorthand strings: "0", "1", "-1", "pi", "pi^k", "-pi^k".
inline LaurentSeries series_from_string(const FieldCtx &F, const std::string &text)
{
    std::string s;
    for (const char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    bool neg = false;
    if (!s.empty() && s.front() == '-') {
        neg = true;
        s.erase(0, 1);
    }
    LaurentSeries out;
    if (s.rfind("pi", 0) == 0) {
        int k = 1;
        if (s.size() > 2) {
            if (s[2] != '^')
                detail::bad("bad series shorthand '" + text + "'");
            try {
                std::size_t used = 0;
                k = std::stoi(s.substr(3), &used);
                if (used != s.size() - 3)
                    detail::bad("bad series shorthand '" + text + "'");
            } catch (const std::logic_error &) {
                detail::bad("bad series shorthand '" + text + "'");
            }
        }
        out = LaurentSeries::pi_power(F, k);
    } else {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(s, &used);
            if (used != s.size())
                detail::bad("bad series shorthand '" + text + "'");
            out = LaurentSeries::integer(F, v);
        } catch (const std::logic_error &) {
            detail::bad("bad series shorthand '" + text + "'");
        }
    }
    return neg ? -out : out;
}

/// Objects without "prec" are exact unless "exact" is false, in which case default_prec applies.
inline LaurentSeries series_from_json(const FieldCtx &F, const json &j, int default_prec = kDefaultPrecision)
{
    if (j.is_string())
        return series_from_string(F, j.get<std::string>());
    if (j.is_number_integer())
        return LaurentSeries::integer(F, j.get<std::int64_t>());
    if (!j.is_object())
        detail::bad("series must be an object, an integer, or a \"pi^k\" string");
    const int val = j.contains("val") ? detail::as_int(j.at("val"), "val") : 0;
    const json &cj = detail::field(j, "coeffs", "series");
    if (!cj.is_array())
        detail::bad("series coeffs must be an array");
    std::vector<FFElem> coeffs;
    for (const auto &c : cj)
        coeffs.push_back(ffelem_from_json(F, c));
    bool exact = !j.contains("prec");
    if (j.contains("exact")) {
        if (!j.at("exact").is_boolean())
            detail::bad("series exact flag must be a boolean");
        exact = j.at("exact").get<bool>();
    }
    const int prec = j.contains("prec") ? detail::as_int(j.at("prec"), "prec") : default_prec;
    return LaurentSeries::from_coeffs(F, val, std::move(coeffs), exact, prec);
}

inline json matrix_to_json(const MatL &b)
{
    json rows = json::array();
    for (std::size_t i = 0; i < b.n(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < b.n(); ++k)
            row.push_back(series_to_json(b(i, k)));
        rows.push_back(std::move(row));
    }
    return {{"n", b.n()}, {"entries", std::move(rows)}};
}

/// Accepts {"n", "entries"} or a bare array of rows.
inline MatL matrix_from_json(const FieldCtx &F, const json &j, int default_prec = kDefaultPrecision)
{
    const json &rows = j.is_array() ? j : detail::field(j, "entries", "matrix");
    if (!rows.is_array())
        detail::bad("matrix entries must be an array of rows");
    const std::size_t n = rows.size();
    if (j.is_object() && j.contains("n") && detail::as_int(j.at("n"), "n") != static_cast<int>(n))
        detail::bad("matrix n does not match the number of rows");
    MatL b(F, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n)
            detail::bad("matrix row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
        for (std::size_t k = 0; k < n; ++k)
            b(i, k) = series_from_json(F, rows[i][k], default_prec);
    }
    return b;
}

inline json rational_to_json(const Rational &r) { return to_string(r); }

inline Rational rational_from_json(const json &j)
{
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    if (!j.is_string())
        detail::bad("rational must be a \"num/den\" string");
    return parse_rational(j.get<std::string>());
}

inline json cochar_to_json(const Cocharacter &x)
{
    json a = json::array();
    for (const auto &s : x.slopes())
        a.push_back(rational_to_json(s));
    return a;
}

inline Cocharacter cochar_from_json(const json &j)
{
    if (!j.is_array())
        detail::bad("cocharacter must be an array of rationals");
    std::vector<Rational> s;
    for (const auto &x : j)
        s.push_back(rational_from_json(x));
    return Cocharacter(std::move(s));
}

inline json signature_to_json(const StrataSignature &sig)
{
    json a = json::array();
    for (const auto &mu : sig.mus)
        a.push_back(cochar_to_json(mu));
    return a;
}

inline StrataSignature signature_from_json(const json &j)
{
    if (!j.is_array())
        detail::bad("signature must be an array of cocharacters");
    StrataSignature sig;
    for (const auto &x : j)
        sig.mus.push_back(cochar_from_json(x));
    for (const auto &mu : sig.mus)
        if (mu.size() != sig.mus.front().size())
            fail(ErrorKind::LengthMismatch, "signature entries of different lengths");
    return sig;
}

inline json gotype_to_json(const GOType &t) { return {{"g", t.g}, {"members", t.members}}; }

inline GOType gotype_from_json(const json &j)
{
    const int g = detail::as_int(detail::field(j, "g", "type"), "g");
    const json &ms = detail::field(j, "members", "type");
    if (!ms.is_array())
        detail::bad("type members must be an array");
    std::vector<int> members;
    for (const auto &x : ms)
        members.push_back(detail::as_int(x, "type member"));
    return GOType(g, std::move(members));
}

inline json display_to_json(const DisplayParams &d)
{
    return {{"g", d.g}, {"i", d.i}, {"j", d.j}, {"m", d.m}, {"c", series_to_json(d.c)}};
}

inline DisplayParams display_from_json(const FieldCtx &F, const json &j, int default_prec = kDefaultPrecision)
{
    DisplayParams d;
    d.g = detail::as_int(detail::field(j, "g", "display"), "g");
    d.i = detail::as_int(detail::field(j, "i", "display"), "i");
    d.j = detail::as_int(detail::field(j, "j", "display"), "j");
    d.m = detail::as_int(detail::field(j, "m", "display"), "m");
    d.c = j.contains("c") ? series_from_json(F, j.at("c"), default_prec) : LaurentSeries::integer(F, 1);
    d.validate();
    return d;
}

inline json res_to_json(const ResElement &b)
{
    json parts = json::array();
    for (const auto &p : b.parts)
        parts.push_back(matrix_to_json(p));
    return {{"g", b.g()}, {"parts", std::move(parts)}};
}

inline ResElement res_from_json(const FieldCtx &F, const json &j, int default_prec = kDefaultPrecision)
{
    const json &ps = detail::field(j, "parts", "restriction-of-scalars element");
    if (!ps.is_array())
        detail::bad("parts must be an array of matrices");
    std::vector<MatL> parts;
    for (const auto &p : ps)
        parts.push_back(matrix_from_json(F, p, default_prec));
    if (j.contains("g") && detail::as_int(j.at("g"), "g") != static_cast<int>(parts.size()))
        detail::bad("g does not match the number of parts");
    return ResElement(std::move(parts));
}

inline json scan_to_json(const ScanReport &r)
{
    json tallies = json::array();
    for (const auto &t : r.tallies)
        tallies.push_back({{"newton", cochar_to_json(t.newton)},
                           {"count", t.count},
                           {"first_trial", t.first_trial},
                           {"witness", matrix_to_json(t.witness)}});
    return {{"signature", signature_to_json(r.target)},
            {"accepted", r.accepted},
            {"attempts", r.attempts},
            {"tallies", std::move(tallies)}};
}

inline json trace_to_json(const ConvergenceTrace &t)
{
    json rows = json::array();
    for (const auto &r : t.rows)
        rows.push_back({{"k", r.k},
                        {"slopes", cochar_to_json(r.normalized_hodge)},
                        {"distance", rational_to_json(r.distance)},
                        {"raw_distance", rational_to_json(r.raw_distance)},
                        {"mazur", r.mazur}});
    return {{"newton", cochar_to_json(t.newton)}, {"fitted_c", rational_to_json(t.fitted_c)}, {"rows", std::move(rows)}};
}

inline json congruence_to_json(const CongruenceReport &r)
{
    json out = {{"level", r.level},
                {"depth", r.depth},
                {"trials", r.trials},
                {"violations", r.violations},
                {"preserved", r.violations == 0},
                {"baseline", signature_to_json(r.baseline)}};
    out["first_violation"] = r.first_violation ? json(*r.first_violation) : json(nullptr);
    return out;
}

inline json basechange_to_json(const BaseChangeReport &r)
{
    return {{"e", r.e},
            {"hodge", cochar_to_json(r.hodge)},
            {"newton", cochar_to_json(r.newton)},
            {"hodge_rebased", cochar_to_json(r.hodge_rebased)},
            {"newton_rebased", cochar_to_json(r.newton_rebased)},
            {"scaled_ok", r.scaled_ok}};
}

/// Parses text, turning syntax errors into ParseError with the byte offset.
inline json parse(const std::string &text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        fail(ErrorKind::ParseError, "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

} // namespace isolab::io

#endif // ISOLAB_IO_HPP
