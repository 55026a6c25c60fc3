#ifndef ISOLAB_RESGROUPS_HPP
#define ISOLAB_RESGROUPS_HPP

// Restriction of scalars. The unramified case is a cyclic tuple (b_0, ..., b_{g-1})
// on which sigma acts by (sigma b)_i = sigma(b_{i-1}); the totally ramified case is a
// single matrix over the ramified field with slopes divided by the degree.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cochar.hpp"
#include "coeffs.hpp"
#include "errors.hpp"
#include "invariants.hpp"
#include "laurent.hpp"
#include "matl.hpp"
#include "sampling.hpp"

namespace isolab {

struct ResElement {
    std::vector<MatL> parts;

    ResElement() = default;
    explicit ResElement(std::vector<MatL> ps) : parts(std::move(ps))
    {
        if (parts.empty())
            fail(ErrorKind::InvalidParams, "restriction of scalars needs g >= 1");
        for (const auto &p : parts) {
            if (p.ctx_ptr() != parts.front().ctx_ptr())
                fail(ErrorKind::ContextMismatch, "parts over different fields");
            if (p.n() != parts.front().n())
                fail(ErrorKind::LengthMismatch, "parts of different sizes");
        }
    }

    int g() const noexcept { return static_cast<int>(parts.size()); }
    std::size_t n() const { return parts.front().n(); }
    const FieldCtx &ctx() const { return parts.front().ctx(); }

    const MatL &at(int i) const
    {
        const int gg = g();
        return parts[static_cast<std::size_t>(((i % gg) + gg) % gg)];
    }

    friend bool operator==(const ResElement &, const ResElement &) = default;
};

/// Component i of (b sigma)^k is b_i * sigma(b_{i-1}) * ... * sigma^{k-1}(b_{i-k+1}).
inline ResElement res_twisted_power(const ResElement &b, int k)
{
    if (k < 0)
        fail(ErrorKind::InvalidParams, "twisted power needs k >= 0");
    std::vector<MatL> out;
    out.reserve(b.parts.size());
    for (int i = 0; i < b.g(); ++i) {
        if (k == 0) {
            out.push_back(MatL::identity(b.ctx(), b.n()));
            continue;
        }
        MatL prod = b.at(i);
        for (int j = 1; j < k; ++j)
            prod = prod * b.at(i - j).sigma(j);
        out.push_back(std::move(prod));
    }
    return ResElement(std::move(out));
}

inline std::vector<Cocharacter> res_hodge(const ResElement &b)
{
    std::vector<Cocharacter> out;
    for (const auto &p : b.parts)
        out.push_back(hodge_point(p));
    return out;
}

/// The Frobenius image sigma(b): part i becomes sigma(b_{i-1}).
inline ResElement res_sigma_shift(const ResElement &b)
{
    std::vector<MatL> out;
    for (int i = 0; i < b.g(); ++i)
        out.push_back(b.at(i - 1).sigma());
    return ResElement(std::move(out));
}

/// The same isocrystal as one (g n) x (g n) matrix: block (i, i-1) holds b_i.
inline MatL res_unfold(const ResElement &b)
{
    const std::size_t n = b.n();
    const auto g = static_cast<std::size_t>(b.g());
    MatL big(b.ctx(), g * n);
    for (std::size_t i = 0; i < g; ++i) {
        const std::size_t src = (i + g - 1) % g;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                big(i * n + r, src * n + c) = b.parts[i](r, c);
    }
    return big;
}

/// Per-factor Newton point: the slopes of ((b sigma)^g)_0 * sigma^g, divided by g.
inline Cocharacter res_newton(const ResElement &b)
{
    const MatL c = res_twisted_power(b, b.g()).parts.front();
    return newton_point(c, b.g()).scaled(Rational(1, b.g()));
}

struct GOType {
    int g = 0;
    std::vector<int> members; ///< sorted subset of {0, ..., g-1}

    GOType() = default;
    GOType(int g_, std::vector<int> ms) : g(g_), members(std::move(ms))
    {
        if (g < 1)
            fail(ErrorKind::InvalidParams, "type needs g >= 1");
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        for (const int i : members)
            if (i < 0 || i >= g)
                fail(ErrorKind::RangeError, "type member " + std::to_string(i) + " outside Z/" + std::to_string(g));
    }

    static GOType from_mask(int g, std::uint32_t mask)
    {
        std::vector<int> ms;
        for (int i = 0; i < g; ++i)
            if (mask >> i & 1U)
                ms.push_back(i);
        return GOType(g, std::move(ms));
    }

    std::uint32_t mask() const
    {
        std::uint32_t m = 0;
        for (const int i : members)
            m |= 1U << i;
        return m;
    }

    bool contains(int i) const { return std::binary_search(members.begin(), members.end(), i); }
    bool full() const { return static_cast<int>(members.size()) == g; }

    std::string to_string() const
    {
        std::string s = "{";
        for (std::size_t k = 0; k < members.size(); ++k)
            s += (k ? "," : "") + std::to_string(members[k]);
        return s + "}";
    }

    friend bool operator==(const GOType &, const GOType &) = default;
};

inline GOType go_type(const ResElement &b)
{
    if (b.n() != 2)
        fail(ErrorKind::BadHodgeProfile, "types are defined for GL_2 factors");
    const Cocharacter mu10 = Cocharacter::from_ints({1, 0});
    const Cocharacter mu11 = Cocharacter::from_ints({1, 1});
    for (int i = 0; i < b.g(); ++i) {
        const Cocharacter mu = hodge_point(b.at(i));
        if (mu != mu10)
            fail(ErrorKind::BadHodgeProfile, "part " + std::to_string(i) + " has Hodge point " + mu.to_string());
    }
    std::vector<int> members;
    for (int i = 0; i < b.g(); ++i)
        if (hodge_point(b.at(i) * b.at(i - 1).sigma()) == mu11)
            members.push_back(i);
    return GOType(b.g(), std::move(members));
}

/// No two cyclically consecutive elements (for g = 1 any subset qualifies).
inline bool is_spaced(int g, std::uint32_t mask)
{
    if (g == 1)
        return true;
    for (int i = 0; i < g; ++i)
        if ((mask >> i & 1U) && (mask >> ((i + 1) % g) & 1U))
            return false;
    return true;
}

inline Rational go_lambda(const GOType &tau)
{
    if (tau.g % 2 == 1 && tau.full())
        return Rational(1, 2);
    const std::uint32_t t = tau.mask();
    int best = 0;
    // Every submask of tau.
    for (std::uint32_t s = t;; s = (s - 1) & t) {
        if (is_spaced(tau.g, s))
            best = std::max(best, std::popcount(s));
        if (s == 0)
            break;
    }
    return Rational(best, tau.g);
}

inline Cocharacter go_beta(const GOType &tau)
{
    const Rational l = go_lambda(tau);
    return Cocharacter({1 - l, l});
}

/// A_tau = ((a_i, -pi), (1, 0))_i. Part i contributes to the type at index i+1, so
/// a_i vanishes exactly when i+1 lies in tau; the other a_i are distinct nonzero constants.
inline ResElement go_generic_matrix(const FieldCtx &F, const GOType &tau, std::uint64_t seed)
{
    const int g = tau.g;
    const int needed = g - static_cast<int>(tau.members.size());
    if (static_cast<std::int64_t>(F.order()) - 1 < needed)
        fail(ErrorKind::DegreeTooSmall, F.describe() + " has too few nonzero elements for " +
                                            std::to_string(needed) + " distinct generic coefficients");
    Rng rng(seed, 0, "go-generic");
    std::vector<std::uint32_t> pool(F.order() - 1);
    std::iota(pool.begin(), pool.end(), 1U);
    for (std::size_t i = pool.size(); i > 1; --i)
        std::swap(pool[i - 1], pool[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1))]);
    std::vector<MatL> parts;
    std::size_t next = 0;
    for (int i = 0; i < g; ++i) {
        MatL a(F, 2);
        if (!tau.contains((i + 1) % g))
            a(0, 0) = LaurentSeries::constant(F, FFElem{pool[next++]});
        a(0, 1) = -LaurentSeries::pi_power(F, 1);
        a(1, 0) = LaurentSeries::integer(F, 1);
        parts.push_back(std::move(a));
    }
    return ResElement(std::move(parts));
}

/// Random element with every part of Hodge point (1,0) and type exactly tau.
///
/// b_i = k_i * diag(pi, 1) * h_i. Index i is in the type iff the (2,2) entry of
/// h_i * sigma(k_{i-1}) vanishes mod pi; for i in tau, h_i = U_i * swap * sigma(k_{i-1})^{-1}
/// with U_i unit upper triangular forces this, other h_i are rejected until it fails.
inline ResElement go_sample_of_type(const FieldCtx &F, const GOType &tau, std::uint64_t seed, std::uint64_t index)
{
    const int g = tau.g;
    const MatL d = MatL::diag_pi(F, {1, 0});
    MatL swap(F, 2);
    swap(0, 1) = LaurentSeries::integer(F, 1);
    swap(1, 0) = LaurentSeries::integer(F, 1);
    Rng rng(seed, index, "go-sample");
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Unimodular> ks;
        for (int i = 0; i < g; ++i)
            ks.push_back(random_unimodular(F, 2, rng, 2, 1));
        std::vector<MatL> parts;
        for (int i = 0; i < g; ++i) {
            const auto &prev = ks[static_cast<std::size_t>((i + g - 1) % g)];
            MatL h;
            if (tau.contains(i)) {
                MatL u = MatL::identity(F, 2);
                u(0, 1) = rng.integral(F, 2, 1);
                h = u * swap * prev.inverse.sigma();
            } else {
                h = random_unimodular(F, 2, rng, 2, 1).k;
            }
            parts.push_back(ks[static_cast<std::size_t>(i)].k * d * h);
        }
        ResElement b(std::move(parts));
        if (go_type(b) == tau)
            return b;
    }
    fail(ErrorKind::SamplingExhausted, "could not sample an element of type " + tau.to_string());
}

struct DisplayParams {
    int g = 0;
    int i = 0;
    int j = 0;
    int m = 0;
    LaurentSeries c;

    void validate() const
    {
        if (g < 1 || i + j != g || j < 0 || j > i || m < j)
            fail(ErrorKind::InvalidParams, "display parameters need i + j = g, 0 <= j <= i, m >= j (got g=" +
                                               std::to_string(g) + " i=" + std::to_string(i) + " j=" +
                                               std::to_string(j) + " m=" + std::to_string(m) + ")");
        if (!c.is_certified_nonzero() || c.stored_val() != 0)
            fail(ErrorKind::InvalidParams, "c must be a unit");
    }
};

/// F = ((T^m, c T^i), (T^j, 0)) with T the uniformizer of the ramified field.
inline MatL ag_display(const DisplayParams &prm)
{
    prm.validate();
    const FieldCtx &F = prm.c.ctx();
    MatL f(F, 2);
    f(0, 0) = LaurentSeries::pi_power(F, prm.m);
    f(0, 1) = prm.c * LaurentSeries::pi_power(F, prm.i);
    f(1, 0) = LaurentSeries::pi_power(F, prm.j);
    return f;
}

struct AGInvariants {
    int j = 0;
    int n = 0;
};

inline AGInvariants ag_invariants(const MatL &f)
{
    if (f.n() != 2)
        fail(ErrorKind::InvalidParams, "display matrices are 2x2");
    const Cocharacter mu1 = hodge_point(f);
    const Cocharacter mu2 = hodge_point(twisted_power(f, 2));
    const auto j = mu1.smallest();
    const auto nj = mu2.smallest();
    return {static_cast<int>(j.numerator()), static_cast<int>((nj - j).numerator())};
}

inline Rational ag_lambda(int n, int g)
{
    if (g < 1 || n < 0 || n > g)
        fail(ErrorKind::RangeError, "ag_lambda needs 0 <= n <= g, got n=" + std::to_string(n) + " g=" + std::to_string(g));
    return std::min(Rational(n, g), Rational(1, 2));
}

struct BaseChangeReport {
    int e = 1;
    Cocharacter hodge, newton;
    Cocharacter hodge_rebased, newton_rebased;
    bool scaled_ok = false;
};

inline BaseChangeReport base_change_check(const MatL &b, int e)
{
    if (e < 1)
        fail(ErrorKind::InvalidParams, "ramification index must be >= 1");
    BaseChangeReport r;
    r.e = e;
    r.hodge = hodge_point(b);
    r.newton = newton_point(b);
    const MatL b2 = b.rebased(e);
    r.hodge_rebased = hodge_point(b2);
    r.newton_rebased = newton_point(b2);
    r.scaled_ok = r.hodge_rebased == r.hodge.scaled(Rational(e)) && r.newton_rebased == r.newton.scaled(Rational(e));
    return r;
}

} // namespace isolab

#endif // ISOLAB_RESGROUPS_HPP
