#ifndef ISOLAB_COCHAR_HPP
#define ISOLAB_COCHAR_HPP

// Rational cocharacters of the diagonal torus of GL_n modulo the symmetric group.
// A Cocharacter is stored through its dominant (non-increasing) representative; the
// longest Weyl element acts by reversing that list.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "errors.hpp"

namespace isolab {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational &r)
{
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rational parse_rational(const std::string &text)
{
    try {
        std::size_t used = 0;
        const auto slash = text.find('/');
        if (slash == std::string::npos) {
            const long long num = std::stoll(text, &used);
            if (used != text.size())
                fail(ErrorKind::ParseError, "bad rational '" + text + "'");
            return Rational(num);
        }
        const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
        std::size_t ua = 0, ub = 0;
        const long long num = std::stoll(a, &ua);
        const long long den = std::stoll(b, &ub);
        if (ua != a.size() || ub != b.size() || den == 0)
            fail(ErrorKind::ParseError, "bad rational '" + text + "'");
        return Rational(num, den);
    } catch (const std::logic_error &) {
        fail(ErrorKind::ParseError, "bad rational '" + text + "'");
    }
}

inline Rational floor_rational(const Rational &r)
{
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0)
        --q;
    return Rational(q);
}

class Cocharacter {
public:
    Cocharacter() = default;

    explicit Cocharacter(std::vector<Rational> slopes) : slopes_(std::move(slopes))
    {
        std::sort(slopes_.begin(), slopes_.end(), std::greater<>());
    }

    static Cocharacter from_ints(const std::vector<std::int64_t> &values)
    {
        std::vector<Rational> s(values.begin(), values.end());
        return Cocharacter(std::move(s));
    }

    static Cocharacter zero(std::size_t n) { return Cocharacter(std::vector<Rational>(n, Rational(0))); }

    std::size_t size() const noexcept { return slopes_.size(); }
    const Rational &operator[](std::size_t i) const { return slopes_[i]; }
    /// Dominant representative.
    const std::vector<Rational> &slopes() const noexcept { return slopes_; }
    const Rational &largest() const { return slopes_.front(); }
    const Rational &smallest() const { return slopes_.back(); }

    Rational total() const { return std::accumulate(slopes_.begin(), slopes_.end(), Rational(0)); }

    Cocharacter scaled(const Rational &factor) const
    {
        std::vector<Rational> s = slopes_;
        for (auto &x : s)
            x *= factor;
        return Cocharacter(std::move(s));
    }

    /// The w0-twisted representative (non-decreasing order).
    std::vector<Rational> antidominant() const { return {slopes_.rbegin(), slopes_.rend()}; }

    std::vector<Rational> prefix_sums() const
    {
        std::vector<Rational> out(slopes_.size() + 1, Rational(0));
        for (std::size_t i = 0; i < slopes_.size(); ++i)
            out[i + 1] = out[i] + slopes_[i];
        return out;
    }

    /// Lowest common denominator of all slopes.
    std::int64_t denominator_lcm() const
    {
        std::int64_t l = 1;
        for (const auto &x : slopes_)
            l = std::lcm(l, x.denominator());
        return l;
    }

    std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < slopes_.size(); ++i)
            s += (i ? "," : "") + isolab::to_string(slopes_[i]);
        return s + ")";
    }

    friend bool operator==(const Cocharacter &, const Cocharacter &) = default;
    friend bool operator<(const Cocharacter &a, const Cocharacter &b) { return a.slopes_ < b.slopes_; }

private:
    std::vector<Rational> slopes_;
};

inline std::ostream &operator<<(std::ostream &os, const Cocharacter &x) { return os << x.to_string(); }

inline void require_same_length(const Cocharacter &x, const Cocharacter &y)
{
    if (x.size() != y.size())
        fail(ErrorKind::LengthMismatch,
             "cocharacters of length " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
}

/// x ≺ y in the dominance order: prefix sums of x never exceed those of y, with equal totals.
inline bool dominates(const Cocharacter &x, const Cocharacter &y)
{
    require_same_length(x, y);
    Rational sx(0), sy(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        if (sx > sy)
            return false;
    }
    return sx == sy;
}

/// |x, y|: total positive excess of x over y, coordinatewise on dominant representatives.
inline Rational metric(const Cocharacter &x, const Cocharacter &y)
{
    require_same_length(x, y);
    if (x.total() != y.total())
        fail(ErrorKind::SumMismatch, "metric needs equal totals: " + x.to_string() + " vs " + y.to_string());
    Rational d(0);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > y[i])
            d += x[i] - y[i];
    return d;
}

inline Cocharacter oplus(const Cocharacter &x, const Cocharacter &y)
{
    require_same_length(x, y);
    std::vector<Rational> s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        s[i] = x[i] + y[i];
    return Cocharacter(std::move(s));
}

inline Cocharacter oplus_w0(const Cocharacter &x, const Cocharacter &y)
{
    require_same_length(x, y);
    const std::size_t n = x.size();
    std::vector<Rational> s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = x[i] + y[n - 1 - i];
    return Cocharacter(std::move(s));
}

struct SuperbasicBlock {
    Rational slope; ///< h/m in lowest terms
    int size;       ///< m, the denominator of the slope

    friend bool operator==(const SuperbasicBlock &, const SuperbasicBlock &) = default;
};

/// Splits a Newton point into superbasic blocks, in dominant order.
inline std::vector<SuperbasicBlock> superbasic_parts(const Cocharacter &nu)
{
    std::vector<SuperbasicBlock> out;
    std::size_t i = 0;
    while (i < nu.size()) {
        std::size_t j = i;
        while (j < nu.size() && nu[j] == nu[i])
            ++j;
        const auto mult = static_cast<std::int64_t>(j - i);
        const std::int64_t den = nu[i].denominator();
        if (mult % den != 0)
            fail(ErrorKind::NotANewtonPoint, "slope " + to_string(nu[i]) + " occurs " + std::to_string(mult) +
                                                 " times, not a multiple of its denominator");
        for (std::int64_t b = 0; b < mult / den; ++b)
            out.push_back({nu[i], static_cast<int>(den)});
        i = j;
    }
    return out;
}

inline bool is_newton_point(const Cocharacter &nu)
{
    try {
        superbasic_parts(nu);
        return true;
    } catch (const Error &) {
        return false;
    }
}

struct NewtonPolygon {
    std::vector<std::pair<int, Rational>> vertices;

    friend bool operator==(const NewtonPolygon &, const NewtonPolygon &) = default;
};

/// Concave polygon through the prefix sums; only genuine corners are kept.
inline NewtonPolygon polygon(const Cocharacter &x)
{
    NewtonPolygon poly;
    const auto sums = x.prefix_sums();
    poly.vertices.emplace_back(0, sums[0]);
    for (std::size_t i = 1; i < sums.size(); ++i) {
        const bool corner = i + 1 == sums.size() || x[i - 1] != x[i];
        if (corner)
            poly.vertices.emplace_back(static_cast<int>(i), sums[i]);
    }
    return poly;
}

/// Maximal vertical distance between the two concave polygons (attained at integer abscissae).
inline Rational min_gap(const Cocharacter &x, const Cocharacter &y)
{
    require_same_length(x, y);
    if (x.total() != y.total())
        fail(ErrorKind::SumMismatch, "polygons must share their endpoint");
    const auto a = x.prefix_sums(), b = y.prefix_sums();
    Rational gap(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Rational d = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
        gap = std::max(gap, d);
    }
    return gap;
}

/// Every valid GL_n Newton point (integral polygon vertices) with slopes in [lo, hi];
/// when `total` is given only those with that slope sum.
inline std::vector<Cocharacter> enumerate_newton_points(int n, const Rational &lo, const Rational &hi,
                                                        const Rational *total = nullptr)
{
    std::vector<Cocharacter> out;
    std::vector<Rational> slopes;
    // Each maximal segment has integral length and rise; segments strictly decrease in slope.
    std::function<void(int, std::int64_t, const Rational *)> walk = [&](int x, std::int64_t y,
                                                                       const Rational *prev) {
        if (x == n) {
            if (!total || Rational(y) == *total)
                out.emplace_back(slopes);
            return;
        }
        for (int len = 1; len <= n - x; ++len) {
            const Rational lo_rise = lo * len, hi_rise = hi * len;
            std::int64_t r_min = floor_rational(lo_rise).numerator();
            if (Rational(r_min) < lo_rise)
                ++r_min;
            const std::int64_t r_max = floor_rational(hi_rise).numerator();
            for (std::int64_t rise = r_min; rise <= r_max; ++rise) {
                const Rational s(rise, len);
                if (prev && !(s < *prev))
                    continue;
                for (int k = 0; k < len; ++k)
                    slopes.push_back(s);
                walk(x + len, y + rise, &s);
                slopes.resize(slopes.size() - len);
            }
        }
    };
    walk(0, 0, nullptr);
    return out;
}

} // namespace isolab

#endif // ISOLAB_COCHAR_HPP
