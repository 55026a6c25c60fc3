#ifndef ISOLAB_INVARIANTS_HPP
#define ISOLAB_INVARIANTS_HPP

// Hodge and Newton points of isocrystals b*sigma, refined Hodge signatures, minimal
// elements, and the experiments built on them.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cochar.hpp"
#include "coeffs.hpp"
#include "errors.hpp"
#include "laurent.hpp"
#include "matl.hpp"
#include "sampling.hpp"

namespace isolab {

inline Cocharacter hodge_point(const MatL &b) { return smith_slopes(b); }

namespace detail {

inline int retry_precision(const MatL &b)
{
    const int p = b.precision();
    return 2 * std::max(p == LaurentSeries::kInfinitePrec ? 0 : p, kDefaultPrecision);
}

} // namespace detail

/// Valuations of the roots of a monic polynomial, read off its Newton polygon,
/// largest first.
inline std::vector<Rational> root_valuations(const LPoly &f, int retry_prec = 2 * kDefaultPrecision)
{
    const auto &c = f.coeffs;
    const int n = static_cast<int>(c.size()) - 1;
    if (n <= 0)
        return {};
    if (c[0].is_exact_zero())
        fail(ErrorKind::NotInvertible, "zero is a root");
    std::vector<std::pair<int, int>> pts; // certified points (i, val c_i)
    std::vector<std::pair<int, int>> floors; // (i, prec) for coefficients zero to precision
    for (int i = 0; i <= n; ++i) {
        if (c[i].is_certified_nonzero())
            pts.emplace_back(i, c[i].stored_val());
        else if (c[i].is_zero_to_prec())
            floors.emplace_back(i, c[i].prec());
    }
    if (pts.empty() || pts.front().first != 0)
        throw PrecisionError("constant term of the characteristic polynomial is not certified", retry_prec);
    if (pts.back().first != n)
        throw PrecisionError("leading coefficient of the characteristic polynomial is not certified", retry_prec);

    // Lower convex hull.
    std::vector<std::pair<int, int>> hull;
    for (const auto &pt : pts) {
        while (hull.size() >= 2) {
            const auto &a = hull[hull.size() - 2];
            const auto &b = hull.back();
            // Drop b if it lies on or above the segment a -> pt.
            const std::int64_t lhs = static_cast<std::int64_t>(b.second - a.second) * (pt.first - a.first);
            const std::int64_t rhs = static_cast<std::int64_t>(pt.second - a.second) * (b.first - a.first);
            if (lhs >= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    const auto hull_at = [&](int x) {
        for (std::size_t s = 0; s + 1 < hull.size(); ++s)
            if (hull[s].first <= x && x <= hull[s + 1].first)
                return Rational(hull[s].second) +
                       Rational(hull[s + 1].second - hull[s].second, hull[s + 1].first - hull[s].first) *
                           (x - hull[s].first);
        return Rational(hull.back().second);
    };
    for (const auto &[i, prec] : floors)
        if (Rational(prec) < hull_at(i))
            throw PrecisionError("a coefficient vanishing to precision " + std::to_string(prec) +
                                     " could lie below the Newton polygon",
                                 retry_prec);

    std::vector<Rational> roots;
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        const int len = hull[s + 1].first - hull[s].first;
        const Rational slope(hull[s + 1].second - hull[s].second, len);
        for (int k = 0; k < len; ++k)
            roots.push_back(-slope);
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return roots;
}

/// Newton point of b * sigma^f (f = 1 gives the Newton point of b).
inline Cocharacter newton_point(const MatL &b, int f = 1)
{
    const int m = b.ctx().m();
    const int fm = ((f % m) + m) % m;
    const int M = fm == 0 ? 1 : m / std::gcd(m, fm);
    const MatL N = twisted_power(b, M, f);
    auto roots = root_valuations(char_poly(N), detail::retry_precision(b));
    for (auto &r : roots)
        r /= M;
    return Cocharacter(std::move(roots));
}

struct StrataSignature {
    std::vector<Cocharacter> mus;

    std::size_t depth() const noexcept { return mus.size(); }
    friend bool operator==(const StrataSignature &, const StrataSignature &) = default;
    friend bool operator<(const StrataSignature &a, const StrataSignature &b) { return a.mus < b.mus; }

    std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < mus.size(); ++i)
            s += (i ? "," : "") + mus[i].to_string();
        return s + ")";
    }
};

/// (mu(b sigma), mu((b sigma)^2), ..., mu((b sigma)^N)).
inline StrataSignature hodge_sequence(const MatL &b, int depth)
{
    if (depth < 1)
        fail(ErrorKind::InvalidParams, "signature depth must be >= 1");
    StrataSignature sig;
    MatL power = b;
    MatL factor = b;
    for (int k = 1; k <= depth; ++k) {
        sig.mus.push_back(hodge_point(power));
        if (k < depth) {
            factor = factor.sigma();
            power = power * factor;
        }
    }
    return sig;
}

/// Prefix of the signature of b, stopping at the first index where it differs from `target`.
/// Returns true iff the whole target matches.
inline bool matches_signature(const MatL &b, const StrataSignature &target)
{
    MatL power = b;
    MatL factor = b;
    for (std::size_t k = 0; k < target.depth(); ++k) {
        if (hodge_point(power) != target.mus[k])
            return false;
        if (k + 1 < target.depth()) {
            factor = factor.sigma();
            power = power * factor;
        }
    }
    return true;
}

/// Block-diagonal minimal element: each superbasic block of slope h/m sends e_k to e_{k+h},
/// with e_{k+m} = pi * e_k.
inline MatL minimal_element(const FieldCtx &F, const Cocharacter &nu)
{
    const auto blocks = superbasic_parts(nu);
    MatL b(F, nu.size());
    std::size_t offset = 0;
    for (const auto &blk : blocks) {
        const std::int64_t h = blk.slope.numerator();
        const int m = blk.size;
        for (int k = 0; k < m; ++k) {
            const std::int64_t t = k + h;
            std::int64_t q = t / m, r = t % m;
            if (r < 0) {
                r += m;
                --q;
            }
            b(offset + static_cast<std::size_t>(r), offset + static_cast<std::size_t>(k)) =
                LaurentSeries::pi_power(F, static_cast<int>(q));
        }
        offset += static_cast<std::size_t>(m);
    }
    return b;
}

/// (b sigma)^s == diag(pi^{s nu_1}, ..., pi^{s nu_n}) up to ordering of the diagonal.
inline bool decency_check(const MatL &b, int s)
{
    if (s < 1)
        fail(ErrorKind::InvalidParams, "decency exponent must be >= 1");
    const MatL t = twisted_power(b, s);
    if (!t.is_diagonal())
        return false;
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < t.n(); ++i) {
        const auto &e = t(i, i);
        if (!e.is_monomial() || e.leading_coeff() != e.ctx().one())
            return false;
        vals.emplace_back(e.stored_val());
    }
    return Cocharacter(std::move(vals)) == newton_point(b).scaled(Rational(s));
}

/// Newton point of any GL_2 element with Hodge points mu1 = mu(b), mu2 = mu((b sigma)^2).
inline Cocharacter gl2_recover(const Cocharacter &mu1, const Cocharacter &mu2)
{
    if (mu1.size() != 2 || mu2.size() != 2)
        fail(ErrorKind::LengthMismatch, "gl2_recover needs length-2 cocharacters");
    if (mu2.total() != 2 * mu1.total())
        fail(ErrorKind::SumMismatch, "total(mu2) must be twice total(mu1)");
    if (!dominates(oplus_w0(mu1, mu1), mu2) || !dominates(mu2, oplus(mu1, mu1)))
        fail(ErrorKind::Unrealizable,
             "signature " + mu1.to_string() + "," + mu2.to_string() + " violates the Hodge sandwich");
    const Rational a = mu2[0] - mu1[0], b = mu2[1] - mu1[1];
    Cocharacter nu = a >= b ? Cocharacter({a, b})
                            : Cocharacter({mu1.total() / 2, mu1.total() / 2});
    if (!dominates(nu, mu1) || !dominates(nu.scaled(2), mu2))
        fail(ErrorKind::Unrealizable, "no Newton point is compatible with " + mu1.to_string() + "," +
                                          mu2.to_string());
    return nu;
}

struct SlnPair {
    MatL b1;
    MatL b2;
};

inline SlnPair sln_counterexample(const FieldCtx &F, int n)
{
    if (n < 2)
        fail(ErrorKind::InvalidParams, "counterexample needs n >= 2");
    const auto N = static_cast<std::size_t>(n);
    const auto sign = [&](int e) { return LaurentSeries::integer(F, e % 2 == 0 ? 1 : -1); };
    MatL b1(F, N), b2(F, N);
    b1(0, N - 1) = sign(n - 1) * LaurentSeries::pi_power(F, n - 1);
    for (std::size_t i = 0; i + 1 < N; ++i)
        b1(i + 1, i) = LaurentSeries::pi_power(F, -1);
    b2(0, N - 2) = sign(n) * LaurentSeries::pi_power(F, n - 1);
    for (std::size_t i = 0; i + 2 < N; ++i)
        b2(i + 1, i) = LaurentSeries::pi_power(F, -1);
    b2(N - 1, N - 1) = LaurentSeries::pi_power(F, -1);
    return {b1, b2};
}

/// Largest slope minus smallest slope over all entries of a signature.
inline Rational slope_spread(const StrataSignature &sig)
{
    Rational hi(0), lo(0);
    bool first = true;
    for (const auto &mu : sig.mus) {
        if (mu.size() == 0)
            continue;
        hi = first ? mu.largest() : std::max(hi, mu.largest());
        lo = first ? mu.smallest() : std::min(lo, mu.smallest());
        first = false;
    }
    return hi - lo;
}

/// Smallest congruence level guaranteed to preserve the signature to the given depth.
inline int congruence_level(const StrataSignature &sig)
{
    const Rational s = slope_spread(sig);
    return static_cast<int>(floor_rational(s).numerator()) + 1;
}

struct CongruenceReport {
    int level = 0;
    int depth = 0;
    int trials = 0;
    int violations = 0;
    StrataSignature baseline;
    std::optional<int> first_violation; ///< trial index
};

/// Multiplies b on the right by random g = 1 mod pi^level and counts signature changes.
inline CongruenceReport congruence_stability(const MatL &b, int level, int depth, int trials, std::uint64_t seed)
{
    if (level < 0 || trials < 0)
        fail(ErrorKind::InvalidParams, "level and trials must be nonnegative");
    CongruenceReport rep;
    rep.level = level;
    rep.depth = depth;
    rep.trials = trials;
    rep.baseline = hodge_sequence(b, depth);
    for (int t = 0; t < trials; ++t) {
        Rng rng(seed, static_cast<std::uint64_t>(t), "congruence");
        const MatL g = random_congruent(b.ctx(), b.n(), level, rng);
        if (!matches_signature(b * g, rep.baseline)) {
            ++rep.violations;
            if (!rep.first_violation)
                rep.first_violation = t;
        }
    }
    return rep;
}

struct TraceRow {
    int k = 0;
    Cocharacter normalized_hodge; ///< mu((b sigma)^k) / k
    Rational distance;            ///< |nu(b), mu((b sigma)^k)/k|
    Rational raw_distance;        ///< |k nu(b), mu((b sigma)^k)| = k * distance
    bool mazur = false;           ///< nu(b) below mu((b sigma)^k)/k
};

struct ConvergenceTrace {
    Cocharacter newton;
    std::vector<TraceRow> rows;
    Rational fitted_c; ///< max_k k * distance_k, so distance_k <= fitted_c / k for every row

    /// First k with distance below the threshold from then on.
    std::optional<int> settles_below(const Rational &threshold) const
    {
        std::optional<int> k;
        for (const auto &r : rows) {
            if (r.distance < threshold) {
                if (!k)
                    k = r.k;
            } else {
                k.reset();
            }
        }
        return k;
    }
};

inline ConvergenceTrace convergence_trace(const MatL &b, int kmax)
{
    if (kmax < 1)
        fail(ErrorKind::InvalidParams, "kmax must be >= 1");
    ConvergenceTrace tr;
    tr.newton = newton_point(b);
    tr.fitted_c = Rational(0);
    MatL power = b;
    MatL factor = b;
    for (int k = 1; k <= kmax; ++k) {
        TraceRow row;
        row.k = k;
        row.normalized_hodge = hodge_point(power).scaled(Rational(1, k));
        row.distance = metric(tr.newton, row.normalized_hodge);
        row.raw_distance = row.distance * k;
        row.mazur = dominates(tr.newton, row.normalized_hodge);
        tr.fitted_c = std::max(tr.fitted_c, row.raw_distance);
        tr.rows.push_back(std::move(row));
        if (k < kmax) {
            factor = factor.sigma();
            power = power * factor;
        }
    }
    return tr;
}

struct ScanTally {
    Cocharacter newton;
    int count = 0;
    int first_trial = 0;
    MatL witness;
};

struct ScanReport {
    StrataSignature target;
    int accepted = 0;
    int attempts = 0;
    std::vector<ScanTally> tallies; ///< sorted by Newton point
};

/// One Cartan-form sample k1 * diag(pi^mu) * k2 for attempt `index`.
inline MatL cartan_sample(const FieldCtx &F, const Cocharacter &mu, std::uint64_t seed, std::uint64_t index)
{
    const std::size_t n = mu.size();
    std::vector<int> exps(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (mu[i].denominator() != 1)
            fail(ErrorKind::InvalidParams, "Hodge point must be integral: " + mu.to_string());
        exps[i] = static_cast<int>(mu[i].numerator());
    }
    Rng rng(seed, index, "cartan");
    const int steps1 = static_cast<int>(rng.uniform(0, static_cast<std::int64_t>(n * n)));
    const int steps2 = static_cast<int>(rng.uniform(0, static_cast<std::int64_t>(n * n)));
    const MatL k1 = random_unimodular(F, n, rng, 2, 1, steps1).k;
    const MatL k2 = random_unimodular(F, n, rng, 2, 1, steps2).k;
    return k1 * MatL::diag_pi(F, exps) * k2;
}

/// Rejection-samples the stratum of `target` and tallies the Newton points found.
inline ScanReport stratum_scan(const FieldCtx &F, const StrataSignature &target, int trials, std::uint64_t seed,
                               int budget = -1)
{
    if (target.depth() == 0)
        fail(ErrorKind::InvalidParams, "empty signature");
    if (trials < 1)
        fail(ErrorKind::InvalidParams, "trials must be >= 1");
    const int max_attempts = budget > 0 ? budget : 500 * trials;
    ScanReport rep;
    rep.target = target;
    std::map<Cocharacter, ScanTally> tally;
    for (int t = 0; t < max_attempts && rep.accepted < trials; ++t) {
        ++rep.attempts;
        const MatL b = cartan_sample(F, target.mus.front(), seed, static_cast<std::uint64_t>(t));
        if (!matches_signature(b, target))
            continue;
        ++rep.accepted;
        const Cocharacter nu = newton_point(b);
        auto [it, fresh] = tally.try_emplace(nu);
        if (fresh) {
            it->second.newton = nu;
            it->second.first_trial = t;
            it->second.witness = b;
        }
        ++it->second.count;
    }
    if (rep.accepted == 0)
        fail(ErrorKind::SamplingExhausted,
             "no sample with signature " + target.to_string() + " in " + std::to_string(rep.attempts) + " attempts");
    for (auto &[nu, t] : tally)
        rep.tallies.push_back(std::move(t));
    return rep;
}

} // namespace isolab

#endif // ISOLAB_INVARIANTS_HPP
