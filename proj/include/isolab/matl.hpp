#ifndef ISOLAB_MATL_HPP
#define ISOLAB_MATL_HPP

// Square matrices over L and the operations that feed Hodge and Newton points:
// sigma-twisted powers, elementary divisors over O_L, characteristic polynomials.

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cochar.hpp"
#include "coeffs.hpp"
#include "errors.hpp"
#include "laurent.hpp"

namespace isolab {

class MatL {
public:
    MatL() = default;

    MatL(const FieldCtx &ctx, std::size_t n) : ctx_(&ctx), n_(n), entries_(n * n, LaurentSeries::zero(ctx)) {}

    static MatL identity(const FieldCtx &ctx, std::size_t n)
    {
        MatL m(ctx, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = LaurentSeries::integer(ctx, 1);
        return m;
    }

    /// diag(pi^e_1, ..., pi^e_n).
    static MatL diag_pi(const FieldCtx &ctx, const std::vector<int> &exponents)
    {
        MatL m(ctx, exponents.size());
        for (std::size_t i = 0; i < exponents.size(); ++i)
            m(i, i) = LaurentSeries::pi_power(ctx, exponents[i]);
        return m;
    }

    static MatL from_rows(const FieldCtx &ctx, const std::vector<std::vector<LaurentSeries>> &rows)
    {
        MatL m(ctx, rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size())
                fail(ErrorKind::InvalidParams, "matrix must be square");
            for (std::size_t j = 0; j < rows.size(); ++j) {
                if (rows[i][j].ctx_ptr() != &ctx)
                    fail(ErrorKind::ContextMismatch, "matrix entry over a different field");
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }

    std::size_t n() const noexcept { return n_; }
    const FieldCtx &ctx() const { return *ctx_; }
    const FieldCtx *ctx_ptr() const noexcept { return ctx_; }

    LaurentSeries &operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const LaurentSeries &operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    bool is_exact() const
    {
        return std::all_of(entries_.begin(), entries_.end(), [](const auto &e) { return e.exact(); });
    }

    /// Minimal valuation over the certified-nonzero entries.
    int min_val() const
    {
        int v = LaurentSeries::kInfinitePrec;
        for (const auto &e : entries_)
            if (e.is_certified_nonzero())
                v = std::min(v, e.stored_val());
        return v;
    }

    /// Lowest absolute precision among the non-exact entries.
    int precision() const
    {
        int p = LaurentSeries::kInfinitePrec;
        for (const auto &e : entries_)
            p = std::min(p, e.effective_prec());
        return p;
    }

    MatL sigma(int k = 1) const { return map([k](const LaurentSeries &e) { return e.sigma(k); }); }
    MatL rebased(int e) const { return map([e](const LaurentSeries &x) { return x.rebased(e); }); }
    MatL shifted(int k) const { return map([k](const LaurentSeries &x) { return x.shifted(k); }); }

    friend MatL operator*(const MatL &a, const MatL &b)
    {
        if (a.ctx_ != b.ctx_)
            fail(ErrorKind::ContextMismatch, "matrices over different fields");
        if (a.n_ != b.n_)
            fail(ErrorKind::LengthMismatch, "matrix sizes differ");
        MatL c(*a.ctx_, a.n_);
        for (std::size_t i = 0; i < a.n_; ++i)
            for (std::size_t j = 0; j < a.n_; ++j) {
                LaurentSeries acc = LaurentSeries::zero(*a.ctx_);
                for (std::size_t k = 0; k < a.n_; ++k) {
                    const auto &x = a(i, k);
                    const auto &y = b(k, j);
                    if (x.is_exact_zero() || y.is_exact_zero())
                        continue;
                    acc += x * y;
                }
                c(i, j) = std::move(acc);
            }
        return c;
    }

    friend MatL operator+(const MatL &a, const MatL &b) { return a.zip(b, false); }
    friend MatL operator-(const MatL &a, const MatL &b) { return a.zip(b, true); }

    /// Agreement up to the precision of both operands.
    bool agrees_with(const MatL &b) const
    {
        if (n_ != b.n_)
            return false;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (!entries_[i].agrees_with(b.entries_[i]))
                return false;
        return true;
    }

    bool is_diagonal() const
    {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (i != j && !(*this)(i, j).is_exact_zero())
                    return false;
        return true;
    }

    friend bool operator==(const MatL &, const MatL &) = default;

    std::string to_string() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < n_; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < n_; ++j)
                s += (j ? ", " : "") + (*this)(i, j).to_string();
            s += "]";
        }
        return s + "]";
    }

private:
    template <class F>
    MatL map(F f) const
    {
        MatL out = *this;
        for (auto &e : out.entries_)
            e = f(e);
        return out;
    }

    MatL zip(const MatL &b, bool subtract) const
    {
        if (ctx_ != b.ctx_ || n_ != b.n_)
            fail(ErrorKind::LengthMismatch, "incompatible matrices");
        MatL out = *this;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            out.entries_[i] = subtract ? entries_[i] - b.entries_[i] : entries_[i] + b.entries_[i];
        return out;
    }

    const FieldCtx *ctx_ = nullptr;
    std::size_t n_ = 0;
    std::vector<LaurentSeries> entries_;
};

/// Polynomial in X with coefficients in L, lowest degree first.
struct LPoly {
    std::vector<LaurentSeries> coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    friend bool operator==(const LPoly &, const LPoly &) = default;
};

/// b * sigma^f(b) * sigma^{2f}(b) * ... (k factors). With f = 1 this is (b sigma)^k.
inline MatL twisted_power(const MatL &b, int k, int f = 1)
{
    if (k < 0)
        fail(ErrorKind::InvalidParams, "twisted power needs k >= 0");
    if (k == 0)
        return MatL::identity(b.ctx(), b.n());
    MatL result = b;
    MatL factor = b;
    for (int j = 1; j < k; ++j) {
        factor = factor.sigma(f);
        result = result * factor;
    }
    return result;
}

/// N_m(b) = (b sigma)^m, where m is the degree of the coefficient field; sigma^m fixes L.
inline MatL norm_map(const MatL &b) { return twisted_power(b, b.ctx().m()); }

/// Characteristic polynomial det(X*I - b) by Berkowitz's division-free recursion.
inline LPoly char_poly(const MatL &b)
{
    const FieldCtx &F = b.ctx();
    const std::size_t n = b.n();
    // Coefficient vector, highest degree first, of the leading r x r principal minor.
    std::vector<LaurentSeries> poly{LaurentSeries::integer(F, 1)};
    for (std::size_t r = 1; r <= n; ++r) {
        const std::size_t k = r - 1; // size of the previous block
        // Toeplitz column: 1, -a_rr, -R S, -R A S, ..., -R A^{k-1} S.
        std::vector<LaurentSeries> col;
        col.reserve(r + 1);
        col.push_back(LaurentSeries::integer(F, 1));
        col.push_back(-b(k, k));
        std::vector<LaurentSeries> v(k); // A^j S
        for (std::size_t i = 0; i < k; ++i)
            v[i] = b(i, k);
        for (std::size_t j = 0; j + 1 < r; ++j) {
            LaurentSeries dot = LaurentSeries::zero(F);
            for (std::size_t i = 0; i < k; ++i)
                if (!b(k, i).is_exact_zero() && !v[i].is_exact_zero())
                    dot += b(k, i) * v[i];
            col.push_back(-dot);
            if (j + 2 < r) {
                std::vector<LaurentSeries> next(k, LaurentSeries::zero(F));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t l = 0; l < k; ++l)
                        if (!b(i, l).is_exact_zero() && !v[l].is_exact_zero())
                            next[i] += b(i, l) * v[l];
                v = std::move(next);
            }
        }
        std::vector<LaurentSeries> next(r + 1, LaurentSeries::zero(F));
        for (std::size_t i = 0; i <= r; ++i)
            for (std::size_t j = 0; j < poly.size() && j <= i; ++j)
                if (i - j < col.size() && !col[i - j].is_exact_zero() && !poly[j].is_exact_zero())
                    next[i] += col[i - j] * poly[j];
        poly = std::move(next);
    }
    std::reverse(poly.begin(), poly.end());
    return LPoly{std::move(poly)};
}

inline LaurentSeries determinant(const MatL &b)
{
    const LPoly cp = char_poly(b);
    return b.n() % 2 == 0 ? cp.coeffs.front() : -cp.coeffs.front();
}

/// Elementary-divisor valuations of an invertible matrix (its Hodge slopes).
///
/// Pivots on an entry of least valuation (ties broken by (row, column) order),
/// clears the pivot column with the unimodular row operation
/// row_i <- w * row_i - (a_i / pi^v) * row_p, where pivot = pi^v * w, then drops the
/// pivot row and column. No entry is ever divided by a non-unit. Exact input is first
/// reduced modulo pi^B with B above the largest possible slope, which bounds growth and
/// leaves the elementary divisors unchanged.
inline Cocharacter smith_slopes(const MatL &b)
{
    const std::size_t n = b.n();
    if (n == 0)
        return Cocharacter{};
    const LaurentSeries det = determinant(b);
    if (det.is_exact_zero())
        fail(ErrorKind::NotInvertible, "determinant is zero");
    const int det_val = det.val();

    std::vector<std::vector<LaurentSeries>> work(n, std::vector<LaurentSeries>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            work[i][j] = b(i, j);
    if (b.is_exact()) {
        const int bound = det_val - static_cast<int>(n - 1) * b.min_val() + 1;
        for (auto &row : work)
            for (auto &e : row)
                if (!e.is_exact_zero())
                    e = e.truncated(bound);
    }

    std::vector<Rational> slopes;
    slopes.reserve(n);
    while (!work.empty()) {
        std::size_t pr = 0, pc = 0;
        int best = LaurentSeries::kInfinitePrec;
        int weakest = LaurentSeries::kInfinitePrec;
        for (std::size_t i = 0; i < work.size(); ++i)
            for (std::size_t j = 0; j < work.size(); ++j) {
                const auto &e = work[i][j];
                if (e.is_certified_nonzero()) {
                    if (e.stored_val() < best) {
                        best = e.stored_val();
                        pr = i;
                        pc = j;
                    }
                } else if (e.is_zero_to_prec()) {
                    weakest = std::min(weakest, e.prec());
                }
            }
        if (best == LaurentSeries::kInfinitePrec || weakest < best)
            throw PrecisionError("cannot certify a pivot valuation in Smith reduction",
                                 2 * std::max(b.precision() == LaurentSeries::kInfinitePrec ? 0 : b.precision(),
                                              kDefaultPrecision));
        const LaurentSeries w = work[pr][pc].unit_part();
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (i == pr || work[i][pc].is_exact_zero())
                continue;
            const LaurentSeries s = work[i][pc].shifted(-best);
            for (std::size_t j = 0; j < work.size(); ++j) {
                if (j == pc)
                    continue;
                LaurentSeries lhs = work[i][j].is_exact_zero() ? work[i][j] : w * work[i][j];
                if (!work[pr][j].is_exact_zero())
                    lhs -= s * work[pr][j];
                work[i][j] = std::move(lhs);
            }
        }
        slopes.emplace_back(best);
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(pr));
        for (auto &row : work)
            row.erase(row.begin() + static_cast<std::ptrdiff_t>(pc));
    }
    Cocharacter result(std::move(slopes));
    if (result.total() != Rational(det_val))
        throw PrecisionError("Smith slopes do not add up to val(det); precision too low",
                             2 * std::max(b.precision() == LaurentSeries::kInfinitePrec ? 0 : b.precision(),
                                          kDefaultPrecision));
    return result;
}

/// Inverse by Gauss-Jordan elimination with least-valuation pivots.
inline MatL mat_inv(const MatL &b, int relprec = kDefaultPrecision)
{
    const std::size_t n = b.n();
    const FieldCtx &F = b.ctx();
    MatL a = b;
    MatL inv = MatL::identity(F, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pr = n;
        int best = LaurentSeries::kInfinitePrec;
        bool uncertain = false;
        for (std::size_t r = c; r < n; ++r) {
            const auto &e = a(r, c);
            if (e.is_certified_nonzero() && e.stored_val() < best) {
                best = e.stored_val();
                pr = r;
            } else if (e.is_zero_to_prec()) {
                uncertain = true;
            }
        }
        if (pr == n) {
            if (uncertain)
                throw PrecisionError("pivot column vanishes to working precision", 2 * relprec);
            fail(ErrorKind::NotInvertible, "matrix is singular");
        }
        if (pr != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pr, j), a(c, j));
                std::swap(inv(pr, j), inv(c, j));
            }
        const LaurentSeries pinv = a(c, c).inverse(relprec);
        for (std::size_t j = 0; j < n; ++j) {
            if (!a(c, j).is_exact_zero())
                a(c, j) = a(c, j) * pinv;
            if (!inv(c, j).is_exact_zero())
                inv(c, j) = inv(c, j) * pinv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c).is_exact_zero())
                continue;
            const LaurentSeries f = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                if (!a(c, j).is_exact_zero())
                    a(r, j) -= f * a(c, j);
                if (!inv(c, j).is_exact_zero())
                    inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

inline std::ostream &operator<<(std::ostream &os, const MatL &b) { return os << b.to_string(); }

} // namespace isolab

#endif // ISOLAB_MATL_HPP
