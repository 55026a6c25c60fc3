#ifndef ISOLAB_LAURENT_HPP
#define ISOLAB_LAURENT_HPP

// Truncated Laurent series over F_{p^m}: elements of L = F_{p^m}((pi)).
//
// A series stores the coefficients of pi^val .. pi^(prec-1). Three states exist:
//   * exact       -- a Laurent polynomial; everything past the stored range is zero
//                    (prec is then the end of the stored range),
//   * certified   -- not exact, but with a nonzero leading coefficient below prec,
//   * zero up to prec -- not exact and no nonzero coefficient below prec (val == prec).
// The exact zero is the exact series with no coefficients.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "coeffs.hpp"
#include "errors.hpp"

namespace isolab {

/// Default relative precision (in pi-adic digits) for operations that truncate.
inline constexpr int kDefaultPrecision = 64;

class LaurentSeries {
public:
    /// Effective precision used for exact operands in precision arithmetic.
    static constexpr int kInfinitePrec = INT_MAX / 4;

    LaurentSeries() = default;

    static LaurentSeries zero(const FieldCtx &ctx) { return LaurentSeries(ctx, 0, 0, true, {}); }

    /// Non-exact zero, known modulo pi^prec.
    static LaurentSeries zero_to(const FieldCtx &ctx, int prec) { return LaurentSeries(ctx, prec, prec, false, {}); }

    static LaurentSeries monomial(const FieldCtx &ctx, FFElem c, int k)
    {
        if (c.code == 0)
            return zero(ctx);
        return LaurentSeries(ctx, k, k + 1, true, {c});
    }

    static LaurentSeries pi_power(const FieldCtx &ctx, int k) { return monomial(ctx, ctx.one(), k); }
    static LaurentSeries constant(const FieldCtx &ctx, FFElem c) { return monomial(ctx, c, 0); }
    static LaurentSeries integer(const FieldCtx &ctx, std::int64_t v) { return constant(ctx, ctx.from_int(v)); }

    /// Builds sum_i coeffs[i] pi^(val+i). For exact series prec is ignored; otherwise
    /// the coefficients are known modulo pi^prec (coefficients at or past prec are dropped).
    static LaurentSeries from_coeffs(const FieldCtx &ctx, int val, std::vector<FFElem> coeffs, bool exact,
                                     int prec = 0)
    {
        if (exact)
            prec = val + static_cast<int>(coeffs.size());
        else if (prec < val)
            return zero_to(ctx, prec);
        else if (static_cast<int>(coeffs.size()) > prec - val)
            coeffs.resize(prec - val);
        else
            coeffs.resize(prec - val, ctx.zero());
        LaurentSeries s(ctx, val, prec, exact, std::move(coeffs));
        s.normalize();
        return s;
    }

    const FieldCtx &ctx() const { return *ctx_; }
    const FieldCtx *ctx_ptr() const noexcept { return ctx_; }
    bool exact() const noexcept { return exact_; }
    /// Absolute precision: the series is known modulo pi^prec().
    int prec() const noexcept { return prec_; }
    int stored_val() const noexcept { return val_; }
    const std::vector<FFElem> &coeffs() const noexcept { return coeffs_; }
    int effective_prec() const noexcept { return exact_ ? kInfinitePrec : prec_; }

    bool is_exact_zero() const noexcept { return exact_ && coeffs_.empty(); }
    bool is_zero_to_prec() const noexcept { return !exact_ && coeffs_.empty(); }
    bool is_certified_nonzero() const noexcept { return !coeffs_.empty(); }
    bool is_monomial() const noexcept { return exact_ && coeffs_.size() == 1; }

    /// Index of the least nonzero coefficient.
    int val() const
    {
        if (is_exact_zero())
            fail(ErrorKind::ZeroValuation, "valuation of the exact zero");
        if (coeffs_.empty())
            throw PrecisionError("series vanishes modulo pi^" + std::to_string(prec_), 2 * std::max(prec_, 8));
        return val_;
    }

    /// Lower bound for the valuation that is always available (prec for zero-to-prec).
    int val_lower_bound() const noexcept { return is_exact_zero() ? kInfinitePrec : val_; }

    FFElem coeff(int i) const
    {
        if (i < val_ || i >= val_ + static_cast<int>(coeffs_.size())) {
            if (!exact_ && i >= prec_)
                throw PrecisionError("coefficient of pi^" + std::to_string(i) + " is beyond the precision");
            return {0};
        }
        return coeffs_[i - val_];
    }

    FFElem leading_coeff() const
    {
        if (coeffs_.empty())
            fail(ErrorKind::ZeroValuation, "leading coefficient of zero");
        return coeffs_.front();
    }

    LaurentSeries operator-() const
    {
        LaurentSeries r = *this;
        for (auto &c : r.coeffs_)
            c = ctx_->neg(c);
        return r;
    }

    friend LaurentSeries operator+(const LaurentSeries &x, const LaurentSeries &y) { return combine(x, y, false); }
    friend LaurentSeries operator-(const LaurentSeries &x, const LaurentSeries &y) { return combine(x, y, true); }

    friend LaurentSeries operator*(const LaurentSeries &x, const LaurentSeries &y)
    {
        check_same(x, y);
        if (x.is_exact_zero() || y.is_exact_zero())
            return zero(*x.ctx_);
        const FieldCtx &F = *x.ctx_;
        const int lo = x.val_ + y.val_;
        if (x.exact_ && y.exact_) {
            std::vector<FFElem> out(x.coeffs_.size() + y.coeffs_.size() - 1, F.zero());
            convolve(F, x.coeffs_, y.coeffs_, out);
            return from_coeffs(F, lo, std::move(out), true);
        }
        const long long px = x.exact_ ? LLONG_MAX : static_cast<long long>(x.prec_) + y.val_;
        const long long py = y.exact_ ? LLONG_MAX : static_cast<long long>(y.prec_) + x.val_;
        const int prec = static_cast<int>(std::min(px, py));
        if (prec <= lo)
            return zero_to(F, prec);
        std::vector<FFElem> out(prec - lo, F.zero());
        convolve(F, x.coeffs_, y.coeffs_, out);
        return from_coeffs(F, lo, std::move(out), false, prec);
    }

    LaurentSeries &operator+=(const LaurentSeries &y) { return *this = *this + y; }
    LaurentSeries &operator-=(const LaurentSeries &y) { return *this = *this - y; }
    LaurentSeries &operator*=(const LaurentSeries &y) { return *this = *this * y; }

    /// Multiplication by pi^k; exact and lossless.
    LaurentSeries shifted(int k) const
    {
        if (is_exact_zero())
            return *this;
        LaurentSeries r = *this;
        r.val_ += k;
        r.prec_ += k;
        return r;
    }

    /// x * pi^(-val(x)); a unit of O_L.
    LaurentSeries unit_part() const { return shifted(-val()); }

    /// Forgets everything at or beyond pi^n. Never exact unless nothing was dropped
    /// and the series already was.
    LaurentSeries truncated(int n) const
    {
        if (is_exact_zero())
            return zero_to(*ctx_, n);
        const int new_prec = exact_ ? n : std::min(prec_, n);
        if (new_prec <= val_)
            return zero_to(*ctx_, new_prec);
        std::vector<FFElem> out(coeffs_.begin(),
                                coeffs_.begin() + std::min<std::size_t>(coeffs_.size(), new_prec - val_));
        return from_coeffs(*ctx_, val_, std::move(out), false, new_prec);
    }

    /// Multiplicative inverse. Monomials invert exactly; everything else is known to
    /// `relprec` digits past the leading term (or to the input's own relative precision).
    LaurentSeries inverse(int relprec = kDefaultPrecision) const
    {
        if (is_exact_zero())
            fail(ErrorKind::DivideByZero, "inverse of the exact zero");
        const int v = val();
        const FieldCtx &F = *ctx_;
        if (is_monomial())
            return monomial(F, F.inv(coeffs_.front()), -v);
        const int rel = exact_ ? relprec : prec_ - v;
        std::vector<FFElem> out(rel, F.zero());
        const FFElem u0inv = F.inv(coeffs_.front());
        out[0] = u0inv;
        for (int k = 1; k < rel; ++k) {
            FFElem acc = F.zero();
            const int top = std::min<int>(k, static_cast<int>(coeffs_.size()) - 1);
            for (int i = 1; i <= top; ++i)
                acc = F.add(acc, F.mul(coeffs_[i], out[k - i]));
            out[k] = F.neg(F.mul(u0inv, acc));
        }
        return from_coeffs(F, -v, std::move(out), false, -v + rel);
    }

    /// Coefficientwise Frobenius applied k times (pi is fixed).
    LaurentSeries sigma(int k = 1) const
    {
        LaurentSeries r = *this;
        for (auto &c : r.coeffs_)
            c = ctx_->frobenius_pow(c, k);
        return r;
    }

    /// Substitution pi -> varpi^e into the totally ramified extension of degree e.
    LaurentSeries rebased(int e) const
    {
        if (e < 1)
            fail(ErrorKind::InvalidParams, "ramification index must be >= 1");
        if (is_exact_zero() || e == 1)
            return *this;
        LaurentSeries r;
        r.ctx_ = ctx_;
        r.exact_ = exact_;
        r.val_ = val_ * e;
        r.prec_ = prec_ * e;
        if (!coeffs_.empty()) {
            const std::size_t len = exact_ ? (coeffs_.size() - 1) * e + 1 : static_cast<std::size_t>(r.prec_ - r.val_);
            r.coeffs_.assign(len, ctx_->zero());
            for (std::size_t i = 0; i < coeffs_.size(); ++i)
                r.coeffs_[i * e] = coeffs_[i];
        }
        return r;
    }

    /// True when the two series agree modulo the smaller of their precisions.
    bool agrees_with(const LaurentSeries &y) const
    {
        check_same(*this, y);
        const LaurentSeries d = *this - y;
        return d.coeffs_.empty();
    }

    friend bool operator==(const LaurentSeries &x, const LaurentSeries &y)
    {
        return x.ctx_ == y.ctx_ && x.exact_ == y.exact_ && x.val_ == y.val_ && (x.exact_ || x.prec_ == y.prec_) &&
               x.coeffs_ == y.coeffs_;
    }

    std::string to_string() const
    {
        if (is_exact_zero())
            return "0";
        std::string s;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].code == 0)
                continue;
            if (!s.empty())
                s += " + ";
            const int k = val_ + static_cast<int>(i);
            std::string c = coeffs_[i].code == 1 ? "" : "[" + std::to_string(coeffs_[i].code) + "]";
            if (k == 0)
                s += c.empty() ? "1" : c;
            else
                s += c + "pi^" + std::to_string(k);
        }
        if (!exact_)
            s += (s.empty() ? "" : " + ") + std::string("O(pi^") + std::to_string(prec_) + ")";
        return s;
    }

private:
    LaurentSeries(const FieldCtx &ctx, int val, int prec, bool exact, std::vector<FFElem> coeffs)
        : ctx_(&ctx), val_(val), prec_(prec), exact_(exact), coeffs_(std::move(coeffs))
    {
    }

    static void check_same(const LaurentSeries &x, const LaurentSeries &y)
    {
        if (x.ctx_ != y.ctx_)
            fail(ErrorKind::ContextMismatch, "series over different coefficient fields");
    }

    // out[k] += sum_{i+j=k} a[i] b[j], for k < out.size().
    static void convolve(const FieldCtx &F, const std::vector<FFElem> &a, const std::vector<FFElem> &b,
                         std::vector<FFElem> &out)
    {
        const std::size_t n = out.size();
        for (std::size_t i = 0; i < a.size() && i < n; ++i) {
            if (a[i].code == 0)
                continue;
            const std::size_t lim = std::min(b.size(), n - i);
            for (std::size_t j = 0; j < lim; ++j) {
                if (b[j].code == 0)
                    continue;
                out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
            }
        }
    }

    static LaurentSeries combine(const LaurentSeries &x, const LaurentSeries &y, bool subtract)
    {
        check_same(x, y);
        const FieldCtx &F = *x.ctx_;
        if (y.is_exact_zero())
            return x;
        if (x.is_exact_zero())
            return subtract ? -y : y;
        const bool exact = x.exact_ && y.exact_;
        const int prec = std::min(x.effective_prec(), y.effective_prec());
        const int lo = std::min(x.val_, y.val_);
        const int hi = exact ? std::max(x.val_ + static_cast<int>(x.coeffs_.size()),
                                        y.val_ + static_cast<int>(y.coeffs_.size()))
                             : prec;
        if (hi <= lo)
            return zero_to(F, prec);
        std::vector<FFElem> out(hi - lo, F.zero());
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
            const int k = x.val_ + static_cast<int>(i) - lo;
            if (k < hi - lo)
                out[k] = x.coeffs_[i];
        }
        for (std::size_t i = 0; i < y.coeffs_.size(); ++i) {
            const int k = y.val_ + static_cast<int>(i) - lo;
            if (k < hi - lo)
                out[k] = subtract ? F.sub(out[k], y.coeffs_[i]) : F.add(out[k], y.coeffs_[i]);
        }
        return from_coeffs(F, lo, std::move(out), exact, prec);
    }

    void normalize()
    {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead].code == 0)
            ++lead;
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            if (exact_) {
                val_ = 0;
                prec_ = 0;
            } else {
                val_ = prec_;
            }
            return;
        }
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
            val_ += static_cast<int>(lead);
        }
        if (exact_) {
            while (coeffs_.back().code == 0)
                coeffs_.pop_back();
            prec_ = val_ + static_cast<int>(coeffs_.size());
        }
    }

    const FieldCtx *ctx_ = nullptr;
    int val_ = 0;
    int prec_ = 0;
    bool exact_ = true;
    std::vector<FFElem> coeffs_;
};

inline std::ostream &operator<<(std::ostream &os, const LaurentSeries &x) { return os << x.to_string(); }

} // namespace isolab

#endif // ISOLAB_LAURENT_HPP
