#ifndef ISOLAB_COEFFS_HPP
#define ISOLAB_COEFFS_HPP

// Arithmetic in F_{p^m} together with the absolute Frobenius x -> x^p.
//
// Elements are encoded as integers: the power-basis coordinates c_0..c_{m-1}
// become the base-p digits of the code, least significant first. Multiplication
// runs through discrete log/antilog tables built once per field.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace isolab {

struct FFElem {
    std::uint32_t code = 0;

    friend bool operator==(FFElem, FFElem) = default;
    friend auto operator<=>(FFElem, FFElem) = default;
};

namespace detail {

inline bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// Dense polynomials over F_p, coefficients low degree first.
using PolyP = std::vector<int>;

inline void trim(PolyP &f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

inline int inverse_mod(int a, int p)
{
    int r = 1, base = a % p, e = p - 2;
    while (e > 0) {
        if (e & 1)
            r = static_cast<int>(static_cast<std::int64_t>(r) * base % p);
        base = static_cast<int>(static_cast<std::int64_t>(base) * base % p);
        e >>= 1;
    }
    return r;
}

// Remainder of f modulo a monic g.
inline PolyP poly_rem(PolyP f, const PolyP &g, int p)
{
    trim(f);
    const std::size_t dg = g.size() - 1;
    while (f.size() > dg) {
        const int lead = f.back();
        const std::size_t shift = f.size() - 1 - dg;
        for (std::size_t i = 0; i <= dg; ++i)
            f[shift + i] = ((f[shift + i] - lead * g[i]) % p + p) % p;
        trim(f);
    }
    return f;
}

inline PolyP digits(std::uint64_t n, int p, int m)
{
    PolyP out(m);
    for (int i = 0; i < m; ++i) {
        out[i] = static_cast<int>(n % p);
        n /= p;
    }
    return out;
}

inline bool is_irreducible(const PolyP &f, int p)
{
    const int m = static_cast<int>(f.size()) - 1;
    if (m <= 1)
        return true;
    // Trial division by every monic polynomial of degree 1..m/2.
    for (int d = 1; d <= m / 2; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i)
            count *= p;
        for (std::uint64_t n = 0; n < count; ++n) {
            PolyP g = digits(n, p, d);
            g.push_back(1);
            if (poly_rem(f, g, p).empty())
                return false;
        }
    }
    return true;
}

} // namespace detail

/// Immutable description of F_{p^m}. Obtain instances through field_make().
class FieldCtx {
public:
    static constexpr std::uint64_t kMaxOrder = 1u << 20;

    FieldCtx(int p, int m) : p_(p), m_(m)
    {
        if (m < 1)
            fail(ErrorKind::InvalidParams, "extension degree must be >= 1");
        if (!detail::is_prime(p))
            fail(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
        std::uint64_t q = 1;
        for (int i = 0; i < m; ++i) {
            q *= static_cast<std::uint64_t>(p);
            if (q > kMaxOrder)
                fail(ErrorKind::InvalidParams, "field order p^m exceeds " + std::to_string(kMaxOrder));
        }
        q_ = static_cast<std::uint32_t>(q);
        pow_p_.resize(m + 1, 1);
        for (int i = 1; i <= m; ++i)
            pow_p_[i] = pow_p_[i - 1] * static_cast<std::uint32_t>(p);

        // Lexicographically least monic irreducible, coefficient tuple read from
        // x^{m-1} down to x^0. Reading the tuple as a base-p numeral with the
        // leading coefficient most significant enumerates exactly that order.
        for (std::uint64_t n = 0; n < q; ++n) {
            detail::PolyP f = detail::digits(n, p, m);
            f.push_back(1);
            if (detail::is_irreducible(f, p)) {
                modulus_ = f;
                break;
            }
        }
        build_tables();
    }

    int p() const noexcept { return p_; }
    int m() const noexcept { return m_; }
    std::uint32_t order() const noexcept { return q_; }
    /// Monic modulus, coefficients low degree first (length m+1).
    const std::vector<int> &modulus() const noexcept { return modulus_; }

    FFElem zero() const noexcept { return {0}; }
    FFElem one() const noexcept { return {1}; }
    /// Power-basis generator t (a root of the modulus).
    FFElem generator() const noexcept { return m_ == 1 ? from_int(-modulus_[0]) : FFElem{static_cast<std::uint32_t>(p_)}; }

    FFElem from_int(std::int64_t v) const noexcept
    {
        const std::int64_t r = ((v % p_) + p_) % p_;
        return {static_cast<std::uint32_t>(r)};
    }

    FFElem from_coords(std::span<const int> coords) const
    {
        if (static_cast<int>(coords.size()) != m_)
            fail(ErrorKind::ParseError, "field element needs " + std::to_string(m_) + " coordinates");
        std::uint32_t code = 0;
        for (int i = 0; i < m_; ++i) {
            if (coords[i] < 0 || coords[i] >= p_)
                fail(ErrorKind::ParseError, "coordinate out of range [0, p)");
            code += static_cast<std::uint32_t>(coords[i]) * pow_p_[i];
        }
        return {code};
    }

    std::vector<int> coords(FFElem x) const
    {
        std::vector<int> out(m_);
        std::uint32_t c = x.code;
        for (int i = 0; i < m_; ++i) {
            out[i] = static_cast<int>(c % p_);
            c /= p_;
        }
        return out;
    }

    bool valid(FFElem x) const noexcept { return x.code < q_; }

    FFElem add(FFElem a, FFElem b) const noexcept
    {
        if (p_ == 2)
            return {a.code ^ b.code};
        if (!add_table_.empty())
            return {add_table_[a.code * q_ + b.code]};
        return {digit_combine(a.code, b.code, +1)};
    }

    FFElem sub(FFElem a, FFElem b) const noexcept { return add(a, neg(b)); }

    FFElem neg(FFElem a) const noexcept
    {
        if (p_ == 2)
            return a;
        return {neg_table_[a.code]};
    }

    FFElem mul(FFElem a, FFElem b) const noexcept
    {
        if (a.code == 0 || b.code == 0)
            return {0};
        std::uint32_t e = log_[a.code] + log_[b.code];
        if (e >= q_ - 1)
            e -= q_ - 1;
        return {exp_[e]};
    }

    FFElem inv(FFElem a) const
    {
        if (a.code == 0)
            fail(ErrorKind::DivideByZero, "inverse of zero in F_q");
        const std::uint32_t l = log_[a.code];
        return {exp_[l == 0 ? 0 : (q_ - 1) - l]};
    }

    FFElem pow(FFElem a, std::int64_t e) const
    {
        if (a.code == 0) {
            if (e < 0)
                fail(ErrorKind::DivideByZero, "negative power of zero");
            return e == 0 ? one() : zero();
        }
        const std::int64_t order = q_ - 1;
        std::int64_t l = (static_cast<std::int64_t>(log_[a.code]) * (((e % order) + order) % order)) % order;
        return {exp_[static_cast<std::uint32_t>(l)]};
    }

    /// Absolute Frobenius x -> x^p.
    FFElem frobenius(FFElem a) const noexcept { return {frob_[a.code]}; }

    FFElem frobenius_pow(FFElem a, int k) const noexcept
    {
        k %= m_;
        if (k < 0)
            k += m_;
        for (int i = 0; i < k; ++i)
            a = frobenius(a);
        return a;
    }

    std::string describe() const { return "F_" + std::to_string(p_) + "^" + std::to_string(m_); }

private:
    std::uint32_t digit_combine(std::uint32_t a, std::uint32_t b, int sign) const noexcept
    {
        std::uint32_t out = 0;
        for (int i = 0; i < m_; ++i) {
            const int da = static_cast<int>(a % p_);
            const int db = static_cast<int>(b % p_);
            a /= p_;
            b /= p_;
            const int d = ((da + sign * db) % p_ + p_) % p_;
            out += static_cast<std::uint32_t>(d) * pow_p_[i];
        }
        return out;
    }

    // Product of codes via polynomial multiplication modulo the modulus; used
    // only while building the tables.
    std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const
    {
        detail::PolyP fa = detail::digits(a, p_, m_), fb = detail::digits(b, p_, m_);
        detail::PolyP prod(2 * m_, 0);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j)
                prod[i + j] = (prod[i + j] + fa[i] * fb[j]) % p_;
        prod = detail::poly_rem(prod, modulus_, p_);
        std::uint32_t code = 0;
        for (std::size_t i = 0; i < prod.size(); ++i)
            code += static_cast<std::uint32_t>(prod[i]) * pow_p_[i];
        return code;
    }

    void build_tables()
    {
        log_.assign(q_, 0);
        exp_.assign(q_ - 1 == 0 ? 1 : q_ - 1, 0);
        // Find a primitive element by brute force over the multiplicative group.
        for (std::uint32_t g = 1; g < q_; ++g) {
            std::uint32_t x = 1, order = 0;
            do {
                exp_[order] = x;
                x = slow_mul(x, g);
                ++order;
            } while (x != 1 && order < q_ - 1);
            if (x == 1 && order == q_ - 1)
                break;
        }
        for (std::uint32_t e = 0; e < q_ - 1; ++e)
            log_[exp_[e]] = e;

        if (p_ != 2) {
            neg_table_.resize(q_);
            for (std::uint32_t a = 0; a < q_; ++a)
                neg_table_[a] = digit_combine(0, a, -1);
            if (q_ <= 256) {
                add_table_.resize(static_cast<std::size_t>(q_) * q_);
                for (std::uint32_t a = 0; a < q_; ++a)
                    for (std::uint32_t b = 0; b < q_; ++b)
                        add_table_[a * q_ + b] = digit_combine(a, b, +1);
            }
        }

        frob_.resize(q_);
        frob_[0] = 0;
        for (std::uint32_t a = 1; a < q_; ++a) {
            const std::uint64_t e = (static_cast<std::uint64_t>(log_[a]) * p_) % (q_ - 1);
            frob_[a] = exp_[e];
        }
    }

    int p_;
    int m_;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> pow_p_;
    std::vector<int> modulus_;
    std::vector<std::uint32_t> log_, exp_, frob_, neg_table_, add_table_;
};

/// Canonical, process-wide context for F_{p^m}. Repeated calls with equal (p, m)
/// return the same object, so contexts compare by address.
inline const FieldCtx &field_make(int p, int m)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<const FieldCtx>> registry;
    std::lock_guard lock(mutex);
    auto it = registry.find({p, m});
    if (it == registry.end())
        it = registry.emplace(std::pair{p, m}, std::make_unique<const FieldCtx>(p, m)).first;
    return *it->second;
}

} // namespace isolab

#endif // ISOLAB_COEFFS_HPP
