#ifndef ISOLAB_SAMPLING_HPP
#define ISOLAB_SAMPLING_HPP

// Seeded random generation of field elements, series and matrices.
//
// Every random stream is derived from (seed, index, purpose tag) by hashing, so a
// trial's randomness does not depend on how many trials ran before it or on which
// worker ran it.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "coeffs.hpp"
#include "laurent.hpp"
#include "matl.hpp"

namespace isolab {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::string_view tag)
{
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a over the tag
    for (const char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return splitmix64(splitmix64(seed ^ h) + index);
}

class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t index, std::string_view tag) : engine_(derive_seed(seed, index, tag)) {}
    explicit Rng(std::uint64_t raw) : engine_(raw) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi)
    {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
    }

    /// True with probability num/den.
    bool chance(int num, int den) { return uniform(0, den - 1) < num; }

    FFElem element(const FieldCtx &F) { return {static_cast<std::uint32_t>(uniform(0, F.order() - 1))}; }
    FFElem nonzero_element(const FieldCtx &F) { return {static_cast<std::uint32_t>(uniform(1, F.order() - 1))}; }

    /// Exact pi^v * (u_0 + u_1 pi + ... + u_d pi^d) with u_0 != 0 and d <= max_degree.
    LaurentSeries unit_times_power(const FieldCtx &F, int v, int max_degree)
    {
        const int d = static_cast<int>(uniform(0, max_degree));
        std::vector<FFElem> c(d + 1);
        c[0] = nonzero_element(F);
        for (int i = 1; i <= d; ++i)
            c[i] = element(F);
        return LaurentSeries::from_coeffs(F, v, std::move(c), true);
    }

    /// Exact element of O_L: zero with probability zero_num/zero_den, otherwise
    /// pi^v * unit with v uniform in [0, max_val].
    LaurentSeries integral(const FieldCtx &F, int max_val, int max_degree, int zero_num = 1, int zero_den = 3)
    {
        if (chance(zero_num, zero_den))
            return LaurentSeries::zero(F);
        return unit_times_power(F, static_cast<int>(uniform(0, max_val)), max_degree);
    }

    std::vector<std::size_t> permutation(std::size_t n)
    {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = n; i > 1; --i)
            std::swap(perm[i - 1], perm[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
        return perm;
    }

    std::mt19937_64 &engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Random invertible matrix whose nonzero entries have valuations in [vmin, vmax].
inline MatL random_matrix(const FieldCtx &F, std::size_t n, Rng &rng, int vmin = -2, int vmax = 2,
                          int max_degree = 2)
{
    for (;;) {
        MatL b(F, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!rng.chance(1, 5))
                    b(i, j) = rng.unit_times_power(F, static_cast<int>(rng.uniform(vmin, vmax)), max_degree);
        if (!determinant(b).is_exact_zero())
            return b;
    }
}

/// A matrix in GL_n(O_L) together with its exact inverse. Built as
/// permutation * (product of elementary matrices) * diagonal constants.
struct Unimodular {
    MatL k;
    MatL inverse;
};

inline Unimodular random_unimodular(const FieldCtx &F, std::size_t n, Rng &rng, int max_val = 2, int max_degree = 2,
                                    int elementary_steps = -1, bool permute = true)
{
    MatL k = MatL::identity(F, n);
    MatL inv = MatL::identity(F, n);
    if (n == 0)
        return {k, inv};
    if (permute) {
        const auto perm = rng.permutation(n);
        MatL p(F, n), pt(F, n);
        for (std::size_t j = 0; j < n; ++j) {
            p(perm[j], j) = LaurentSeries::integer(F, 1);
            pt(j, perm[j]) = LaurentSeries::integer(F, 1);
        }
        k = p;
        inv = pt;
    }
    const int steps = elementary_steps >= 0 ? elementary_steps : static_cast<int>(n * n);
    for (int s = 0; s < steps && n > 1; ++s) {
        const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
        auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 2));
        if (j >= i)
            ++j;
        const LaurentSeries x = rng.integral(F, max_val, max_degree);
        if (x.is_exact_zero())
            continue;
        // k <- k * E_ij(x); inv <- E_ij(-x) * inv.
        for (std::size_t r = 0; r < n; ++r)
            if (!k(r, i).is_exact_zero())
                k(r, j) += k(r, i) * x;
        for (std::size_t c = 0; c < n; ++c)
            if (!inv(j, c).is_exact_zero())
                inv(i, c) -= x * inv(j, c);
    }
    for (std::size_t c = 0; c < n; ++c) {
        const FFElem u = rng.nonzero_element(F);
        const LaurentSeries su = LaurentSeries::constant(F, u);
        const LaurentSeries sinv = LaurentSeries::constant(F, F.inv(u));
        for (std::size_t r = 0; r < n; ++r) {
            if (!k(r, c).is_exact_zero())
                k(r, c) = k(r, c) * su;
            if (!inv(c, r).is_exact_zero())
                inv(c, r) = sinv * inv(c, r);
        }
    }
    return {k, inv};
}

/// Random g with g = identity modulo pi^level (level >= 1), or a random element of
/// GL_n(O_L) when level == 0.
inline MatL random_congruent(const FieldCtx &F, std::size_t n, int level, Rng &rng, int max_degree = 2)
{
    if (level <= 0)
        return random_unimodular(F, n, rng, 2, max_degree).k;
    MatL g = MatL::identity(F, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const LaurentSeries x = rng.integral(F, 2, max_degree);
            if (!x.is_exact_zero())
                g(i, j) += x.shifted(level);
        }
    return g;
}

} // namespace isolab

#endif // ISOLAB_SAMPLING_HPP
