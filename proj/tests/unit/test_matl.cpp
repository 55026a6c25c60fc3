#include <gtest/gtest.h>

#include <functional>

#include "isolab/matl.hpp"
#include "isolab/sampling.hpp"
#include "support/oracles.hpp"

using namespace isolab;
using namespace oracle;

namespace {

LaurentSeries P(const FieldCtx &F, int k) { return LaurentSeries::pi_power(F, k); }
LaurentSeries C(const FieldCtx &F, int v) { return LaurentSeries::integer(F, v); }

} // namespace

TEST(TwistedPower, Examples)
{
    const auto &F = field_make(2, 2);
    MatL b = MatL::from_rows(F, {{C(F, 0), P(F, 1)}, {C(F, 1), C(F, 0)}});
    EXPECT_EQ(twisted_power(b, 1), b);
    EXPECT_EQ(twisted_power(b, 0), MatL::identity(F, 2));
    EXPECT_EQ(twisted_power(b, 2), MatL::diag_pi(F, {1, 1}));
    const FFElem l = F.generator();
    MatL s = MatL::from_rows(F, {{LaurentSeries::constant(F, l)}});
    EXPECT_EQ(twisted_power(s, 2)(0, 0), LaurentSeries::constant(F, F.mul(l, F.frobenius(l))));
}

TEST(TwistedPower, CocycleLaw)
{
    const auto &F = field_make(3, 2);
    Rng rng(1, 0, "cocycle");
    for (int t = 0; t < 30; ++t) {
        const MatL b = random_matrix(F, 1 + t % 3, rng);
        for (int j = 0; j <= 4; ++j)
            for (int k = 0; j + k <= 8 && k <= 4; ++k)
                ASSERT_EQ(twisted_power(b, j + k), twisted_power(b, j) * twisted_power(b, k).sigma(j));
    }
}

TEST(Smith, Identity)
{
    const auto &F = field_make(2, 1);
    EXPECT_EQ(smith_slopes(MatL::identity(F, 3)), Cocharacter::zero(3));
}

TEST(Smith, SuperbasicBlock)
{
    const auto &F = field_make(2, 1);
    MatL b = MatL::from_rows(F, {{C(F, 0), P(F, 1)}, {C(F, 1), C(F, 0)}});
    EXPECT_EQ(smith_slopes(b), Cocharacter::from_ints({1, 0}));
}

TEST(Smith, NonInvariantUnitWitness)
{
    const auto &F = field_make(3, 2);
    const FFElem l = F.generator();
    ASSERT_NE(F.frobenius(l), l);
    const auto lam = LaurentSeries::constant(F, l);
    MatL b = MatL::from_rows(F, {{C(F, 1), C(F, 0)}, {lam * P(F, -1) - lam.sigma(), P(F, 1)}});
    const auto mg = minor_gcd_slopes(b);
    EXPECT_EQ(mg, (std::vector<int>{-1, 2}));
    EXPECT_EQ(smith_slopes(b), Cocharacter::from_ints({2, -1}));
}

TEST(Smith, SingularMatrix)
{
    const auto &F = field_make(2, 1);
    MatL b = MatL::from_rows(F, {{C(F, 1), C(F, 1)}, {C(F, 1), C(F, 1)}});
    try {
        smith_slopes(b);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotInvertible);
    }
}

TEST(Smith, UncertifiablePivot)
{
    const auto &F = field_make(2, 1);
    MatL b = MatL::from_rows(F, {{LaurentSeries::zero_to(F, 3), C(F, 0)}, {C(F, 0), C(F, 1)}});
    EXPECT_THROW(smith_slopes(b), PrecisionError);
}

TEST(Smith, MatchesMinorGcdOracle)
{
    for (const auto &[p, m] : std::vector<std::pair<int, int>>{{2, 2}, {3, 1}}) {
        const auto &F = field_make(p, m);
        for (int t = 0; t < 120; ++t) {
            Rng rng(2, static_cast<std::uint64_t>(t), "smith");
            const MatL b = random_matrix(F, 1 + t % 4, rng);
            const auto mg = minor_gcd_slopes(b);
            std::vector<Rational> s(mg.begin(), mg.end());
            ASSERT_EQ(smith_slopes(b), Cocharacter(s)) << b.to_string();
        }
    }
}

TEST(Smith, SumEqualsDeterminantValuation)
{
    const auto &F = field_make(2, 3);
    Rng rng(3, 0, "smithdet");
    for (int t = 0; t < 100; ++t) {
        const MatL b = random_matrix(F, 2 + t % 3, rng);
        ASSERT_EQ(smith_slopes(b).total(), Rational(determinant(b).val()));
    }
}

TEST(Smith, CartanInvariance)
{
    const auto &F = field_make(3, 2);
    for (int t = 0; t < 60; ++t) {
        Rng rng(4, static_cast<std::uint64_t>(t), "cartan");
        const std::size_t n = 2 + t % 3;
        const MatL b = random_matrix(F, n, rng);
        const auto k1 = random_unimodular(F, n, rng), k2 = random_unimodular(F, n, rng);
        ASSERT_EQ(k1.k * k1.inverse, MatL::identity(F, n));
        ASSERT_EQ(smith_slopes(k1.k * b * k2.k), smith_slopes(b));
    }
}

TEST(CharPoly, DiagonalAndIdentity)
{
    const auto &F = field_make(3, 1);
    const auto cp = char_poly(MatL::diag_pi(F, {1, 2}));
    ASSERT_EQ(cp.coeffs.size(), 3U);
    EXPECT_EQ(cp.coeffs[0], P(F, 3));
    EXPECT_EQ(cp.coeffs[1], -(P(F, 1) + P(F, 2)));
    EXPECT_EQ(cp.coeffs[2], C(F, 1));
    const auto ci = char_poly(MatL::identity(F, 2));
    EXPECT_EQ(ci.coeffs[0], C(F, 1));
    EXPECT_EQ(ci.coeffs[1], C(F, -2));
    EXPECT_EQ(ci.coeffs[2], C(F, 1));
}

TEST(CharPoly, MatchesCofactorOracle)
{
    for (const auto &[p, m] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {5, 1}}) {
        const auto &F = field_make(p, m);
        for (int t = 0; t < 100; ++t) {
            Rng rng(5, static_cast<std::uint64_t>(t), "charpoly");
            const MatL b = random_matrix(F, 1 + t % 4, rng);
            ASSERT_EQ(char_poly(b).coeffs, charpoly_oracle(b)) << b.to_string();
        }
    }
}

TEST(NormMap, Examples)
{
    const auto &F1 = field_make(3, 1);
    Rng rng(6, 0, "norm");
    const MatL b = random_matrix(F1, 2, rng);
    EXPECT_EQ(norm_map(b), b);

    const auto &F = field_make(3, 2);
    const FFElem l = F.generator();
    const auto nb = norm_map(MatL::from_rows(F, {{LaurentSeries::constant(F, l)}}));
    const FFElem expect = F.pow(l, 1 + 3);
    EXPECT_EQ(nb(0, 0), LaurentSeries::constant(F, expect));
    EXPECT_EQ(F.frobenius(expect), expect);

    const auto &F4 = field_make(2, 3);
    MatL inv = MatL::from_rows(F4, {{C(F4, 1), P(F4, 1)}, {P(F4, -1), C(F4, 0)}});
    EXPECT_EQ(norm_map(inv), inv * inv * inv);
}

TEST(MatInv, ProductIsIdentity)
{
    const auto &F = field_make(2, 2);
    Rng rng(7, 0, "matinv");
    for (int t = 0; t < 50; ++t) {
        const MatL b = random_matrix(F, 1 + t % 4, rng);
        ASSERT_TRUE((b * mat_inv(b)).agrees_with(MatL::identity(F, b.n())));
    }
    MatL s = MatL::from_rows(F, {{C(F, 1), C(F, 1)}, {C(F, 1), C(F, 1)}});
    EXPECT_THROW(mat_inv(s), Error);
}

TEST(MatSigma, PrimeFieldEntriesAndOrder)
{
    const auto &F = field_make(2, 3);
    MatL b = MatL::from_rows(F, {{C(F, 1), P(F, 2)}, {P(F, -1), C(F, 0)}});
    EXPECT_EQ(b.sigma(), b);
    Rng rng(8, 0, "matsigma");
    const MatL r = random_matrix(F, 3, rng);
    EXPECT_EQ(r.sigma().sigma().sigma(), r);
    EXPECT_EQ(r.sigma(3), r);
}
