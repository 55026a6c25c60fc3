#include <gtest/gtest.h>

#include "isolab/resgroups.hpp"

using namespace isolab;

namespace {

LaurentSeries P(const FieldCtx &F, int k) { return LaurentSeries::pi_power(F, k); }
LaurentSeries C(const FieldCtx &F, int v) { return LaurentSeries::integer(F, v); }
Rational R(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }
Cocharacter Q(std::initializer_list<Rational> xs) { return Cocharacter(std::vector<Rational>(xs)); }

MatL antidiag(const FieldCtx &F) { return MatL::from_rows(F, {{C(F, 0), C(F, 1)}, {P(F, 1), C(F, 0)}}); }

ResElement constant_tuple(const MatL &b, int g) { return ResElement(std::vector<MatL>(static_cast<std::size_t>(g), b)); }

// Largest spaced subset of tau, by listing every subset of {0..g-1} and keeping
// those inside tau with no i, i+1 (mod g) both present.
int spaced_oracle(int g, const std::vector<int> &tau)
{
    int best = 0;
    for (std::uint32_t s = 0; s < (1U << g); ++s) {
        bool ok = true;
        int count = 0;
        for (int i = 0; i < g && ok; ++i) {
            if (!(s >> i & 1U))
                continue;
            ++count;
            if (std::find(tau.begin(), tau.end(), i) == tau.end())
                ok = false;
            const int next = (i + 1) % g;
            if (g > 1 && (s >> next & 1U))
                ok = false;
        }
        if (ok)
            best = std::max(best, count);
    }
    return best;
}

ResElement supersingular_triple(const FieldCtx &F)
{
    return ResElement({MatL::diag_pi(F, {1, 0}), antidiag(F), MatL::diag_pi(F, {0, 1})});
}

} // namespace

TEST(ResTwistedPower, Examples)
{
    const auto &F = field_make(2, 2);
    const auto b = constant_tuple(MatL::diag_pi(F, {1, 0}), 2);
    EXPECT_EQ(res_twisted_power(b, 1), b);
    const auto sq = res_twisted_power(b, 2);
    EXPECT_EQ(res_hodge(sq), (std::vector<Cocharacter>{Q({2, 0}), Q({2, 0})}));
    const auto a = res_twisted_power(constant_tuple(antidiag(F), 2), 2);
    for (const auto &part : a.parts)
        EXPECT_EQ(part, MatL::diag_pi(F, {1, 1}));
}

TEST(ResTwistedPower, MatchesUnfoldedMatrix)
{
    const auto &F = field_make(2, 3);
    Rng rng(1, 0, "unfold");
    for (int t = 0; t < 20; ++t) {
        const int g = 1 + t % 4;
        std::vector<MatL> parts;
        for (int i = 0; i < g; ++i)
            parts.push_back(random_matrix(F, 2, rng, -1, 1));
        const ResElement b(parts);
        const MatL big = res_unfold(b);
        const MatL bigpow = twisted_power(big, g);
        const ResElement small = res_twisted_power(b, g);
        for (int i = 0; i < g; ++i)
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c)
                    ASSERT_EQ(bigpow(static_cast<std::size_t>(i) * 2 + r, static_cast<std::size_t>(i) * 2 + c),
                              small.parts[static_cast<std::size_t>(i)](r, c));
        // Newton point of the unfolded isocrystal repeats each slope g times.
        std::vector<Rational> rep;
        const Cocharacter nu = res_newton(b);
        for (const auto &s : nu.slopes())
            for (int k = 0; k < g; ++k)
                rep.push_back(s);
        ASSERT_EQ(newton_point(big), Cocharacter(rep));
    }
}

TEST(ResNewton, Examples)
{
    const auto &F = field_make(2, 2);
    EXPECT_EQ(res_newton(constant_tuple(MatL::diag_pi(F, {1, 0}), 3)), Q({1, 0}));
    EXPECT_EQ(res_newton(supersingular_triple(F)), Q({R(1, 2), R(1, 2)}));
}

TEST(ResNewton, InvariantUnderSigmaShift)
{
    const auto &F = field_make(3, 2);
    Rng rng(2, 0, "shift");
    for (int t = 0; t < 30; ++t) {
        const int g = 1 + t % 4;
        std::vector<MatL> parts;
        for (int i = 0; i < g; ++i)
            parts.push_back(random_matrix(F, 2, rng, -1, 1));
        const ResElement b(parts);
        const ResElement s = res_sigma_shift(b);
        ASSERT_EQ(res_newton(s), res_newton(b));
        auto hb = res_hodge(res_twisted_power(b, 2)), hs = res_hodge(res_twisted_power(s, 2));
        std::sort(hb.begin(), hb.end());
        std::sort(hs.begin(), hs.end());
        ASSERT_EQ(hb, hs);
    }
}

TEST(GoType, Examples)
{
    const auto &F = field_make(2, 2);
    EXPECT_EQ(go_type(constant_tuple(MatL::diag_pi(F, {1, 0}), 3)), GOType(3, {}));
    EXPECT_EQ(go_type(constant_tuple(antidiag(F), 4)), GOType(4, {0, 1, 2, 3}));
    const auto tri = supersingular_triple(F);
    EXPECT_EQ(res_hodge(res_twisted_power(tri, 2)), (std::vector<Cocharacter>{Q({1, 1}), Q({2, 0}), Q({2, 0})}));
    EXPECT_EQ(go_type(tri), GOType(3, {0}));
}

TEST(GoType, BadProfile)
{
    const auto &F = field_make(2, 2);
    try {
        go_type(constant_tuple(MatL::diag_pi(F, {2, 0}), 2));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadHodgeProfile);
    }
}

TEST(GoType, SquareComponentsAreOneOneOrTwoZero)
{
    const auto &F = field_make(2, 3);
    for (int g = 1; g <= 4; ++g)
        for (std::uint32_t mask = 0; mask < (1U << g); ++mask) {
            const GOType tau = GOType::from_mask(g, mask);
            for (int s = 0; s < 5; ++s) {
                const auto b = go_sample_of_type(F, tau, 1, static_cast<std::uint64_t>(s));
                for (const auto &mu : res_hodge(res_twisted_power(b, 2)))
                    ASSERT_TRUE(mu == Q({1, 1}) || mu == Q({2, 0})) << mu.to_string();
                ASSERT_EQ(go_type(b), tau);
            }
        }
}

TEST(GoLambda, Examples)
{
    EXPECT_EQ(go_lambda(GOType(3, {0, 1, 2})), R(1, 2));
    EXPECT_EQ(go_lambda(GOType(4, {})), R(0));
    EXPECT_EQ(go_lambda(GOType(4, {0, 1, 2, 3})), R(1, 2));
    EXPECT_EQ(go_lambda(GOType(5, {0, 1, 3})), R(2, 5));
    EXPECT_EQ(go_beta(GOType(5, {0, 1, 3})), Q({R(3, 5), R(2, 5)}));
}

TEST(GoLambda, MatchesSpacedSubsetOracle)
{
    for (int g = 1; g <= 8; ++g)
        for (std::uint32_t mask = 0; mask < (1U << g); ++mask) {
            const GOType tau = GOType::from_mask(g, mask);
            const Rational expect =
                g % 2 == 1 && tau.full() ? R(1, 2) : R(spaced_oracle(g, tau.members), g);
            ASSERT_EQ(go_lambda(tau), expect) << "g=" << g << " tau=" << tau.to_string();
        }
}

TEST(GoGeneric, FullTypeIsAllZero)
{
    const auto &F = field_make(2, 3);
    const auto a = go_generic_matrix(F, GOType(3, {0, 1, 2}), 1);
    for (const auto &part : a.parts)
        EXPECT_TRUE(part(0, 0).is_exact_zero());
    EXPECT_EQ(go_type(a), GOType(3, {0, 1, 2}));
    EXPECT_EQ(res_newton(a), Q({R(1, 2), R(1, 2)}));
}

TEST(GoGeneric, OrdinaryOneFactor)
{
    const auto &F = field_make(2, 3);
    const auto a = go_generic_matrix(F, GOType(1, {}), 4);
    EXPECT_FALSE(a.parts[0](0, 0).is_exact_zero());
    EXPECT_EQ(a.parts[0](0, 1), -P(F, 1));
    EXPECT_EQ(res_newton(a), Q({1, 0}));
}

TEST(GoGeneric, EmptyTypeIsOrdinary)
{
    const auto &F = field_make(2, 4);
    for (int s = 0; s < 5; ++s)
        EXPECT_EQ(res_newton(go_generic_matrix(F, GOType(2, {}), static_cast<std::uint64_t>(s))), Q({1, 0}));
}

TEST(GoGeneric, TypeAndNewtonOverLargeField)
{
    const auto &F = field_make(2, 12);
    for (int g = 1; g <= 4; ++g)
        for (std::uint32_t mask = 0; mask < (1U << g); ++mask) {
            const GOType tau = GOType::from_mask(g, mask);
            const auto a = go_generic_matrix(F, tau, 3);
            ASSERT_EQ(go_type(a), tau);
            ASSERT_EQ(res_newton(a), go_beta(tau)) << tau.to_string();
        }
}

TEST(GoGeneric, DegreeTooSmall)
{
    const auto &F = field_make(2, 1);
    try {
        go_generic_matrix(F, GOType(3, {}), 0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegreeTooSmall);
    }
}

TEST(GoBound, SampledTypesLieBelowBeta)
{
    const auto &F = field_make(3, 2);
    for (int g = 1; g <= 4; ++g)
        for (std::uint32_t mask = 0; mask < (1U << g); ++mask) {
            const GOType tau = GOType::from_mask(g, mask);
            for (int s = 0; s < 10; ++s) {
                const auto b = go_sample_of_type(F, tau, 2, static_cast<std::uint64_t>(s));
                ASSERT_TRUE(dominates(res_newton(b), go_beta(tau)));
            }
        }
}

TEST(AgDisplay, Examples)
{
    const auto &F = field_make(2, 2);
    const MatL f = ag_display({2, 1, 1, 1, C(F, 1)});
    EXPECT_EQ(f, MatL::from_rows(F, {{P(F, 1), P(F, 1)}, {P(F, 1), C(F, 0)}}));
    EXPECT_EQ(hodge_point(f), Q({1, 1}));
    const MatL h = ag_display({2, 2, 0, 0, C(F, 1)});
    EXPECT_EQ(h, MatL::from_rows(F, {{C(F, 1), P(F, 2)}, {C(F, 1), C(F, 0)}}));
    EXPECT_EQ(hodge_point(h), Q({2, 0}));
}

TEST(AgDisplay, InvalidParams)
{
    const auto &F = field_make(2, 2);
    EXPECT_THROW(ag_display({2, 1, 1, 0, C(F, 1)}), Error);
    EXPECT_THROW(ag_display({3, 1, 2, 2, C(F, 1)}), Error);
    EXPECT_THROW(ag_display({2, 1, 1, 1, P(F, 1)}), Error);
}

TEST(AgInvariants, Examples)
{
    const auto &F = field_make(3, 2);
    auto inv = ag_invariants(ag_display({2, 1, 1, 1, C(F, 1)}));
    EXPECT_EQ(inv.j, 1);
    EXPECT_EQ(inv.n, 1);
    inv = ag_invariants(ag_display({2, 2, 0, 0, C(F, 1)}));
    EXPECT_EQ(inv.j, 0);
    EXPECT_EQ(inv.n, 0);
    inv = ag_invariants(ag_display({3, 2, 1, 1, C(F, 1)}));
    EXPECT_EQ(inv.j, 1);
    EXPECT_EQ(inv.n, 1);
}

TEST(AgLambda, Examples)
{
    EXPECT_EQ(ag_lambda(0, 4), R(0));
    EXPECT_EQ(ag_lambda(4, 4), R(1, 2));
    EXPECT_EQ(ag_lambda(1, 3), R(1, 3));
    try {
        ag_lambda(5, 4);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::RangeError);
    }
}

TEST(AgNewton, SmallGrid)
{
    const auto &F = field_make(2, 3);
    const LaurentSeries cs[] = {C(F, 1), LaurentSeries::from_coeffs(F, 0, {F.generator(), F.one()}, true)};
    for (int g = 1; g <= 4; ++g)
        for (int j = 0; 2 * j <= g; ++j)
            for (int m = j; m <= 2 * g; ++m)
                for (const auto &c : cs) {
                    const int i = g - j;
                    const MatL f = ag_display({g, i, j, m, c});
                    const auto inv = ag_invariants(f);
                    ASSERT_EQ(inv.j, j);
                    ASSERT_EQ(inv.n, std::min(m, i));
                    const Rational l = ag_lambda(inv.n, g);
                    ASSERT_EQ(newton_point(f).scaled(R(1, g)), Q({1 - l, l}));
                }
}

TEST(BaseChange, Examples)
{
    const auto &F = field_make(2, 2);
    auto r = base_change_check(MatL::diag_pi(F, {1, 0}), 2);
    EXPECT_EQ(r.hodge_rebased, Q({2, 0}));
    EXPECT_EQ(r.newton_rebased, Q({2, 0}));
    EXPECT_TRUE(r.scaled_ok);
    Rng rng(3, 0, "bc");
    const MatL b = random_matrix(F, 3, rng);
    r = base_change_check(b, 1);
    EXPECT_EQ(r.hodge, r.hodge_rebased);
    EXPECT_EQ(r.newton, r.newton_rebased);
    r = base_change_check(minimal_element(F, Q({R(1, 2), R(1, 2)})), 2);
    EXPECT_EQ(r.newton_rebased, Q({1, 1}));
    EXPECT_TRUE(r.scaled_ok);
}

TEST(MixedExtension, RebasedPartsScaleTupleInvariants)
{
    // Unramified tuple whose parts live over the rebased field.
    const auto &F = field_make(2, 2);
    const auto tri = supersingular_triple(F);
    std::vector<MatL> parts;
    for (const auto &p : tri.parts)
        parts.push_back(p.rebased(2));
    const ResElement mixed(parts);
    EXPECT_EQ(res_newton(mixed), res_newton(tri).scaled(R(2)));
}
