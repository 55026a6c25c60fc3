#include <gtest/gtest.h>

#include "isolab/io.hpp"
#include "isolab/render.hpp"

using namespace isolab;

namespace {

Rational R(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }
Cocharacter Q(std::initializer_list<Rational> xs) { return Cocharacter(std::vector<Rational>(xs)); }

} // namespace

TEST(Json, SeriesRoundTrip)
{
    const auto &F = field_make(3, 2);
    Rng rng(1, 0, "json");
    for (int t = 0; t < 50; ++t) {
        const auto x = rng.unit_times_power(F, static_cast<int>(rng.uniform(-3, 3)), 4);
        const auto y = x.truncated(static_cast<int>(rng.uniform(-2, 8)));
        EXPECT_EQ(io::series_from_json(F, io::series_to_json(x)), x);
        EXPECT_EQ(io::series_from_json(F, io::series_to_json(y)), y);
    }
}

TEST(Json, MatrixRoundTripAndShorthand)
{
    const auto &F = field_make(2, 2);
    Rng rng(2, 0, "json");
    const MatL b = random_matrix(F, 3, rng);
    EXPECT_EQ(io::matrix_from_json(F, io::matrix_to_json(b)), b);
    const auto m = io::matrix_from_json(F, io::parse(R"([["0","pi"],[1,"-pi^-2"]])"));
    EXPECT_EQ(m(0, 0), LaurentSeries::zero(F));
    EXPECT_EQ(m(0, 1), LaurentSeries::pi_power(F, 1));
    EXPECT_EQ(m(1, 0), LaurentSeries::integer(F, 1));
    EXPECT_EQ(m(1, 1), -LaurentSeries::pi_power(F, -2));
}

TEST(Json, CocharAndSignatureRoundTrip)
{
    const auto x = Q({R(1, 2), R(1, 2), -1});
    EXPECT_EQ(io::cochar_from_json(io::cochar_to_json(x)), x);
    const StrataSignature sig{{Q({2, -1, -1}), Q({1, 1, -2})}};
    EXPECT_EQ(io::signature_from_json(io::signature_to_json(sig)), sig);
    const GOType tau(5, {0, 1, 3});
    EXPECT_EQ(io::gotype_from_json(io::gotype_to_json(tau)), tau);
}

TEST(Json, ResAndDisplayRoundTrip)
{
    const auto &F = field_make(2, 3);
    const ResElement b = go_generic_matrix(F, GOType(3, {1}), 2);
    EXPECT_EQ(io::res_from_json(F, io::res_to_json(b)).parts, b.parts);
    const DisplayParams d{3, 2, 1, 4, LaurentSeries::integer(F, 1)};
    const auto back = io::display_from_json(F, io::display_to_json(d));
    EXPECT_EQ(ag_display(back), ag_display(d));
}

TEST(Json, Errors)
{
    const auto &F = field_make(2, 1);
    try {
        io::parse("{\"a\": [1, 2");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::ParseError);
        EXPECT_NE(std::string(e.what()).find("malformed JSON at byte"), std::string::npos);
    }
    EXPECT_THROW(io::matrix_from_json(F, io::parse(R"([[1,2],[3]])")), Error);
    EXPECT_THROW(io::series_from_string(F, "pie"), Error);
    EXPECT_THROW(io::series_from_string(F, "pi^x"), Error);
    EXPECT_THROW(io::cochar_from_json(io::parse(R"(["1/0"])")), Error);
}

TEST(Render, AsciiDeterministicWithGap)
{
    const std::vector<LabeledPolygon> polys{{"hodge", Q({2, -1, -1})}, {"newton", Cocharacter::zero(3)}};
    const auto a = render_polygon(polys, "ascii");
    EXPECT_EQ(a, render_polygon(polys, "ascii"));
    EXPECT_NE(a.find("max vertical gap 2 at x=1"), std::string::npos);
}

TEST(Render, SvgWellFormed)
{
    const std::vector<LabeledPolygon> polys{{"newton", Q({R(1, 2), R(1, 2), -1})}};
    const auto s = render_polygon(polys, "svg");
    EXPECT_EQ(s.rfind("<svg", 0), 0U);
    EXPECT_NE(s.find("</svg>"), std::string::npos);
    EXPECT_EQ(s, render_polygon(polys, "svg"));
    EXPECT_THROW(render_polygon(polys, "png"), Error);
}
