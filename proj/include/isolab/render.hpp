#ifndef ISOLAB_RENDER_HPP
#define ISOLAB_RENDER_HPP

// Text and SVG drawings of concave polygons, optionally several overlaid.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cochar.hpp"
#include "errors.hpp"

namespace isolab {

struct LabeledPolygon {
    std::string label;
    Cocharacter x;
};

namespace detail {

inline std::string point_label(int x, const Rational &y) { return "(" + std::to_string(x) + "," + to_string(y) + ")"; }

struct GapInfo {
    int x = 0;
    Rational gap;
};

inline GapInfo widest_gap(const Cocharacter &a, const Cocharacter &b)
{
    const auto pa = a.prefix_sums(), pb = b.prefix_sums();
    GapInfo g{0, Rational(0)};
    for (std::size_t i = 0; i < pa.size() && i < pb.size(); ++i) {
        const Rational d = pa[i] > pb[i] ? pa[i] - pb[i] : pb[i] - pa[i];
        if (d > g.gap)
            g = {static_cast<int>(i), d};
    }
    return g;
}

inline std::string fixed(double v)
{
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << v;
    return os.str();
}

inline double to_double(const Rational &r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

} // namespace detail

/// Character plot: one column block per unit of x, one row per 1/d of y, where d is
/// the common denominator of all prefix sums (capped so the plot stays small).
inline std::string render_ascii(const std::vector<LabeledPolygon> &polys)
{
    if (polys.empty())
        return "";
    static constexpr char kMarks[] = {'*', 'o', '+', 'x'};
    const int n = static_cast<int>(polys.front().x.size());
    std::int64_t den = 1;
    Rational ymin(0), ymax(0);
    for (const auto &p : polys)
        for (const auto &s : p.x.prefix_sums()) {
            den = std::lcm(den, s.denominator());
            ymin = std::min(ymin, s);
            ymax = std::max(ymax, s);
        }
    den = std::min<std::int64_t>(den, 6);
    const int cols_per_unit = 6;
    const int width = n * cols_per_unit + 1;
    const auto row_of = [&](const Rational &y) {
        return static_cast<int>(std::llround(detail::to_double((ymax - y) * den)));
    };
    const int height = row_of(ymin) + 1;
    std::vector<std::string> grid(static_cast<std::size_t>(height), std::string(static_cast<std::size_t>(width), ' '));
    for (std::size_t k = 0; k < polys.size(); ++k) {
        const char mark = kMarks[k % sizeof(kMarks)];
        const auto sums = polys[k].x.prefix_sums();
        for (int col = 0; col < width; ++col) {
            const int i = std::min(col / cols_per_unit, n - 1 < 0 ? 0 : n - 1);
            const Rational t(col - i * cols_per_unit, cols_per_unit);
            const Rational y = n == 0 ? Rational(0) : sums[i] + (sums[std::min(i + 1, n)] - sums[i]) * t;
            char &cell = grid[static_cast<std::size_t>(row_of(y))][static_cast<std::size_t>(col)];
            cell = cell == ' ' || cell == mark ? mark : '#';
        }
    }
    std::ostringstream os;
    for (int r = 0; r < height; ++r) {
        const Rational y = ymax - Rational(r, den);
        std::string lab = to_string(y);
        lab.insert(0, lab.size() < 6 ? 6 - lab.size() : 0, ' ');
        os << lab << " |" << grid[static_cast<std::size_t>(r)] << "\n";
    }
    os << "       +" << std::string(static_cast<std::size_t>(width), '-') << "\n";
    os << "        ";
    for (int i = 0; i <= n; ++i) {
        std::string t = std::to_string(i);
        os << t << (i < n ? std::string(static_cast<std::size_t>(cols_per_unit) - t.size(), ' ') : "");
    }
    os << "\n";
    for (std::size_t k = 0; k < polys.size(); ++k) {
        os << kMarks[k % sizeof(kMarks)] << " " << polys[k].label << " " << polys[k].x.to_string() << " vertices";
        for (const auto &[x, y] : polygon(polys[k].x).vertices)
            os << " " << detail::point_label(x, y);
        os << "\n";
    }
    if (polys.size() == 2 && polys[0].x.size() == polys[1].x.size()) {
        const auto g = detail::widest_gap(polys[0].x, polys[1].x);
        os << "max vertical gap " << to_string(g.gap) << " at x=" << g.x << "\n";
    }
    return os.str();
}

inline std::string render_svg(const std::vector<LabeledPolygon> &polys)
{
    static constexpr const char *kColors[] = {"#1f4e9c", "#b0361f", "#2f7d32", "#6d3a96"};
    const int n = polys.empty() ? 0 : static_cast<int>(polys.front().x.size());
    Rational ymin(0), ymax(0);
    for (const auto &p : polys)
        for (const auto &s : p.x.prefix_sums()) {
            ymin = std::min(ymin, s);
            ymax = std::max(ymax, s);
        }
    const double unit = 80.0, margin = 50.0;
    const double w = std::max(n, 1) * unit + 2 * margin;
    const double h = std::max(detail::to_double(ymax - ymin), 1.0) * unit + 2 * margin + 20.0 * static_cast<double>(polys.size());
    const auto px = [&](double x) { return margin + x * unit; };
    const auto py = [&](const Rational &y) { return margin + detail::to_double(ymax - y) * unit; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::fixed(w) << "\" height=\"" << detail::fixed(h)
       << "\" viewBox=\"0 0 " << detail::fixed(w) << " " << detail::fixed(h) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << detail::fixed(px(0)) << "\" y1=\"" << detail::fixed(py(Rational(0))) << "\" x2=\""
       << detail::fixed(px(n)) << "\" y2=\"" << detail::fixed(py(Rational(0)))
       << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    for (std::size_t k = 0; k < polys.size(); ++k) {
        const char *color = kColors[k % 4];
        const auto verts = polygon(polys[k].x).vertices;
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t v = 0; v < verts.size(); ++v)
            os << (v ? " " : "") << detail::fixed(px(verts[v].first)) << "," << detail::fixed(py(verts[v].second));
        os << "\"/>\n";
        for (const auto &[x, y] : verts) {
            os << "<circle cx=\"" << detail::fixed(px(x)) << "\" cy=\"" << detail::fixed(py(y)) << "\" r=\"3\" fill=\""
               << color << "\"/>\n";
            os << "<text x=\"" << detail::fixed(px(x) + 4) << "\" y=\"" << detail::fixed(py(y) - 6 - 12.0 * static_cast<double>(k))
               << "\" font-family=\"monospace\" font-size=\"11\" fill=\"" << color << "\">"
               << detail::point_label(x, y) << "</text>\n";
        }
        os << "<text x=\"" << detail::fixed(margin) << "\" y=\""
           << detail::fixed(h - 10 - 20.0 * static_cast<double>(polys.size() - 1 - k))
           << "\" font-family=\"monospace\" font-size=\"12\" fill=\"" << color << "\">" << polys[k].label << " "
           << polys[k].x.to_string() << "</text>\n";
    }
    if (polys.size() == 2 && polys[0].x.size() == polys[1].x.size()) {
        const auto g = detail::widest_gap(polys[0].x, polys[1].x);
        if (g.gap > 0) {
            const auto pa = polys[0].x.prefix_sums(), pb = polys[1].x.prefix_sums();
            const auto i = static_cast<std::size_t>(g.x);
            os << "<line x1=\"" << detail::fixed(px(g.x)) << "\" y1=\"" << detail::fixed(py(pa[i])) << "\" x2=\""
               << detail::fixed(px(g.x)) << "\" y2=\"" << detail::fixed(py(pb[i]))
               << "\" stroke=\"#555\" stroke-dasharray=\"4,3\"/>\n";
            os << "<text x=\"" << detail::fixed(px(g.x) + 6) << "\" y=\""
               << detail::fixed((py(pa[i]) + py(pb[i])) / 2) << "\" font-family=\"monospace\" font-size=\"11\">gap "
               << to_string(g.gap) << " at x=" << g.x << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

inline std::string render_polygon(const std::vector<LabeledPolygon> &polys, const std::string &format)
{
    if (format == "ascii")
        return render_ascii(polys);
    if (format == "svg")
        return render_svg(polys);
    fail(ErrorKind::InvalidParams, "unknown polygon format '" + format + "' (use ascii or svg)");
}

} // namespace isolab

#endif // ISOLAB_RENDER_HPP
