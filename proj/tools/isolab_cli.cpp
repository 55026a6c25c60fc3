// isolab: command-line front end. Every subcommand reads JSON (file, stdin, or inline)
// and writes one JSON document.

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "isolab/isolab.hpp"

using namespace isolab;
using io::json;

namespace {

struct RunConfig {
    int p = 2;
    int m = 2;
    int prec = kDefaultPrecision;
    std::uint64_t seed = 0;
    int depth = 2;
    int trials = 100;
    int kmax = 20;
    int e = 2;
    int n = 3;
    int level = -1;
    int budget = -1;
    std::string format = "ascii";
    std::string in;
    std::string out;
    bool raw = false;
};

std::string read_input(const std::string &in)
{
    if (in.empty() || in == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    const auto first = in.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (in[first] == '{' || in[first] == '['))
        return in; // inline JSON
    std::ifstream f(in);
    if (!f)
        fail(ErrorKind::InvalidParams, "cannot open input file '" + in + "'");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

json input_json(const RunConfig &cfg) { return io::parse(read_input(cfg.in)); }

/// Accepts {"matrix": M} or M itself.
MatL input_matrix(const FieldCtx &F, const RunConfig &cfg)
{
    const json j = input_json(cfg);
    return io::matrix_from_json(F, j.is_object() && j.contains("matrix") ? j.at("matrix") : j, cfg.prec);
}

json certified(const MatL &b)
{
    const int p = b.precision();
    return p == LaurentSeries::kInfinitePrec ? json("exact") : json(p);
}

json matrix_summary(const MatL &b, int depth)
{
    return {{"matrix", io::matrix_to_json(b)},
            {"signature", io::signature_to_json(hodge_sequence(b, depth))},
            {"newton", io::cochar_to_json(newton_point(b))}};
}

using Handler = std::function<json(const FieldCtx &, const RunConfig &)>;

std::map<std::string, std::pair<std::string, Handler>> commands()
{
    std::map<std::string, std::pair<std::string, Handler>> c;

    c["hodge"] = {"Hodge point of a matrix", [](const FieldCtx &F, const RunConfig &cfg) {
                      const MatL b = input_matrix(F, cfg);
                      return json{{"hodge", io::cochar_to_json(hodge_point(b))}, {"certified_prec", certified(b)}};
                  }};
    c["newton"] = {"Newton point of a matrix", [](const FieldCtx &F, const RunConfig &cfg) {
                       const MatL b = input_matrix(F, cfg);
                       return json{{"newton", io::cochar_to_json(newton_point(b))}, {"certified_prec", certified(b)}};
                   }};
    c["signature"] = {"Hodge points of (b sigma)^k for k = 1..depth", [](const FieldCtx &F, const RunConfig &cfg) {
                          const MatL b = input_matrix(F, cfg);
                          return json{{"depth", cfg.depth},
                                      {"signature", io::signature_to_json(hodge_sequence(b, cfg.depth))},
                                      {"certified_prec", certified(b)}};
                      }};
    c["scan"] = {"Sample a refined Hodge stratum and tally Newton points", [](const FieldCtx &F, const RunConfig &cfg) {
                     const json j = input_json(cfg);
                     const auto sig = io::signature_from_json(j.is_object() ? j.at("signature") : j);
                     return json{{"seed", cfg.seed},
                                 {"trials", cfg.trials},
                                 {"scan", io::scan_to_json(stratum_scan(F, sig, cfg.trials, cfg.seed, cfg.budget))}};
                 }};
    c["minimal"] = {"Minimal element of a Newton point", [](const FieldCtx &F, const RunConfig &cfg) {
                        const json j = input_json(cfg);
                        const Cocharacter nu = io::cochar_from_json(j.is_object() ? j.at("newton") : j);
                        const MatL b = minimal_element(F, nu);
                        return json{{"newton", io::cochar_to_json(nu)},
                                    {"matrix", io::matrix_to_json(b)},
                                    {"hodge", io::cochar_to_json(hodge_point(b))}};
                    }};
    c["decency"] = {"Check the decency equation (b sigma)^s = s nu(pi)", [](const FieldCtx &F, const RunConfig &cfg) {
                        const json j = input_json(cfg);
                        const MatL b = io::matrix_from_json(F, j.is_object() && j.contains("matrix") ? j.at("matrix") : j,
                                                            cfg.prec);
                        int s = j.is_object() && j.contains("s") ? j.at("s").get<int>() : 0;
                        if (s <= 0)
                            s = static_cast<int>(newton_point(b).denominator_lcm());
                        return json{{"s", s}, {"decent", decency_check(b, s)}};
                    }};
    c["gl2-recover"] = {"Newton point of a GL2 signature (mu1, mu2)", [](const FieldCtx &, const RunConfig &cfg) {
                            const json j = input_json(cfg);
                            Cocharacter mu1, mu2;
                            if (j.is_array() && j.size() == 2) {
                                mu1 = io::cochar_from_json(j[0]);
                                mu2 = io::cochar_from_json(j[1]);
                            } else {
                                mu1 = io::cochar_from_json(j.at("mu1"));
                                mu2 = io::cochar_from_json(j.at("mu2"));
                            }
                            return json{{"mu1", io::cochar_to_json(mu1)},
                                        {"mu2", io::cochar_to_json(mu2)},
                                        {"newton", io::cochar_to_json(gl2_recover(mu1, mu2))}};
                        }};
    c["counterexample"] = {"The SL_n pair b1, b2", [](const FieldCtx &F, const RunConfig &cfg) {
                               const auto [b1, b2] = sln_counterexample(F, cfg.n);
                               return json{{"n", cfg.n}, {"b1", matrix_summary(b1, cfg.n)}, {"b2", matrix_summary(b2, cfg.n)}};
                           }};
    c["congruence"] = {"Signature stability under b -> b g with g = 1 mod pi^level",
                       [](const FieldCtx &F, const RunConfig &cfg) {
                           const MatL b = input_matrix(F, cfg);
                           const int level = cfg.level >= 0 ? cfg.level : congruence_level(hodge_sequence(b, cfg.depth));
                           return io::congruence_to_json(congruence_stability(b, level, cfg.depth, cfg.trials, cfg.seed));
                       }};
    c["converge"] = {"Normalized Hodge points mu((b sigma)^k)/k against nu(b)", [](const FieldCtx &F, const RunConfig &cfg) {
                         return json{{"kmax", cfg.kmax}, {"trace", io::trace_to_json(convergence_trace(input_matrix(F, cfg), cfg.kmax))}};
                     }};
    c["basechange"] = {"Hodge and Newton points after pi -> varpi^e", [](const FieldCtx &F, const RunConfig &cfg) {
                           return io::basechange_to_json(base_change_check(input_matrix(F, cfg), cfg.e));
                       }};
    c["go-type"] = {"Type of a tuple (b_0, ..., b_{g-1})", [](const FieldCtx &F, const RunConfig &cfg) {
                        const ResElement b = io::res_from_json(F, input_json(cfg), cfg.prec);
                        const GOType t = go_type(b);
                        return json{{"type", io::gotype_to_json(t)},
                                    {"newton", io::cochar_to_json(res_newton(b))},
                                    {"beta", io::cochar_to_json(go_beta(t))}};
                    }};
    c["go-lambda"] = {"lambda(tau) and beta_tau", [](const FieldCtx &, const RunConfig &cfg) {
                          const GOType t = io::gotype_from_json(input_json(cfg));
                          return json{{"type", io::gotype_to_json(t)},
                                      {"lambda", io::rational_to_json(go_lambda(t))},
                                      {"beta", io::cochar_to_json(go_beta(t))}};
                      }};
    c["go-generic"] = {"The tuple A_tau with seeded generic coefficients", [](const FieldCtx &F, const RunConfig &cfg) {
                           const GOType t = io::gotype_from_json(input_json(cfg));
                           const ResElement a = go_generic_matrix(F, t, cfg.seed);
                           return json{{"element", io::res_to_json(a)},
                                       {"type", io::gotype_to_json(go_type(a))},
                                       {"newton", io::cochar_to_json(res_newton(a))},
                                       {"beta", io::cochar_to_json(go_beta(t))}};
                       }};
    c["ag-display"] = {"Display matrix ((T^m, c T^i), (T^j, 0))", [](const FieldCtx &F, const RunConfig &cfg) {
                           const DisplayParams d = io::display_from_json(F, input_json(cfg), cfg.prec);
                           const MatL f = ag_display(d);
                           return json{{"params", io::display_to_json(d)},
                                       {"matrix", io::matrix_to_json(f)},
                                       {"hodge", io::cochar_to_json(hodge_point(f))}};
                       }};
    c["ag-invariants"] = {"Invariants (j, n) of a display matrix", [](const FieldCtx &F, const RunConfig &cfg) {
                              const json j = input_json(cfg);
                              const MatL f = j.is_object() && j.contains("i") ? ag_display(io::display_from_json(F, j, cfg.prec))
                                                                              : io::matrix_from_json(F, j.is_object() && j.contains("matrix") ? j.at("matrix") : j, cfg.prec);
                              const AGInvariants inv = ag_invariants(f);
                              const int g = determinant(f).val();
                              const Rational lambda = ag_lambda(inv.n, g);
                              return json{{"j", inv.j},
                                          {"n", inv.n},
                                          {"g", g},
                                          {"lambda", io::rational_to_json(lambda)},
                                          {"newton_over_g", io::cochar_to_json(newton_point(f).scaled(Rational(1, g)))}};
                          }};
    c["polygon"] = {"Draw one or more concave polygons", [](const FieldCtx &F, const RunConfig &cfg) {
                        const json j = input_json(cfg);
                        std::vector<LabeledPolygon> polys;
                        if (j.is_object() && j.contains("matrix")) {
                            const MatL b = io::matrix_from_json(F, j.at("matrix"), cfg.prec);
                            polys.push_back({"mu", hodge_point(b)});
                            polys.push_back({"nu", newton_point(b)});
                        } else if (j.is_object() && j.contains("polygons")) {
                            for (const auto &p : j.at("polygons"))
                                polys.push_back({p.value("label", std::string("x")), io::cochar_from_json(p.at("slopes"))});
                        } else if (j.is_array() && !j.empty() && j[0].is_array()) {
                            for (std::size_t k = 0; k < j.size(); ++k)
                                polys.push_back({"x" + std::to_string(k), io::cochar_from_json(j[k])});
                        } else {
                            polys.push_back({"x", io::cochar_from_json(j)});
                        }
                        json verts = json::array();
                        for (const auto &p : polys) {
                            json v = json::array();
                            for (const auto &[x, y] : polygon(p.x).vertices)
                                v.push_back({x, io::rational_to_json(y)});
                            verts.push_back({{"label", p.label}, {"slopes", io::cochar_to_json(p.x)}, {"vertices", v}});
                        }
                        return json{{"format", cfg.format}, {"polygons", verts}, {"render", render_polygon(polys, cfg.format)}};
                    }};
    return c;
}

void emit(const RunConfig &cfg, const json &doc, const std::string &raw_text = {})
{
    const std::string text = raw_text.empty() ? doc.dump(2) + "\n" : raw_text;
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f)
        fail(ErrorKind::InvalidParams, "cannot write '" + cfg.out + "'");
    f << text;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"isolab: Hodge and Newton points of isocrystals over F_q((pi))"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--p", cfg.p, "characteristic")->envname("ISOLAB_P");
    app.add_option("--m", cfg.m, "degree of the coefficient field over F_p")->envname("ISOLAB_M");
    app.add_option("--prec", cfg.prec, "precision for inexact input series")->envname("ISOLAB_PREC")->check(CLI::Range(8, 1 << 20));
    app.add_option("--seed", cfg.seed, "seed for every random choice")->envname("ISOLAB_SEED");
    app.add_option("--depth", cfg.depth, "signature depth")->envname("ISOLAB_DEPTH")->check(CLI::PositiveNumber);
    app.add_option("--trials", cfg.trials, "number of trials / accepted samples")->envname("ISOLAB_TRIALS");
    app.add_option("--kmax", cfg.kmax, "largest power in convergence traces")->envname("ISOLAB_KMAX")->check(CLI::PositiveNumber);
    app.add_option("--e", cfg.e, "ramification index for base change")->envname("ISOLAB_E")->check(CLI::PositiveNumber);
    app.add_option("--n", cfg.n, "size for the SL_n counterexample")->envname("ISOLAB_N");
    app.add_option("--level", cfg.level, "congruence level (default: slope spread + 1)")->envname("ISOLAB_LEVEL");
    app.add_option("--budget", cfg.budget, "maximum sampling attempts for scan")->envname("ISOLAB_BUDGET");
    app.add_option("--format", cfg.format, "polygon format")->envname("ISOLAB_FORMAT")->check(CLI::IsMember({"ascii", "svg"}));
    app.add_option("--in", cfg.in, "input: file path, inline JSON, or - for stdin")->envname("ISOLAB_IN");
    app.add_option("--out", cfg.out, "output file (default stdout)")->envname("ISOLAB_OUT");
    app.add_flag("--raw", cfg.raw, "polygon: print the drawing instead of JSON");

    const auto table = commands();
    std::string chosen;
    for (const auto &[name, entry] : table) {
        auto *sub = app.add_subcommand(name, entry.first);
        sub->fallthrough();
        sub->callback([&chosen, name = name] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        const FieldCtx &F = field_make(cfg.p, cfg.m);
        json doc = table.at(chosen).second(F, cfg);
        doc["schema"] = io::kSchema;
        doc["command"] = chosen;
        doc["field"] = io::field_to_json(F);
        if (cfg.raw && chosen == "polygon")
            emit(cfg, doc, doc.at("render").get<std::string>());
        else
            emit(cfg, doc);
        return 0;
    } catch (const PrecisionError &e) {
        const int retry = std::max(e.suggested_precision(), 2 * cfg.prec);
        json doc = {{"schema", io::kSchema},
                    {"command", chosen},
                    {"error", {{"kind", "InsufficientPrecision"}, {"message", e.what()}, {"retry_prec", retry}}}};
        std::cout << doc.dump(2) << "\n";
        std::cerr << "isolab: " << e.what() << " (retry with --prec " << retry << ")\n";
        return 2;
    } catch (const Error &e) {
        json doc = {{"schema", io::kSchema},
                    {"command", chosen},
                    {"error", {{"kind", std::string(error_kind_name(e.kind()))}, {"message", e.what()}}}};
        std::cout << doc.dump(2) << "\n";
        std::cerr << "isolab: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        json doc = {{"schema", io::kSchema}, {"command", chosen}, {"error", {{"kind", "Failure"}, {"message", e.what()}}}};
        std::cout << doc.dump(2) << "\n";
        std::cerr << "isolab: " << e.what() << "\n";
        return 1;
    }
}
