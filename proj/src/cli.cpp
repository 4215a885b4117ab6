#include "geomhh/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "geomhh/applications.hpp"
#include "geomhh/bounds.hpp"
#include "geomhh/convexity.hpp"
#include "geomhh/means.hpp"
#include "geomhh/report.hpp"
#include "geomhh/sweep.hpp"

namespace geomhh::cli {

namespace {

using quadrature::Tolerance;
using sweep::SweepResult;
using sweep::SweepSpec;

Tolerance default_tolerance() {
    Tolerance tol;
    if (const char* env = std::getenv("GEOCONVEX_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0.0) {
            tol.abs_tol = v;
            tol.rel_tol = v;
        }
    }
    return tol;
}

expr::Bindings parse_params(const std::vector<std::string>& kv_pairs) {
    expr::Bindings bindings;
    for (const std::string& kv : kv_pairs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw CLI::ValidationError("--param expects name=value, got '" + kv + "'");
        char* end = nullptr;
        const std::string value = kv.substr(eq + 1);
        double v = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0')
            throw CLI::ValidationError("--param value is not a number in '" + kv + "'");
        bindings[kv.substr(0, eq)] = v;
    }
    return bindings;
}

void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error("cannot open output file '" + out_path + "'");
    file << text;
}

// The built-in verify suite: the power family against every bound, the
// x^((s-1)q) derivative family through the convexity checker, and two classic
// convex functions exercising the remaining checks.
std::vector<SweepSpec> builtin_suite(const Tolerance& tol) {
    std::vector<SweepSpec> specs;

    SweepSpec family;
    family.function_source = "x^s/s";
    family.params = {{"s", 0.5}}; // binding for the s-free checks; per-point s overrides
    family.a_values = {0.25, 0.5, 0.75};
    family.b_values = {0.5, 0.75, 1.0};
    family.s_values = {0.1, 0.3, 0.5, 0.7, 0.9};
    family.q_values = {1.0, 1.5, 2.0, 4.0, 5.0};
    family.checks = {"lemma", "chain", "thm21", "thm22", "prop31", "prop32"};
    family.tol = tol;
    specs.push_back(family);

    SweepSpec derivative_family;
    derivative_family.function_source = "x^((s-1)*q)";
    derivative_family.params = {{"q", 2.0}};
    derivative_family.a_values = family.a_values;
    derivative_family.b_values = family.b_values;
    derivative_family.s_values = family.s_values;
    derivative_family.checks = {"convexity"};
    derivative_family.tol = tol;
    specs.push_back(derivative_family);

    SweepSpec exponential;
    exponential.function_source = "exp(x)";
    exponential.a_values = {0.5, 1.0};
    exponential.b_values = {2.0, 3.0};
    exponential.s_values = {0.5, 1.0};
    exponential.q_values = {1.0, 2.0};
    exponential.checks = {"lemma", "hh", "chain", "convexity", "thm21", "thm22"};
    exponential.tol = tol;
    specs.push_back(exponential);

    SweepSpec square;
    square.function_source = "x^2";
    square.a_values = {0.5, 1.0};
    square.b_values = {2.0, 4.0};
    square.s_values = {1.0};
    square.q_values = {1.0, 2.0};
    square.checks = {"lemma", "hh", "chain", "convexity", "thm21", "thm22"};
    square.tol = tol;
    specs.push_back(square);

    return specs;
}

SweepSpec spec_from_json(const std::string& path, const Tolerance& fallback_tol) {
    std::ifstream file(path);
    if (!file) throw CLI::ValidationError("cannot read spec file '" + path + "'");
    nlohmann::json j;
    try {
        file >> j;
    } catch (const nlohmann::json::exception& e) {
        throw CLI::ValidationError(std::string("malformed spec JSON: ") + e.what());
    }
    SweepSpec spec;
    spec.tol = fallback_tol;
    if (j.contains("f")) spec.function_source = j["f"].get<std::string>();
    if (j.contains("params"))
        spec.params = j["params"].get<std::map<std::string, double>>();
    if (j.contains("a")) spec.a_values = j["a"].get<std::vector<double>>();
    if (j.contains("b")) spec.b_values = j["b"].get<std::vector<double>>();
    if (j.contains("s")) spec.s_values = j["s"].get<std::vector<double>>();
    if (j.contains("q")) spec.q_values = j["q"].get<std::vector<double>>();
    if (j.contains("checks")) spec.checks = j["checks"].get<std::vector<std::string>>();
    if (j.contains("abs_tol")) spec.tol.abs_tol = j["abs_tol"].get<double>();
    if (j.contains("rel_tol")) spec.tol.rel_tol = j["rel_tol"].get<double>();
    if (j.contains("slack")) spec.slack = j["slack"].get<double>();
    if (j.contains("identity_tol")) spec.identity_tol = j["identity_tol"].get<double>();
    return spec;
}

int exit_code_for(const SweepResult& result) {
    if (result.summary.errors > 0) return kExitNumerical;
    if (result.summary.failed > 0) return kExitViolation;
    return kExitPass;
}

SweepResult run_specs(const std::vector<SweepSpec>& specs, parallel::ExecMode mode) {
    SweepResult merged;
    merged.summary.worst_margin = std::numeric_limits<double>::infinity();
    for (const SweepSpec& spec : specs) {
        SweepResult r = sweep::run_sweep(spec, mode);
        for (auto& rec : r.records) merged.records.push_back(std::move(rec));
        merged.summary.total += r.summary.total;
        merged.summary.passed += r.summary.passed;
        merged.summary.failed += r.summary.failed;
        merged.summary.errors += r.summary.errors;
        if (r.summary.worst_margin < merged.summary.worst_margin)
            merged.summary.worst_margin = r.summary.worst_margin;
        merged.summary.wall_time_ms += r.summary.wall_time_ms;
    }
    return merged;
}

struct CommonFlags {
    std::string function;
    std::vector<std::string> params;
    std::string out_path;
};

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical verification of Hermite-Hadamard type bounds for "
                 "s-geometrically convex functions"};
    app.require_subcommand(1);

    Tolerance tol = default_tolerance();

    // bound: one theorem evaluation at a single parameter point
    auto* bound_cmd = app.add_subcommand("bound", "Evaluate one bound theorem at a point");
    CommonFlags bound_flags;
    double bound_a = 0.0, bound_b = 0.0, bound_s = -1.0, bound_q = 1.0;
    int bound_theorem = 21;
    bound_cmd->add_option("--f", bound_flags.function, "expression for f(x)")->required();
    bound_cmd->add_option("--param", bound_flags.params, "parameter binding name=value");
    bound_cmd->add_option("--a", bound_a, "left endpoint")->required();
    bound_cmd->add_option("--b", bound_b, "right endpoint")->required();
    bound_cmd->add_option("--s", bound_s, "convexity order s in (0,1] (default: binding of s, else 1)");
    bound_cmd->add_option("--q", bound_q, "integrability exponent q");
    bound_cmd->add_option("--theorem", bound_theorem, "which theorem, 21 or 22")
        ->check(CLI::IsMember({21, 22}));
    bound_cmd->add_option("--out", bound_flags.out_path, "write the report to a file");
    bool bound_precheck = false;
    bound_cmd->add_flag("--precheck", bound_precheck,
                        "grid-check that |f'|^q is s-geometrically convex first (warns only)");

    // verify: sweep a grid of checks
    auto* verify_cmd = app.add_subcommand("verify", "Run a verification sweep");
    CommonFlags verify_flags;
    std::string spec_path, format = "json";
    std::vector<double> verify_a, verify_b, verify_s, verify_q;
    std::vector<std::string> verify_checks;
    double verify_slack = -1.0;
    bool serial = false;
    verify_cmd->add_option("--spec", spec_path, "sweep spec JSON file");
    verify_cmd->add_option("--f", verify_flags.function, "expression for f(x)");
    verify_cmd->add_option("--param", verify_flags.params, "parameter binding name=value");
    verify_cmd->add_option("--a", verify_a, "a-grid")->delimiter(',');
    verify_cmd->add_option("--b", verify_b, "b-grid")->delimiter(',');
    verify_cmd->add_option("--s", verify_s, "s-grid")->delimiter(',');
    verify_cmd->add_option("--q", verify_q, "q-grid")->delimiter(',');
    verify_cmd->add_option("--checks", verify_checks, "checks to run")->delimiter(',');
    verify_cmd->add_option("--out", verify_flags.out_path, "output file (default stdout)");
    verify_cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    verify_cmd->add_option("--slack", verify_slack, "pass/fail slack override");
    double verify_abs_tol = -1.0, verify_rel_tol = -1.0;
    verify_cmd->add_option("--abs-tol", verify_abs_tol, "quadrature absolute tolerance");
    verify_cmd->add_option("--rel-tol", verify_rel_tol, "quadrature relative tolerance");
    verify_cmd->add_flag("--serial", serial, "run the serial reference path");

    // means: evaluate one special mean
    auto* means_cmd = app.add_subcommand("means", "Evaluate a special mean");
    std::string mean_kind;
    double mean_a = 0.0, mean_b = 0.0, mean_p = 1.0;
    bool mean_p_set = false;
    means_cmd->add_option("--kind", mean_kind, "A, G, L or Lp")
        ->required()
        ->check(CLI::IsMember({"A", "G", "L", "Lp"}));
    means_cmd->add_option("--a", mean_a, "first argument")->required();
    means_cmd->add_option("--b", mean_b, "second argument")->required();
    means_cmd->add_option("--p", mean_p, "exponent for Lp")->each([&](const std::string&) {
        mean_p_set = true;
    });

    // chain: the geometric Hermite-Hadamard chain for one function
    auto* chain_cmd = app.add_subcommand("chain", "Evaluate the geometric mean-value chain");
    CommonFlags chain_flags;
    double chain_a = 0.0, chain_b = 0.0;
    chain_cmd->add_option("--f", chain_flags.function, "expression for f(x)")->required();
    chain_cmd->add_option("--param", chain_flags.params, "parameter binding name=value");
    chain_cmd->add_option("--a", chain_a, "left endpoint")->required();
    chain_cmd->add_option("--b", chain_b, "right endpoint")->required();
    chain_cmd->add_option("--out", chain_flags.out_path, "write the report to a file");

    // props: the special-means propositions over grids
    auto* props_cmd = app.add_subcommand("props", "Check a special-means proposition");
    int prop_number = 31;
    std::vector<double> prop_a{0.25, 0.5, 0.75}, prop_b{0.5, 0.75, 1.0};
    std::vector<double> prop_s{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}, prop_q;
    std::string prop_out, prop_format = "json";
    props_cmd->add_option("--prop", prop_number, "31 or 32")
        ->required()
        ->check(CLI::IsMember({31, 32}));
    props_cmd->add_option("--a", prop_a, "a-grid")->delimiter(',');
    props_cmd->add_option("--b", prop_b, "b-grid")->delimiter(',');
    props_cmd->add_option("--s", prop_s, "s-grid")->delimiter(',');
    props_cmd->add_option("--q", prop_q, "q-grid")->delimiter(',');
    props_cmd->add_option("--out", prop_out, "output file (default stdout)");
    props_cmd->add_option("--format", prop_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // convexity: classify one function
    auto* convexity_cmd = app.add_subcommand("convexity", "Run a convexity check");
    CommonFlags convexity_flags;
    double convexity_a = 0.0, convexity_b = 0.0, convexity_s = -1.0;
    int grid_points = 17;
    bool second_sense = false;
    convexity_cmd->add_option("--f", convexity_flags.function, "expression for f(x)")
        ->required();
    convexity_cmd->add_option("--param", convexity_flags.params, "parameter binding name=value");
    convexity_cmd->add_option("--a", convexity_a, "left endpoint")->required();
    convexity_cmd->add_option("--b", convexity_b, "right endpoint")->required();
    convexity_cmd->add_option("--s", convexity_s,
                              "convexity order s in (0,1] (default: binding of s, else 1)");
    convexity_cmd->add_option("--points", grid_points, "grid points per axis");
    convexity_cmd->add_flag("--second-sense", second_sense,
                            "check s-convexity in the second sense instead");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("geomhh");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help() << "\n";
            return kExitPass;
        } catch (const CLI::ParseError& e) {
            err << e.what() << "\n";
            out << report::error_json("usage", e.what());
            return kExitUsage;
        }

        if (*bound_cmd) {
            expr::Bindings bindings = parse_params(bound_flags.params);
            double s = bound_s;
            if (s < 0.0) s = bindings.count("s") ? bindings.at("s") : 1.0;
            bindings["s"] = s;
            bindings["q"] = bound_q;
            expr::FunctionHandle f(bound_flags.function, bindings, Interval(bound_a, bound_b));
            if (bound_precheck) {
                // The theorems assume |f'|^q is s-geometrically convex; a false
                // assumption voids the bound, not the arithmetic, so only warn.
                using expr::NodeKind;
                auto dpow = expr::make_binary(NodeKind::Pow,
                                              expr::make_unary(NodeKind::Abs, f.derivative_expr()),
                                              expr::make_number(bound_q));
                expr::FunctionHandle dq(dpow, expr::differentiate(dpow), bindings,
                                        Interval(bound_a, bound_b));
                auto verdict = convexity::check_s_geometric(dq, Interval(bound_a, bound_b), s);
                if (!verdict.holds)
                    err << "warning: |f'|^q does not look s-geometrically convex on [a,b] "
                           "(worst margin "
                        << report::format_double(verdict.worst_margin)
                        << "); the bound below is not guaranteed\n";
            }
            bounds::BoundReport report =
                (bound_theorem == 21)
                    ? bounds::theorem21_bounds(f, Interval(bound_a, bound_b), s, bound_q, tol)
                    : bounds::theorem22_bounds(f, Interval(bound_a, bound_b), s, bound_q, tol);
            write_output(report::bound_report_json(report, bound_theorem),
                         bound_flags.out_path, out);
            const double slack = 1e-12 + report.quad_error;
            return (report.trap_margin() >= -slack && report.mid_margin() >= -slack)
                       ? kExitPass
                       : kExitViolation;
        }

        if (*verify_cmd) {
            const auto mode = serial ? parallel::ExecMode::Serial : parallel::ExecMode::Auto;
            const bool inline_given = !verify_flags.function.empty() ||
                                      !verify_checks.empty() || !verify_a.empty() ||
                                      !verify_b.empty() || !verify_s.empty() ||
                                      !verify_q.empty();
            std::vector<SweepSpec> specs;
            if (!spec_path.empty()) {
                specs.push_back(spec_from_json(spec_path, tol));
            } else if (inline_given) {
                SweepSpec spec;
                spec.tol = tol;
                specs.push_back(std::move(spec));
            } else {
                specs = builtin_suite(tol);
            }
            if (specs.size() == 1) {
                // Flags fill in (or override) the single spec; the built-in
                // multi-spec suite is not flag-adjustable.
                SweepSpec& spec = specs.front();
                if (!verify_flags.function.empty()) spec.function_source = verify_flags.function;
                if (!verify_checks.empty()) spec.checks = verify_checks;
                if (!verify_a.empty()) spec.a_values = verify_a;
                if (!verify_b.empty()) spec.b_values = verify_b;
                if (!verify_s.empty()) spec.s_values = verify_s;
                if (!verify_q.empty()) spec.q_values = verify_q;
            }
            for (SweepSpec& spec : specs) {
                if (verify_slack >= 0.0) spec.slack = verify_slack;
                if (verify_abs_tol > 0.0) spec.tol.abs_tol = verify_abs_tol;
                if (verify_rel_tol > 0.0) spec.tol.rel_tol = verify_rel_tol;
                if (!verify_flags.params.empty()) {
                    for (auto& [k, v] : parse_params(verify_flags.params)) spec.params[k] = v;
                }
                if (spec.a_values.empty() || spec.b_values.empty())
                    throw CLI::ValidationError(
                        "verify needs an interval grid: pass --a and --b (or a spec file)");
            }
            SweepResult result = run_specs(specs, mode);
            write_output(format == "csv" ? report::to_csv(result)
                                         : report::to_json(specs, result),
                         verify_flags.out_path, out);
            return exit_code_for(result);
        }

        if (*means_cmd) {
            means::MeanKind kind = means::MeanKind::arithmetic();
            if (mean_kind == "G") kind = means::MeanKind::geometric();
            else if (mean_kind == "L") kind = means::MeanKind::logarithmic();
            else if (mean_kind == "Lp") {
                if (!mean_p_set) throw CLI::ValidationError("--kind Lp requires --p");
                kind = means::MeanKind::p_logarithmic(mean_p);
            }
            out << report::format_double(means::mean(kind, mean_a, mean_b)) << "\n";
            return kExitPass;
        }

        if (*chain_cmd) {
            expr::Bindings bindings = parse_params(chain_flags.params);
            Interval interval(chain_a, chain_b);
            expr::FunctionHandle f(chain_flags.function, bindings, interval);
            bounds::ChainReport report = bounds::geometric_chain(f, interval, tol);
            write_output(report::chain_report_json(report, 1e-12), chain_flags.out_path, out);
            auto terms = report.terms();
            for (int i = 0; i < 4; ++i)
                if (terms[i + 1] - terms[i] < -(1e-12 + report.quad_error))
                    return kExitViolation;
            return kExitPass;
        }

        if (*props_cmd) {
            SweepSpec spec;
            spec.tol = tol;
            spec.a_values = prop_a;
            spec.b_values = prop_b;
            spec.s_values = prop_s;
            spec.q_values = !prop_q.empty() ? prop_q
                            : (prop_number == 31) ? std::vector<double>{1.0, 2.0, 5.0}
                                                  : std::vector<double>{1.5, 2.0, 4.0};
            spec.checks = {prop_number == 31 ? "prop31" : "prop32"};
            SweepResult result = sweep::run_sweep(spec);
            write_output(prop_format == "csv" ? report::to_csv(result)
                                              : report::to_json({spec}, result),
                         prop_out, out);
            return exit_code_for(result);
        }

        if (*convexity_cmd) {
            expr::Bindings bindings = parse_params(convexity_flags.params);
            if (convexity_s < 0.0)
                convexity_s = bindings.count("s") ? bindings.at("s") : 1.0;
            bindings["s"] = convexity_s;
            Interval interval(convexity_a, convexity_b);
            expr::FunctionHandle f(convexity_flags.function, bindings, interval);
            convexity::SampleGrid grid;
            grid.points_per_axis = grid_points;
            auto verdict =
                second_sense
                    ? convexity::check_s_convex_second_sense(f, interval, convexity_s, grid)
                    : convexity::check_s_geometric(f, interval, convexity_s, grid);
            out << report::verdict_json(verdict, convexity_s);
            return verdict.holds ? kExitPass : kExitViolation;
        }

        err << "no subcommand selected\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        out << report::error_json("usage", e.what());
        return kExitUsage;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        out << report::error_json("parse", e.what());
        return kExitUsage;
    } catch (const Error& e) {
        err << e.what() << "\n";
        out << report::error_json("numerical", e.what());
        return kExitNumerical;
    }
}

} // namespace geomhh::cli
