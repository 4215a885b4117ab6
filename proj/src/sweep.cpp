#include "geomhh/sweep.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "geomhh/applications.hpp"
#include "geomhh/bounds.hpp"
#include "geomhh/convexity.hpp"

namespace geomhh::sweep {

namespace {

struct Point {
    std::string check;
    double a, b;
    std::optional<double> s;
    std::optional<double> q;
};

bool uses_s(const std::string& check) {
    return check == "thm21" || check == "thm22" || check == "prop31" || check == "prop32" ||
           check == "convexity";
}

bool uses_q(const std::string& check) {
    return check == "thm21" || check == "thm22" || check == "prop31" || check == "prop32";
}

std::vector<Point> enumerate_points(const SweepSpec& spec) {
    std::vector<std::pair<double, double>> pairs;
    for (double a : spec.a_values)
        for (double b : spec.b_values)
            if (a < b) pairs.emplace_back(a, b);
    if (pairs.empty()) throw DomainError("interval grid is empty: no pair has a < b");
    if (spec.s_values.empty() || spec.q_values.empty())
        throw DomainError("s and q grids must be non-empty");

    std::vector<Point> points;
    for (const std::string& check : spec.checks) {
        const bool strict_q = (check == "thm22" || check == "prop32");
        const bool family = (check == "prop31" || check == "prop32");
        for (auto [a, b] : pairs) {
            if (!uses_s(check)) {
                points.push_back({check, a, b, std::nullopt, std::nullopt});
                continue;
            }
            for (double s : spec.s_values) {
                if (family && !(s > 0.0 && s < 1.0)) continue;
                if (!uses_q(check)) {
                    points.push_back({check, a, b, s, std::nullopt});
                    continue;
                }
                for (double q : spec.q_values) {
                    if (strict_q && q <= 1.0) continue;
                    points.push_back({check, a, b, s, q});
                }
            }
        }
    }
    return points;
}

// Trees parsed once per sweep; points only rebind parameters.
struct ParsedFunction {
    expr::ExprPtr value;
    expr::ExprPtr derivative;
};

expr::FunctionHandle make_handle(const SweepSpec& spec, const ParsedFunction& parsed,
                                 const Point& p) {
    expr::Bindings bindings = spec.params;
    if (p.s) bindings["s"] = *p.s;
    if (p.q) bindings["q"] = *p.q;
    return expr::FunctionHandle(parsed.value, parsed.derivative, bindings,
                                Interval(p.a, p.b));
}

SweepRecord base_record(const Point& p) {
    SweepRecord r;
    r.check = p.check;
    r.a = p.a;
    r.b = p.b;
    r.s = p.s;
    r.q = p.q;
    return r;
}

void finish(SweepRecord& r, double slack) {
    r.pass = r.error.empty() && r.margin >= -(slack + r.err_estimate);
}

void push_pair_record(std::vector<SweepRecord>& out, const Point& p, const char* side,
                      double lhs, double rhs, double err, double slack,
                      const std::string& region = {}) {
    SweepRecord r = base_record(p);
    r.side = side;
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.err_estimate = err;
    r.region = region;
    finish(r, slack);
    out.push_back(std::move(r));
}

std::vector<SweepRecord> run_point(const SweepSpec& spec, const ParsedFunction& parsed,
                                   const Point& p) {
    std::vector<SweepRecord> out;
    const Interval interval(p.a, p.b);

    if (p.check == "lemma") {
        auto handle = make_handle(spec, parsed, p);
        auto res = bounds::lemma_identity_residuals(handle, interval, spec.tol);
        push_pair_record(out, p, "midpoint", res.midpoint, spec.identity_tol, res.quad_error,
                         spec.slack);
        push_pair_record(out, p, "trapezoid", res.trapezoid, spec.identity_tol, res.quad_error,
                         spec.slack);
    } else if (p.check == "hh") {
        auto handle = make_handle(spec, parsed, p);
        auto res = bounds::hh_classical(handle, interval, spec.tol);
        push_pair_record(out, p, "midpoint_vs_average", res.midpoint_value, res.average,
                         res.quad_error, spec.slack);
        push_pair_record(out, p, "average_vs_endpoints", res.average, res.endpoint_average,
                         res.quad_error, spec.slack);
    } else if (p.check == "chain") {
        auto handle = make_handle(spec, parsed, p);
        auto res = bounds::geometric_chain(handle, interval, spec.tol);
        auto terms = res.terms();
        static const char* sides[4] = {"t1_le_t2", "t2_le_t3", "t3_le_t4", "t4_le_t5"};
        for (int i = 0; i < 4; ++i)
            push_pair_record(out, p, sides[i], terms[i], terms[i + 1], res.quad_error,
                             spec.slack);
    } else if (p.check == "convexity") {
        auto handle = make_handle(spec, parsed, p);
        auto verdict = convexity::check_s_geometric(handle, interval, *p.s, {},
                                                    ExecMode::Serial);
        SweepRecord r = base_record(p);
        r.side = "s_geometric";
        r.margin = verdict.worst_margin;
        r.pass = verdict.holds;
        out.push_back(std::move(r));
    } else if (p.check == "thm21" || p.check == "thm22") {
        auto handle = make_handle(spec, parsed, p);
        auto report = (p.check == "thm21")
                          ? bounds::theorem21_bounds(handle, interval, *p.s, *p.q, spec.tol)
                          : bounds::theorem22_bounds(handle, interval, *p.s, *p.q, spec.tol);
        const std::string region = kernels::to_string(report.region);
        push_pair_record(out, p, "trapezoid", report.trap_lhs, report.trap_rhs,
                         report.quad_error, spec.slack, region);
        push_pair_record(out, p, "midpoint", report.mid_lhs, report.mid_rhs, report.quad_error,
                         spec.slack, region);
    } else if (p.check == "prop31" || p.check == "prop32") {
        applications::PowerFamilySpec family(*p.s, *p.q, interval);
        auto [trap, mid] = (p.check == "prop31") ? applications::proposition31(family, spec.tol)
                                                 : applications::proposition32(family, spec.tol);
        const std::string region = kernels::to_string(kernels::CaseRegion::BothAboveOne);
        push_pair_record(out, p, "trapezoid", trap.lhs, trap.rhs_closed_form, 0.0, spec.slack,
                         region);
        push_pair_record(out, p, "midpoint", mid.lhs, mid.rhs_closed_form, 0.0, spec.slack,
                         region);
        // The closed form and the theorem route are expected to agree; the
        // gap is recorded but the inequality rows above stay authoritative.
        push_pair_record(out, p, "trapezoid_equivalence", trap.equivalence_gap, 1e-9, 0.0,
                         spec.slack, region);
        push_pair_record(out, p, "midpoint_equivalence", mid.equivalence_gap, 1e-9, 0.0,
                         spec.slack, region);
    } else {
        throw DomainError("unknown check '" + p.check + "'");
    }
    return out;
}

} // namespace

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {"lemma",  "hh",    "chain",  "convexity",
                                                   "thm21",  "thm22", "prop31", "prop32"};
    return names;
}

SweepResult run_sweep(const SweepSpec& spec, ExecMode mode) {
    const auto start = std::chrono::steady_clock::now();
    ParsedFunction parsed;
    parsed.value = expr::parse(spec.function_source);
    parsed.derivative = expr::differentiate(parsed.value);
    for (const std::string& check : spec.checks) {
        bool known = false;
        for (const std::string& name : known_checks()) known |= (name == check);
        if (!known) throw DomainError("unknown check '" + check + "'");
    }
    for (double q : spec.q_values)
        if (!(q >= 1.0)) throw DomainError("q grid entries must be >= 1");

    SweepResult result;
    if (spec.checks.empty()) {
        result.summary.worst_margin = std::numeric_limits<double>::infinity();
        return result;
    }

    const std::vector<Point> points = enumerate_points(spec);
    std::vector<std::vector<SweepRecord>> per_point(points.size());
    parallel::fill_indexed(
        per_point,
        [&](std::int64_t i) -> std::vector<SweepRecord> {
            try {
                return run_point(spec, parsed, points[i]);
            } catch (const Error& e) {
                SweepRecord r = base_record(points[i]);
                r.side = "error";
                r.error = e.what();
                r.pass = false;
                return {r};
            }
        },
        mode);

    SweepSummary& summary = result.summary;
    summary.worst_margin = std::numeric_limits<double>::infinity();
    for (auto& batch : per_point) {
        for (SweepRecord& r : batch) {
            ++summary.total;
            if (!r.error.empty()) ++summary.errors;
            else if (r.pass) ++summary.passed;
            else ++summary.failed;
            if (r.error.empty() && r.margin < summary.worst_margin)
                summary.worst_margin = r.margin;
            result.records.push_back(std::move(r));
        }
    }
    summary.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

} // namespace geomhh::sweep
