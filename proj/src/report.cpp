#include "geomhh/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include <json.hpp>

namespace geomhh::report {

namespace {

using nlohmann::json;

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json optional_number(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

json record_to_json(const sweep::SweepRecord& r) {
    json j;
    j["check"] = r.check;
    j["side"] = r.side;
    j["a"] = r.a;
    j["b"] = r.b;
    j["s"] = optional_number(r.s);
    j["q"] = optional_number(r.q);
    j["lhs"] = optional_number(r.lhs);
    j["rhs"] = optional_number(r.rhs);
    j["margin"] = r.margin;
    j["case"] = r.region;
    j["pass"] = r.pass;
    j["err_estimate"] = r.err_estimate;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_json(const std::vector<sweep::SweepSpec>& specs,
                    const sweep::SweepResult& result) {
    json doc;
    doc["meta"] = {{"tool", "geomhh"},
                   {"timestamp", iso_timestamp()},
                   {"wall_time_ms", result.summary.wall_time_ms}};
    json spec_list = json::array();
    for (const auto& spec : specs) {
        spec_list.push_back({{"f", spec.function_source},
                             {"params", spec.params},
                             {"a", spec.a_values},
                             {"b", spec.b_values},
                             {"s", spec.s_values},
                             {"q", spec.q_values},
                             {"checks", spec.checks},
                             {"abs_tol", spec.tol.abs_tol},
                             {"rel_tol", spec.tol.rel_tol},
                             {"slack", spec.slack}});
    }
    doc["spec"] = std::move(spec_list);
    json records = json::array();
    for (const auto& r : result.records) records.push_back(record_to_json(r));
    doc["records"] = std::move(records);
    doc["summary"] = {{"total", result.summary.total},
                      {"passed", result.summary.passed},
                      {"failed", result.summary.failed},
                      {"errors", result.summary.errors},
                      {"worst_margin", result.summary.worst_margin}};
    return doc.dump(2) + "\n";
}

std::string to_csv(const sweep::SweepResult& result) {
    std::string out = "check,a,b,s,q,side,lhs,rhs,margin,case,pass,err_estimate\n";
    auto cell = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string();
    };
    for (const auto& r : result.records) {
        out += r.check;
        out += ',';
        out += format_double(r.a);
        out += ',';
        out += format_double(r.b);
        out += ',';
        out += cell(r.s);
        out += ',';
        out += cell(r.q);
        out += ',';
        out += r.side;
        out += ',';
        out += cell(r.lhs);
        out += ',';
        out += cell(r.rhs);
        out += ',';
        out += format_double(r.margin);
        out += ',';
        out += r.region;
        out += ',';
        out += r.pass ? "true" : "false";
        out += ',';
        out += format_double(r.err_estimate);
        out += '\n';
    }
    return out;
}

std::string bound_report_json(const bounds::BoundReport& report, int theorem) {
    json j;
    j["theorem"] = theorem;
    j["a"] = report.a;
    j["b"] = report.b;
    j["s"] = report.s;
    j["q"] = report.q;
    j["trapezoid"] = {{"lhs", report.trap_lhs},
                      {"rhs", report.trap_rhs},
                      {"margin", report.trap_margin()}};
    j["midpoint"] = {{"lhs", report.mid_lhs},
                     {"rhs", report.mid_rhs},
                     {"margin", report.mid_margin()}};
    j["case"] = kernels::to_string(report.region);
    j["theta"] = {report.thetas.theta1, report.thetas.theta2, report.thetas.theta3,
                  report.thetas.theta4};
    j["quad_error"] = report.quad_error;
    return j.dump(2) + "\n";
}

std::string chain_report_json(const bounds::ChainReport& report, double slack) {
    auto terms = report.terms();
    bool ordered = true;
    for (int i = 0; i < 4; ++i)
        ordered &= terms[i + 1] - terms[i] >= -(slack + report.quad_error);
    json j;
    j["terms"] = {{"f_geometric_midpoint", terms[0]},
                  {"symmetrized_integral", terms[1]},
                  {"weighted_log_integral", terms[2]},
                  {"log_mean_of_endpoint_values", terms[3]},
                  {"endpoint_average", terms[4]}};
    j["ordered"] = ordered;
    j["quad_error"] = report.quad_error;
    return j.dump(2) + "\n";
}

std::string verdict_json(const convexity::ConvexityVerdict& verdict, double s) {
    json j;
    j["s"] = s;
    j["holds"] = verdict.holds;
    j["worst_margin"] = verdict.worst_margin;
    if (verdict.witness) {
        j["witness"] = {{"x", verdict.witness->x},
                        {"y", verdict.witness->y},
                        {"t", verdict.witness->t}};
    }
    return j.dump(2) + "\n";
}

std::string error_json(const std::string& type, const std::string& message) {
    json j;
    j["error"] = {{"type", type}, {"message", message}};
    return j.dump(2) + "\n";
}

} // namespace geomhh::report
