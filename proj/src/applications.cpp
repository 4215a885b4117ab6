#include "geomhh/applications.hpp"

#include <cmath>

#include "geomhh/means.hpp"

namespace geomhh::applications {

namespace {

using means::arithmetic_mean;
using means::geometric_mean;
using means::logarithmic_mean;

void require_region(const bounds::BoundReport& report) {
    // For this family |f'(a)| = a^(s-1) > b^(s-1) = |f'(b)| >= 1 on (0,1],
    // so the dispatch must land in the both-above-one branch.
    if (report.region != kernels::CaseRegion::BothAboveOne)
        throw Error("power family must select the both-above-one case region");
}

} // namespace

PowerFamilySpec::PowerFamilySpec(double s_, double q_, Interval interval_)
    : s(s_), q(q_), interval(interval_) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("power family requires s in (0,1)");
    if (!(q >= 1.0)) throw DomainError("power family requires q >= 1");
    if (!(interval.b <= 1.0))
        throw DomainError("power family requires b <= 1: its convexity class is only "
                          "asserted on (0,1]");
}

expr::FunctionHandle power_family_handle(const PowerFamilySpec& spec) {
    return expr::FunctionHandle("x^s/s", {{"s", spec.s}}, spec.interval);
}

std::pair<PropositionReport, PropositionReport> proposition31(const PowerFamilySpec& spec,
                                                              const Tolerance& tol) {
    const double a = spec.interval.a;
    const double b = spec.interval.b;
    const double s = spec.s;
    const double q = spec.q;
    const double m = (s * s - s + 1.0) * q;

    const double as = std::pow(a, s);
    const double bs = std::pow(b, s);
    const double g = geometric_mean(a, b);
    const double l = logarithmic_mean(a, b);
    const double lm = logarithmic_mean(std::pow(a, m), std::pow(b, m));
    const double lm_half = logarithmic_mean(std::pow(a, 0.5 * m), std::pow(b, 0.5 * m));
    const double sm1_sq = (s - 1.0) * (s - 1.0);

    PropositionReport trap;
    trap.lhs = std::fabs(arithmetic_mean(as, bs) - logarithmic_mean(as, bs));
    trap.rhs_closed_form = s / (2.0 * std::pow(g, 2.0 * sm1_sq)) *
                           std::pow((b - a) / (2.0 * l), 1.0 - 1.0 / q) *
                           std::pow(1.0 / m, 1.0 / q) *
                           (std::pow(std::pow(b, m) - lm, 1.0 / q) +
                            std::pow(lm - std::pow(a, m), 1.0 / q));

    PropositionReport mid;
    mid.lhs = std::fabs(std::pow(g, s) - logarithmic_mean(as, bs));
    mid.rhs_closed_form = s / (2.0 * std::pow(g, sm1_sq)) *
                          std::pow((b - a) / (4.0 * l), 1.0 - 1.0 / q) *
                          std::pow(1.0 / m, 1.0 / q) *
                          (geometric_mean(as, std::pow(b, -sm1_sq)) *
                               std::pow(std::pow(b, 0.5 * m) - lm_half, 1.0 / q) +
                           geometric_mean(bs, std::pow(a, -sm1_sq)) *
                               std::pow(lm_half - std::pow(a, 0.5 * m), 1.0 / q));

    auto handle = power_family_handle(spec);
    bounds::BoundReport report = bounds::theorem21_bounds(handle, spec.interval, s, q, tol);
    require_region(report);
    trap.rhs_via_theorem = s * report.trap_rhs;
    mid.rhs_via_theorem = s * report.mid_rhs;

    trap.margin = trap.rhs_closed_form - trap.lhs;
    mid.margin = mid.rhs_closed_form - mid.lhs;
    trap.equivalence_gap = std::fabs(trap.rhs_closed_form - trap.rhs_via_theorem);
    mid.equivalence_gap = std::fabs(mid.rhs_closed_form - mid.rhs_via_theorem);
    return {trap, mid};
}

std::pair<PropositionReport, PropositionReport> proposition32(const PowerFamilySpec& spec,
                                                              const Tolerance& tol) {
    if (!(spec.q > 1.0)) throw DomainError("proposition 3.2 requires q > 1");
    const double a = spec.interval.a;
    const double b = spec.interval.b;
    const double s = spec.s;
    const double q = spec.q;
    const double m = (s * s - s + 1.0) * q;

    const double as = std::pow(a, s);
    const double bs = std::pow(b, s);
    const double g = geometric_mean(a, b);
    const double l = logarithmic_mean(a, b);
    const double sm1_sq = (s - 1.0) * (s - 1.0);
    const double holder = std::pow((q - 1.0) / (2.0 * q - 1.0), 1.0 - 1.0 / q);

    PropositionReport trap;
    trap.lhs = std::fabs(arithmetic_mean(as, bs) - logarithmic_mean(as, bs));
    trap.rhs_closed_form =
        s * (b - a) / (l * std::pow(g, 2.0 * sm1_sq)) * holder *
        std::pow(logarithmic_mean(std::pow(a, m), std::pow(b, m)), 1.0 / q);

    PropositionReport mid;
    mid.lhs = std::fabs(std::pow(g, s) - logarithmic_mean(as, bs));
    mid.rhs_closed_form =
        s * (b - a) / (2.0 * l * std::pow(g, sm1_sq)) * holder *
        std::pow(logarithmic_mean(std::pow(a, 0.5 * m), std::pow(b, 0.5 * m)), 1.0 / q) *
        arithmetic_mean(geometric_mean(std::pow(a, -sm1_sq), bs),
                        geometric_mean(as, std::pow(b, -sm1_sq)));

    auto handle = power_family_handle(spec);
    bounds::BoundReport report = bounds::theorem22_bounds(handle, spec.interval, s, q, tol);
    require_region(report);
    trap.rhs_via_theorem = s * report.trap_rhs;
    mid.rhs_via_theorem = s * report.mid_rhs;

    trap.margin = trap.rhs_closed_form - trap.lhs;
    mid.margin = mid.rhs_closed_form - mid.lhs;
    trap.equivalence_gap = std::fabs(trap.rhs_closed_form - trap.rhs_via_theorem);
    mid.equivalence_gap = std::fabs(mid.rhs_closed_form - mid.rhs_via_theorem);
    return {trap, mid};
}

} // namespace geomhh::applications
