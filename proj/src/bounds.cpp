#include "geomhh/bounds.hpp"

#include <cmath>

#include "geomhh/means.hpp"

namespace geomhh::bounds {

namespace {

using kernels::KernelFunction;

quadrature::QuadratureResult integrate_or_throw(const std::function<double(double)>& f,
                                                double lo, double hi, const Tolerance& tol) {
    auto r = quadrature::integrate(f, lo, hi, tol);
    if (!r.converged)
        throw ConvergenceError("quadrature did not converge within the subdivision budget");
    return r;
}

// x(t) = a^(1-t) b^t through the log parameterization.
double log_blend(double log_a, double log_b, double t) {
    return std::exp((1.0 - t) * log_a + t * log_b);
}

struct EndpointDerivatives {
    double da;
    double db;
};

EndpointDerivatives derivative_magnitudes(const FunctionHandle& f, const Interval& interval) {
    return {std::fabs(f.derivative(interval.a)), std::fabs(f.derivative(interval.b))};
}

void validate_s(double s) {
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("s must lie in (0,1]");
}

// Shared skeleton of the two bound theorems: the lhs rows, the theta/weight
// machinery and the zero-derivative degenerate case. `prefactors` supplies
// (trapezoid, midpoint) multipliers of the H terms and `kernel` the g used.
BoundReport theorem_bounds(const FunctionHandle& f, const Interval& interval, double s,
                           double q, const Tolerance& tol, KernelFunction kernel,
                           double trap_prefactor, double mid_prefactor) {
    BoundReport report;
    report.a = interval.a;
    report.b = interval.b;
    report.s = s;
    report.q = q;

    auto [wli, wli_err] = weighted_log_integral(f, interval, tol);
    report.quad_error = wli_err;
    report.trap_lhs = std::fabs(0.5 * (f.value(interval.a) + f.value(interval.b)) - wli);
    report.mid_lhs = std::fabs(f.value(interval.geometric_midpoint()) - wli);

    auto [da, db] = derivative_magnitudes(f, interval);
    if (da == 0.0 && db == 0.0) {
        // Equal endpoint factors cancel in the theta ratio; the weights vanish,
        // so both right-hand sides collapse to zero.
        double ratio = std::pow(interval.b / interval.a, q);
        report.thetas = ThetaSet{ratio, 1.0 / ratio, std::sqrt(ratio), 1.0 / std::sqrt(ratio)};
        report.region = CaseRegion::BothBelowOne;
        report.trap_rhs = 0.0;
        report.mid_rhs = 0.0;
        return report;
    }
    if (da == 0.0 || db == 0.0)
        throw DomainError("theorem bound undefined: derivative vanishes at one endpoint");

    report.thetas = kernels::theta_set(interval.a, interval.b, da, db, s, q);
    auto [region, weights] = kernels::case_weights(interval.a, interval.b, da, db, s);
    report.region = region;
    report.trap_rhs = trap_prefactor * kernels::h_dispatch(kernel, weights, report.thetas.theta1,
                                                           report.thetas.theta2, q);
    report.mid_rhs = mid_prefactor * kernels::h_dispatch(kernel, weights, report.thetas.theta3,
                                                         report.thetas.theta4, q);
    return report;
}

} // namespace

std::pair<double, double> weighted_log_integral(const FunctionHandle& f,
                                                const Interval& interval,
                                                const Tolerance& tol) {
    const double la = std::log(interval.a);
    const double lb = std::log(interval.b);
    auto r = integrate_or_throw([&](double t) { return f.value(log_blend(la, lb, t)); }, 0.0,
                                1.0, tol);
    return {r.value, r.error_estimate};
}

HHClassicalReport hh_classical(const FunctionHandle& f, const Interval& interval,
                               const Tolerance& tol) {
    auto r = integrate_or_throw([&](double x) { return f.value(x); }, interval.a, interval.b,
                                tol);
    HHClassicalReport report;
    report.midpoint_value = f.value(0.5 * (interval.a + interval.b));
    report.average = r.value / interval.width();
    report.endpoint_average = 0.5 * (f.value(interval.a) + f.value(interval.b));
    report.quad_error = r.error_estimate / interval.width();
    return report;
}

ChainReport geometric_chain(const FunctionHandle& f, const Interval& interval,
                            const Tolerance& tol) {
    const double la = std::log(interval.a);
    const double lb = std::log(interval.b);

    const double fa = f.positive_value(interval.a);
    const double fb = f.positive_value(interval.b);

    // ab/x for x = a^(1-t) b^t is a^t b^(1-t), so the symmetrized integrand
    // stays inside [a,b] by construction.
    auto symm = integrate_or_throw(
        [&](double t) {
            return std::sqrt(f.positive_value(log_blend(la, lb, t)) *
                             f.positive_value(log_blend(lb, la, t)));
        },
        0.0, 1.0, tol);
    auto [wli, wli_err] = weighted_log_integral(f, interval, tol);

    ChainReport report;
    report.geometric_midpoint_value = f.positive_value(interval.geometric_midpoint());
    report.symmetrized_integral = symm.value;
    report.weighted_integral = wli;
    report.log_mean_of_endpoints = means::logarithmic_mean(fa, fb);
    report.endpoint_average = 0.5 * (fa + fb);
    report.quad_error = symm.error_estimate + wli_err;
    return report;
}

IdentityResidual lemma_identity_residuals(const FunctionHandle& f, const Interval& interval,
                                          const Tolerance& tol) {
    const double a = interval.a;
    const double b = interval.b;
    const double la = std::log(a);
    const double lb = std::log(b);
    const double log_ratio = lb - la;
    const double lg = 0.5 * (la + lb); // ln sqrt(ab)

    auto [wli, wli_err] = weighted_log_integral(f, interval, tol);

    // Midpoint identity: the integrands walk from each endpoint to sqrt(ab).
    auto mid_left = integrate_or_throw(
        [&](double t) {
            return t * std::exp(0.5 * t * log_ratio) * f.derivative(log_blend(la, lg, t));
        },
        0.0, 1.0, tol);
    auto mid_right = integrate_or_throw(
        [&](double t) {
            return t * std::exp(-0.5 * t * log_ratio) * f.derivative(log_blend(lb, lg, t));
        },
        0.0, 1.0, tol);
    const double mid_lhs = f.value(interval.geometric_midpoint()) - wli;
    const double mid_rhs = 0.25 * log_ratio * (a * mid_left.value - b * mid_right.value);

    // Trapezoid identity: full endpoint-to-endpoint walks.
    auto trap_left = integrate_or_throw(
        [&](double t) {
            return t * std::exp(t * log_ratio) * f.derivative(log_blend(la, lb, t));
        },
        0.0, 1.0, tol);
    auto trap_right = integrate_or_throw(
        [&](double t) {
            return t * std::exp(-t * log_ratio) * f.derivative(log_blend(lb, la, t));
        },
        0.0, 1.0, tol);
    const double trap_lhs = 0.5 * (f.value(a) + f.value(b)) - wli;
    const double trap_rhs = 0.5 * log_ratio * (a * trap_left.value - b * trap_right.value);

    IdentityResidual residual;
    residual.midpoint = std::fabs(mid_lhs - mid_rhs);
    residual.trapezoid = std::fabs(trap_lhs - trap_rhs);
    residual.quad_error = wli_err + 0.25 * log_ratio *
                                        (a * mid_left.error_estimate + b * mid_right.error_estimate) +
                          0.5 * log_ratio *
                              (a * trap_left.error_estimate + b * trap_right.error_estimate);
    return residual;
}

BoundReport theorem21_bounds(const FunctionHandle& f, const Interval& interval, double s,
                             double q, const Tolerance& tol) {
    validate_s(s);
    if (!(q >= 1.0)) throw DomainError("theorem21_bounds requires q >= 1");
    const double log_ratio = interval.log_ratio();
    return theorem_bounds(f, interval, s, q, tol, KernelFunction::G1,
                          log_ratio * std::pow(0.5, 2.0 - 1.0 / q),
                          log_ratio * std::pow(0.5, 3.0 - 1.0 / q));
}

BoundReport theorem22_bounds(const FunctionHandle& f, const Interval& interval, double s,
                             double q, const Tolerance& tol) {
    validate_s(s);
    if (!(q > 1.0)) throw DomainError("theorem22_bounds requires q > 1");
    const double log_ratio = interval.log_ratio();
    const double holder = std::pow((q - 1.0) / (2.0 * q - 1.0), 1.0 - 1.0 / q);
    return theorem_bounds(f, interval, s, q, tol, KernelFunction::G2,
                          0.5 * log_ratio * holder, 0.25 * log_ratio * holder);
}

S1ReductionResiduals s1_reduction_check(const FunctionHandle& f, const Interval& interval,
                                        double q, const Tolerance& tol) {
    if (!(q >= 1.0)) throw DomainError("s1_reduction_check requires q >= 1");
    const double a = interval.a;
    const double b = interval.b;
    auto [da, db] = derivative_magnitudes(f, interval);
    const double log_ratio = interval.log_ratio();
    const double inv_q = 1.0 / q;

    BoundReport t21 = theorem21_bounds(f, interval, 1.0, q, tol);

    S1ReductionResiduals residuals{0.0, 0.0, std::nullopt, std::nullopt};
    if (da == 0.0 && db == 0.0) {
        residuals.trap_g1 = std::fabs(t21.trap_rhs);
        residuals.mid_g1 = std::fabs(t21.mid_rhs);
        if (q > 1.0) {
            BoundReport t22 = theorem22_bounds(f, interval, 1.0, q, tol);
            residuals.trap_g2 = std::fabs(t22.trap_rhs);
            residuals.mid_g2 = std::fabs(t22.mid_rhs);
        }
        return residuals;
    }

    // Independent route: the geometric-convexity displays written directly
    // from the alpha/gamma ratios.
    auto g1_pair = [&](double u) {
        return a * da * std::pow(kernels::kernel_g(KernelFunction::G1,
                                                   kernels::alpha_ratio(a, b, da, db, u)),
                                 inv_q) +
               b * db * std::pow(kernels::kernel_g(KernelFunction::G1,
                                                   kernels::gamma_ratio(a, b, da, db, u)),
                                 inv_q);
    };
    const double half_pow = std::pow(0.5, 1.0 - inv_q);
    const double trap_rhs_ref = 0.5 * log_ratio * half_pow * g1_pair(q);
    const double mid_rhs_ref = 0.25 * log_ratio * half_pow * g1_pair(0.5 * q);
    residuals.trap_g1 = std::fabs(t21.trap_rhs - trap_rhs_ref);
    residuals.mid_g1 = std::fabs(t21.mid_rhs - mid_rhs_ref);

    if (q > 1.0) {
        BoundReport t22 = theorem22_bounds(f, interval, 1.0, q, tol);
        auto g2_pair = [&](double u) {
            return a * da * std::pow(kernels::kernel_g(KernelFunction::G2,
                                                       kernels::alpha_ratio(a, b, da, db, u)),
                                     inv_q) +
                   b * db * std::pow(kernels::kernel_g(KernelFunction::G2,
                                                       kernels::gamma_ratio(a, b, da, db, u)),
                                     inv_q);
        };
        const double holder = std::pow((q - 1.0) / (2.0 * q - 1.0), 1.0 - inv_q);
        residuals.trap_g2 = std::fabs(t22.trap_rhs - 0.5 * log_ratio * holder * g2_pair(q));
        residuals.mid_g2 = std::fabs(t22.mid_rhs - 0.25 * log_ratio * holder * g2_pair(0.5 * q));
    }
    return residuals;
}

} // namespace geomhh::bounds
