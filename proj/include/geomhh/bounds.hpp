#pragma once

#include <array>
#include <optional>
#include <utility>

#include "geomhh/expr.hpp"
#include "geomhh/interval.hpp"
#include "geomhh/kernels.hpp"
#include "geomhh/quadrature.hpp"

namespace geomhh::bounds {

using expr::FunctionHandle;
using kernels::CaseRegion;
using kernels::ThetaSet;
using quadrature::Tolerance;

// Both rows of one bound theorem at a single parameter point. lhs values are
// absolute deviations, so margins rhs - lhs are the quantities that must stay
// non-negative when the theorem's hypotheses hold.
struct BoundReport {
    double trap_lhs = 0.0;
    double trap_rhs = 0.0;
    double mid_lhs = 0.0;
    double mid_rhs = 0.0;
    CaseRegion region = CaseRegion::BothBelowOne;
    ThetaSet thetas{1.0, 1.0, 1.0, 1.0};
    double quad_error = 0.0;
    double a = 0.0, b = 0.0, s = 1.0, q = 1.0;

    double trap_margin() const { return trap_rhs - trap_lhs; }
    double mid_margin() const { return mid_rhs - mid_lhs; }
};

// The five terms of the geometric Hermite-Hadamard chain, expected to be
// non-decreasing for a geometrically convex function.
struct ChainReport {
    double geometric_midpoint_value; // t1 = f(sqrt(ab))
    double symmetrized_integral;     // t2 = weighted log-integral of sqrt(f(x) f(ab/x))
    double weighted_integral;        // t3 = weighted log-integral of f
    double log_mean_of_endpoints;    // t4 = L(f(a), f(b))
    double endpoint_average;         // t5 = (f(a)+f(b))/2
    double quad_error;

    std::array<double, 5> terms() const {
        return {geometric_midpoint_value, symmetrized_integral, weighted_integral,
                log_mean_of_endpoints, endpoint_average};
    }
};

// |lhs - rhs| of the two displayed integral identities.
struct IdentityResidual {
    double midpoint;
    double trapezoid;
    double quad_error;
};

struct HHClassicalReport {
    double midpoint_value;    // f((a+b)/2)
    double average;           // (1/(b-a)) * plain integral
    double endpoint_average;  // (f(a)+f(b))/2
    double quad_error;
};

// Differences between the s=1 theorem right-hand sides and the independently
// coded geometric-convexity formulas built from the alpha/gamma ratios.
struct S1ReductionResiduals {
    double trap_g1;
    double mid_g1;
    std::optional<double> trap_g2; // present when q > 1
    std::optional<double> mid_g2;

    double max() const {
        double m = trap_g1 > mid_g1 ? trap_g1 : mid_g1;
        if (trap_g2 && *trap_g2 > m) m = *trap_g2;
        if (mid_g2 && *mid_g2 > m) m = *mid_g2;
        return m;
    }
};

// (1/ln(b/a)) * integral of f(x)/x over [a,b], evaluated after the
// substitution x = a^(1-t) b^t which removes the weight exactly.
// Returns (value, error estimate); throws ConvergenceError on failure.
std::pair<double, double> weighted_log_integral(const FunctionHandle& f,
                                                const Interval& interval,
                                                const Tolerance& tol = {});

HHClassicalReport hh_classical(const FunctionHandle& f, const Interval& interval,
                               const Tolerance& tol = {});

ChainReport geometric_chain(const FunctionHandle& f, const Interval& interval,
                            const Tolerance& tol = {});

IdentityResidual lemma_identity_residuals(const FunctionHandle& f, const Interval& interval,
                                          const Tolerance& tol = {});

// Trapezoid row: |(f(a)+f(b))/2 - WLI| <= ln(b/a) (1/2)^(2-1/q) H1(theta1,theta2);
// midpoint row: |f(sqrt(ab)) - WLI| <= ln(b/a) (1/2)^(3-1/q) H1(theta3,theta4).
// Requires q >= 1 and s in (0,1]. The caller asserts that |f'|^q is
// s-geometrically convex on the interval.
BoundReport theorem21_bounds(const FunctionHandle& f, const Interval& interval, double s,
                             double q, const Tolerance& tol = {});

// Same rows against (1/2)ln(b/a) Cq H2 and (1/4)ln(b/a) Cq H2 with
// Cq = ((q-1)/(2q-1))^(1-1/q); requires q > 1 strictly.
BoundReport theorem22_bounds(const FunctionHandle& f, const Interval& interval, double s,
                             double q, const Tolerance& tol = {});

S1ReductionResiduals s1_reduction_check(const FunctionHandle& f, const Interval& interval,
                                        double q, const Tolerance& tol = {});

} // namespace geomhh::bounds
