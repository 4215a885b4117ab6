#pragma once

#include <utility>

#include "geomhh/errors.hpp"

namespace geomhh::kernels {

// G1 is the closed form of the weighted moment integral over [0,1] of t*u^t
// (value 1/2 at u=1); G2 the same for u^t (value 1 at u=1).
enum class KernelFunction { G1, G2 };

// Derivative-ratio parameters driving both bound kernels; theta2 is the
// reciprocal of theta1, theta3/theta4 their square roots.
struct ThetaSet {
    double theta1;
    double theta2;
    double theta3;
    double theta4;
};

// Which branch of the endpoint-derivative dispatch applies, keyed by the
// positions of |f'(a)| and |f'(b)| relative to 1.
enum class CaseRegion { BothBelowOne, BothAboveOne, ABelowBAbove, BBelowAAbove };

struct WeightPair {
    double wa;
    double wb;
};

// Symbols of the two-sided exponent comparison mu^(alpha^s) <= mu^(alpha*s),
// eta^(alpha^s) <= eta^(alpha*s+1-s).
struct TwoSidedBase {
    double mu;    // (0, 1]
    double eta;   // [1, inf)
    double alpha; // (0, 1]
    double s;     // (0, 1]
};

// Evaluates the selected kernel at u > 0. Switches to a short series about
// u=1 inside |u-1| < 1e-4 to avoid 0/0 cancellation.
double kernel_g(KernelFunction kind, double u);

// theta1 = (b*db^s / (a*da^s))^q and its reciprocal/square-root companions,
// computed in log space to survive large q. Requires a < b and da, db > 0.
ThetaSet theta_set(double a, double b, double da, double db, double s, double q);

// Same set from the endpoint log-factors ln(a*da^s) and ln(b*db^s).
// Exchanging the two factors swaps theta1/theta2 and theta3/theta4 exactly.
ThetaSet theta_set_from_log_factors(double log_factor_a, double log_factor_b, double q);

// Branch selection plus the branch's endpoint coefficients. Ties at
// |f'| = 1 go to the lower-numbered region; adjacent formulas agree there.
std::pair<CaseRegion, WeightPair> case_weights(double a, double b, double da, double db,
                                               double s);

// The raw coefficient formula of one branch, exposed so the boundary
// agreement between adjacent branches can be checked directly.
WeightPair region_weights(CaseRegion region, double a, double b, double da, double db,
                          double s);

// wa * g(theta_i)^(1/q) + wb * g(theta_j)^(1/q).
double h_dispatch(KernelFunction kind, const WeightPair& weights, double theta_i,
                  double theta_j, double q);

// Self-test of the proof's key exponent step; slack 1e-15 * max magnitude.
std::pair<bool, bool> check_exponent_inequality(const TwoSidedBase& base);

// The s=1 specializations of the theta ratios: alpha(u) = (b*db/(a*da))^u
// and gamma(u) its reciprocal counterpart.
double alpha_ratio(double a, double b, double da, double db, double u);
double gamma_ratio(double a, double b, double da, double db, double u);

const char* to_string(CaseRegion region);

} // namespace geomhh::kernels
