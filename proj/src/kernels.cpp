#include "geomhh/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace geomhh::kernels {

namespace {

// Series about u=1, coefficients checked against 50-digit evaluation of the
// defining integrals:
//   g1(1+x) = 1/2 + x/3 - x^2/24 + 7x^3/360 - ...
//   g2(1+x) = 1 + x/2 - x^2/12 + x^3/24 - ...
double g1_series(double x) {
    return 0.5 + x * (1.0 / 3.0 + x * (-1.0 / 24.0 + x * (7.0 / 360.0)));
}

double g2_series(double x) {
    return 1.0 + x * (0.5 + x * (-1.0 / 12.0 + x * (1.0 / 24.0)));
}

void require_positive_derivatives(double da, double db) {
    if (!(da > 0.0) || !(db > 0.0))
        throw DomainError("endpoint derivative magnitudes must be strictly positive");
}

} // namespace

double kernel_g(KernelFunction kind, double u) {
    if (!(u > 0.0) || !std::isfinite(u))
        throw DomainError("kernel argument must be a positive finite real");
    const double x = u - 1.0;
    if (kind == KernelFunction::G1) {
        if (std::fabs(x) < 1e-4) return g1_series(x);
        const double lu = std::log(u);
        // u ln u - (u-1): both operands stay near x scale, so the
        // subtraction does not reintroduce the 0/0 cancellation.
        return (u * lu - x) / (lu * lu);
    }
    if (std::fabs(x) < 1e-4) return g2_series(x);
    return x / std::log(u);
}

ThetaSet theta_set_from_log_factors(double log_factor_a, double log_factor_b, double q) {
    // exp of q*(log_factor_b - log_factor_a); the antisymmetric difference
    // makes swapping the two factors negate the exponent exactly.
    const double l = q * (log_factor_b - log_factor_a);
    ThetaSet set{std::exp(l), std::exp(-l), std::exp(0.5 * l), std::exp(-0.5 * l)};
    if (!std::isfinite(set.theta1) || !std::isfinite(set.theta2) || set.theta1 == 0.0 ||
        set.theta2 == 0.0)
        throw RangeError("theta overflow/underflow for the given exponent q");
    return set;
}

ThetaSet theta_set(double a, double b, double da, double db, double s, double q) {
    if (!(0.0 < a && a < b)) throw DomainError("theta_set requires 0 < a < b");
    require_positive_derivatives(da, db);
    return theta_set_from_log_factors(std::log(a) + s * std::log(da),
                                      std::log(b) + s * std::log(db), q);
}

WeightPair region_weights(CaseRegion region, double a, double b, double da, double db,
                          double s) {
    switch (region) {
    case CaseRegion::BothBelowOne:
        return {a * std::pow(da, s), b * std::pow(db, s)};
    case CaseRegion::BothAboveOne:
        return {a * da * std::pow(db, 1.0 - s), b * db * std::pow(da, 1.0 - s)};
    case CaseRegion::ABelowBAbove:
        return {a * std::pow(da, s) * std::pow(db, 1.0 - s), b * db};
    case CaseRegion::BBelowAAbove:
        return {a * da, b * std::pow(db, s) * std::pow(da, 1.0 - s)};
    }
    throw Error("unreachable case region");
}

std::pair<CaseRegion, WeightPair> case_weights(double a, double b, double da, double db,
                                               double s) {
    if (!(0.0 < a && a < b)) throw DomainError("case_weights requires 0 < a < b");
    require_positive_derivatives(da, db);
    CaseRegion region;
    if (da <= 1.0 && db <= 1.0) region = CaseRegion::BothBelowOne;
    else if (da >= 1.0 && db >= 1.0) region = CaseRegion::BothAboveOne;
    else if (da <= 1.0) region = CaseRegion::ABelowBAbove;
    else region = CaseRegion::BBelowAAbove;
    return {region, region_weights(region, a, b, da, db, s)};
}

double h_dispatch(KernelFunction kind, const WeightPair& weights, double theta_i,
                  double theta_j, double q) {
    const double inv_q = 1.0 / q;
    return weights.wa * std::pow(kernel_g(kind, theta_i), inv_q) +
           weights.wb * std::pow(kernel_g(kind, theta_j), inv_q);
}

std::pair<bool, bool> check_exponent_inequality(const TwoSidedBase& base) {
    if (!(base.mu > 0.0 && base.mu <= 1.0)) throw DomainError("mu must lie in (0,1]");
    if (!(base.eta >= 1.0)) throw DomainError("eta must lie in [1,inf)");
    if (!(base.alpha > 0.0 && base.alpha <= 1.0)) throw DomainError("alpha must lie in (0,1]");
    if (!(base.s > 0.0 && base.s <= 1.0)) throw DomainError("s must lie in (0,1]");

    const double alpha_pow_s = std::pow(base.alpha, base.s);
    const double mu_lhs = std::pow(base.mu, alpha_pow_s);
    const double mu_rhs = std::pow(base.mu, base.alpha * base.s);
    const double eta_lhs = std::pow(base.eta, alpha_pow_s);
    const double eta_rhs = std::pow(base.eta, base.alpha * base.s + 1.0 - base.s);
    const double mu_slack = 1e-15 * std::max(mu_lhs, mu_rhs);
    const double eta_slack = 1e-15 * std::max(eta_lhs, eta_rhs);
    return {mu_lhs <= mu_rhs + mu_slack, eta_lhs <= eta_rhs + eta_slack};
}

double alpha_ratio(double a, double b, double da, double db, double u) {
    require_positive_derivatives(da, db);
    return std::pow((b * db) / (a * da), u);
}

double gamma_ratio(double a, double b, double da, double db, double u) {
    require_positive_derivatives(da, db);
    return std::pow((a * da) / (b * db), u);
}

const char* to_string(CaseRegion region) {
    switch (region) {
    case CaseRegion::BothBelowOne: return "both_below_one";
    case CaseRegion::BothAboveOne: return "both_above_one";
    case CaseRegion::ABelowBAbove: return "a_below_b_above";
    case CaseRegion::BBelowAAbove: return "b_below_a_above";
    }
    return "unknown";
}

} // namespace geomhh::kernels
