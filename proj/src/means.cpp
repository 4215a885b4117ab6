#include "geomhh/means.hpp"

#include <cmath>
#include <utility>

namespace geomhh::means {

namespace {

void normalize(double& a, double& b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("means require positive finite arguments");
    if (a > b) std::swap(a, b);
}

} // namespace

double arithmetic_mean(double a, double b) {
    normalize(a, b);
    return 0.5 * (a + b);
}

double geometric_mean(double a, double b) {
    normalize(a, b);
    return std::sqrt(a * b);
}

double logarithmic_mean(double a, double b) {
    normalize(a, b);
    if (a == b) return a;
    // log1p keeps ln(b/a) accurate when b/a is close to 1.
    return (b - a) / std::log1p((b - a) / a);
}

double p_logarithmic_mean(double p, double a, double b) {
    if (p == -1.0 || p == 0.0)
        throw DomainError("p-logarithmic mean requires p outside {-1, 0}");
    normalize(a, b);
    if (a == b) return a;
    const double num = std::pow(b, p + 1.0) - std::pow(a, p + 1.0);
    return std::pow(num / ((p + 1.0) * (b - a)), 1.0 / p);
}

double mean(const MeanKind& kind, double a, double b) {
    switch (kind.tag) {
    case MeanTag::Arithmetic: return arithmetic_mean(a, b);
    case MeanTag::Geometric: return geometric_mean(a, b);
    case MeanTag::Logarithmic: return logarithmic_mean(a, b);
    case MeanTag::PLogarithmic: return p_logarithmic_mean(kind.p, a, b);
    }
    throw Error("unreachable mean kind");
}

} // namespace geomhh::means
