#pragma once

#include "geomhh/errors.hpp"

namespace geomhh::means {

enum class MeanTag { Arithmetic, Geometric, Logarithmic, PLogarithmic };

// One of A, G, L, or L_p (the latter carrying its exponent p, p not in {-1,0}).
struct MeanKind {
    MeanTag tag;
    double p = 0.0;

    static MeanKind arithmetic() { return {MeanTag::Arithmetic}; }
    static MeanKind geometric() { return {MeanTag::Geometric}; }
    static MeanKind logarithmic() { return {MeanTag::Logarithmic}; }
    static MeanKind p_logarithmic(double p) { return {MeanTag::PLogarithmic, p}; }
};

// Argument order is normalized; a = b uses the continuity extension (value a)
// for the logarithmic and p-logarithmic kinds.
double mean(const MeanKind& kind, double a, double b);

double arithmetic_mean(double a, double b);
double geometric_mean(double a, double b);
double logarithmic_mean(double a, double b);
double p_logarithmic_mean(double p, double a, double b);

} // namespace geomhh::means
