#pragma once

#include <cmath>

#include "geomhh/errors.hpp"

namespace geomhh {

// A finite interval [a, b] on the positive half-line, 0 < a < b.
struct Interval {
    double a;
    double b;

    Interval(double a_, double b_) : a(a_), b(b_) {
        if (!(std::isfinite(a) && std::isfinite(b)))
            throw DomainError("interval endpoints must be finite");
        if (!(0.0 < a && a < b))
            throw DomainError("interval requires 0 < a < b");
    }

    double width() const { return b - a; }
    double log_ratio() const { return std::log(b / a); }
    double geometric_midpoint() const { return std::sqrt(a * b); }
};

} // namespace geomhh
