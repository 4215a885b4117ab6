#pragma once

#include <functional>

#include "geomhh/errors.hpp"

namespace geomhh::quadrature {

struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 1 << 20;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0; // absolute
    int subdivisions_used = 0;
    bool converged = false;
};

// Adaptive bisection with a nested Gauss 7 / Kronrod 15 pair per panel.
// Panels split left-to-right until the local estimate meets the tolerance
// prorated by panel width; accepted panels are summed pairwise in position
// order, so the result is independent of evaluation interleaving.
// Requires lo < hi, both finite. Non-convergence is reported through
// `converged`, never silently truncated.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const Tolerance& tol = {});

} // namespace geomhh::quadrature
