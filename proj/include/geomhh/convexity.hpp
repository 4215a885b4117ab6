#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "geomhh/expr.hpp"
#include "geomhh/interval.hpp"
#include "geomhh/parallel.hpp"

namespace geomhh::convexity {

using expr::FunctionHandle;
using parallel::ExecMode;

// Deterministic tensor grid: log-spaced x,y points in the interval crossed
// with fixed t-values (which always include 0, 1/2 and 1).
struct SampleGrid {
    int points_per_axis = 17;
    std::vector<double> t_values = {0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1.0};
    double slack = 1e-12;
};

struct Witness {
    double x;
    double y;
    double t;
};

// holds iff the worst (most negative) margin stays above -slack; a witness
// is attached exactly when the verdict is a failure.
struct ConvexityVerdict {
    bool holds;
    double worst_margin;
    std::optional<Witness> witness;
};

// f(x^t y^(1-t)) <= f(x)^(t^s) f(y)^((1-t)^s) over the grid; s=1 is plain
// geometric convexity. Requires f > 0 on the probed points.
ConvexityVerdict check_s_geometric(const FunctionHandle& f, const Interval& interval, double s,
                                   const SampleGrid& grid = {},
                                   ExecMode mode = ExecMode::Auto);

// f(a x + (1-a) y) <= a^s f(x) + (1-a)^s f(y) over the grid.
ConvexityVerdict check_s_convex_second_sense(const FunctionHandle& f, const Interval& interval,
                                             double s, const SampleGrid& grid = {},
                                             ExecMode mode = ExecMode::Auto);

// Per-s verdicts of check_s_geometric; no monotonicity in s is assumed.
std::vector<std::pair<double, ConvexityVerdict>> s_profile(const FunctionHandle& f,
                                                           const Interval& interval,
                                                           const SampleGrid& grid,
                                                           const std::vector<double>& s_grid,
                                                           ExecMode mode = ExecMode::Auto);

// The margin of the defining inequality at a single (x, y, t) probe, used to
// re-validate witnesses in isolation.
double s_geometric_margin(const FunctionHandle& f, double x, double y, double t, double s);
double s_convex_second_sense_margin(const FunctionHandle& f, double x, double y, double alpha,
                                    double s);

// The log-spaced axis points the grid uses.
std::vector<double> log_spaced(const Interval& interval, int count);

} // namespace geomhh::convexity
