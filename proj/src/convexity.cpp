#include "geomhh/convexity.hpp"

#include <cmath>

namespace geomhh::convexity {

namespace {

void validate_grid(const SampleGrid& grid) {
    if (grid.points_per_axis < 3) throw DomainError("sample grid needs at least 3 axis points");
    double prev = -1.0;
    for (double t : grid.t_values) {
        if (!(t >= 0.0 && t <= 1.0)) throw DomainError("t-values must lie in [0,1]");
        if (t < prev) throw DomainError("t-values must be sorted");
        prev = t;
    }
}

void validate_s(double s) {
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("s must lie in (0,1]");
}

struct GridShape {
    std::vector<double> axis;
    const std::vector<double>* ts;

    std::int64_t size() const {
        return static_cast<std::int64_t>(axis.size()) * static_cast<std::int64_t>(axis.size()) *
               static_cast<std::int64_t>(ts->size());
    }

    void unpack(std::int64_t idx, double& x, double& y, double& t) const {
        const auto nt = static_cast<std::int64_t>(ts->size());
        const auto ny = static_cast<std::int64_t>(axis.size());
        t = (*ts)[idx % nt];
        idx /= nt;
        y = axis[idx % ny];
        x = axis[idx / ny];
    }
};

template <typename Margin>
ConvexityVerdict scan(const GridShape& shape, const SampleGrid& grid, const Margin& margin,
                      ExecMode mode) {
    parallel::MinMargin worst = parallel::min_margin_scan(
        shape.size(),
        [&](std::int64_t idx) {
            double x, y, t;
            shape.unpack(idx, x, y, t);
            return margin(x, y, t);
        },
        mode);

    ConvexityVerdict verdict;
    verdict.worst_margin = worst.margin;
    verdict.holds = worst.margin >= -grid.slack;
    if (!verdict.holds) {
        double x, y, t;
        shape.unpack(worst.index, x, y, t);
        verdict.witness = Witness{x, y, t};
    }
    return verdict;
}

} // namespace

std::vector<double> log_spaced(const Interval& interval, int count) {
    std::vector<double> points(count);
    const double la = std::log(interval.a);
    const double lb = std::log(interval.b);
    for (int i = 0; i < count; ++i) {
        double w = static_cast<double>(i) / (count - 1);
        points[i] = std::exp(la + w * (lb - la));
    }
    points.front() = interval.a;
    points.back() = interval.b;
    return points;
}

double s_geometric_margin(const FunctionHandle& f, double x, double y, double t, double s) {
    const double fx = f.positive_value(x);
    const double fy = f.positive_value(y);
    const double mix = std::pow(x, t) * std::pow(y, 1.0 - t);
    const double lhs = f.positive_value(mix);
    const double rhs = std::pow(fx, std::pow(t, s)) * std::pow(fy, std::pow(1.0 - t, s));
    return rhs - lhs;
}

double s_convex_second_sense_margin(const FunctionHandle& f, double x, double y, double alpha,
                                    double s) {
    const double beta = 1.0 - alpha;
    const double lhs = f.value(alpha * x + beta * y);
    const double rhs = std::pow(alpha, s) * f.value(x) + std::pow(beta, s) * f.value(y);
    return rhs - lhs;
}

ConvexityVerdict check_s_geometric(const FunctionHandle& f, const Interval& interval, double s,
                                   const SampleGrid& grid, ExecMode mode) {
    validate_grid(grid);
    validate_s(s);
    GridShape shape{log_spaced(interval, grid.points_per_axis), &grid.t_values};
    return scan(shape, grid,
                [&](double x, double y, double t) { return s_geometric_margin(f, x, y, t, s); },
                mode);
}

ConvexityVerdict check_s_convex_second_sense(const FunctionHandle& f, const Interval& interval,
                                             double s, const SampleGrid& grid, ExecMode mode) {
    validate_grid(grid);
    validate_s(s);
    GridShape shape{log_spaced(interval, grid.points_per_axis), &grid.t_values};
    return scan(shape, grid,
                [&](double x, double y, double alpha) {
                    return s_convex_second_sense_margin(f, x, y, alpha, s);
                },
                mode);
}

std::vector<std::pair<double, ConvexityVerdict>> s_profile(const FunctionHandle& f,
                                                           const Interval& interval,
                                                           const SampleGrid& grid,
                                                           const std::vector<double>& s_grid,
                                                           ExecMode mode) {
    std::vector<std::pair<double, ConvexityVerdict>> profile;
    profile.reserve(s_grid.size());
    for (double s : s_grid)
        profile.emplace_back(s, check_s_geometric(f, interval, s, grid, mode));
    return profile;
}

} // namespace geomhh::convexity
