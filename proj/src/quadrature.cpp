#include "geomhh/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace geomhh::quadrature {

namespace {

// Gauss 7 / Kronrod 15 abscissae and weights on [-1, 1] (QUADPACK values).
// Odd-index abscissae are the embedded Gauss nodes.
constexpr double kAbscissa[8] = {
    0.991455371120812639206854697526329, // Kronrod only
    0.949107912342758524526189684047851, // Gauss
    0.864864423359769072789712788640926, // Kronrod only
    0.741531185599394439863864773280788, // Gauss
    0.586087235467691130294144838258730, // Kronrod only
    0.405845151377397166906606412076961, // Gauss
    0.207784955007898467600689403773245, // Kronrod only
    0.000000000000000000000000000000000, // center (Gauss)
};

constexpr double kKronrodWeight[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714, // center
};

constexpr double kGaussWeight[4] = {
    0.129484966168869693270611432679082, // node 1
    0.279705391489276667901467771423780, // node 3
    0.381830050505118944950369775488975, // node 5
    0.417959183673469387755102040816327, // center
};

struct PanelEstimate {
    double value;
    double error;
};

PanelEstimate gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    double fv[8][2]; // [node][side]; center stored in fv[7][0]
    fv[7][0] = f(center);
    fv[7][1] = 0.0;
    for (int j = 0; j < 7; ++j) {
        fv[j][0] = f(center - half * kAbscissa[j]);
        fv[j][1] = f(center + half * kAbscissa[j]);
    }

    double resk = kKronrodWeight[7] * fv[7][0];
    double resg = kGaussWeight[3] * fv[7][0];
    double resabs = std::fabs(resk);
    for (int j = 0; j < 7; ++j) {
        double fsum = fv[j][0] + fv[j][1];
        resk += kKronrodWeight[j] * fsum;
        resabs += kKronrodWeight[j] * (std::fabs(fv[j][0]) + std::fabs(fv[j][1]));
        if (j % 2 == 1) resg += kGaussWeight[j / 2] * fsum;
    }

    const double reskh = 0.5 * resk;
    double resasc = kKronrodWeight[7] * std::fabs(fv[7][0] - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kKronrodWeight[j] *
                  (std::fabs(fv[j][0] - reskh) + std::fabs(fv[j][1] - reskh));

    resabs *= half;
    resasc *= half;

    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(eps50 * resabs, err);

    return {resk * half, err};
}

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 4) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

struct Panel {
    double lo, hi, value, error;
};

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const Tolerance& tol) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi))
        throw DomainError("integration requires finite lo < hi");
    if (!(tol.abs_tol > 0.0) || !(tol.rel_tol > 0.0) || tol.max_subdivisions < 1)
        throw DomainError("tolerances must be positive and max subdivisions >= 1");

    const double total_width = hi - lo;
    PanelEstimate first = gk15(f, lo, hi);
    const double threshold =
        std::max(tol.abs_tol, tol.rel_tol * std::fabs(first.value));

    std::vector<Panel> accepted;
    std::vector<Panel> work;
    work.push_back({lo, hi, first.value, first.error});

    int splits = 0;
    bool budget_exhausted = false;
    const double eps = std::numeric_limits<double>::epsilon();

    while (!work.empty()) {
        Panel p = work.back();
        work.pop_back();
        const double width = p.hi - p.lo;
        const double local_budget = threshold * (width / total_width);
        const double floor_width =
            4.0 * eps * std::max({std::fabs(p.lo), std::fabs(p.hi), 1.0});
        if (p.error <= local_budget || width <= floor_width || budget_exhausted) {
            accepted.push_back(p);
            continue;
        }
        if (splits >= tol.max_subdivisions) {
            budget_exhausted = true;
            accepted.push_back(p);
            continue;
        }
        ++splits;
        const double mid = 0.5 * (p.lo + p.hi);
        PanelEstimate left = gk15(f, p.lo, mid);
        PanelEstimate right = gk15(f, mid, p.hi);
        // LIFO with the left half on top keeps processing (and therefore
        // acceptance) strictly left-to-right.
        work.push_back({mid, p.hi, right.value, right.error});
        work.push_back({p.lo, mid, left.value, left.error});
    }

    std::vector<double> values(accepted.size());
    std::vector<double> errors(accepted.size());
    for (std::size_t i = 0; i < accepted.size(); ++i) {
        values[i] = accepted[i].value;
        errors[i] = accepted[i].error;
    }

    QuadratureResult result;
    result.value = pairwise_sum(values, 0, values.size());
    result.error_estimate = pairwise_sum(errors, 0, errors.size());
    result.subdivisions_used = splits;
    result.converged =
        !budget_exhausted &&
        result.error_estimate <=
            std::max(tol.abs_tol, tol.rel_tol * std::fabs(result.value));
    return result;
}

} // namespace geomhh::quadrature
