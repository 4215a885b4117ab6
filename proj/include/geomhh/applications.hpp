#pragma once

#include <utility>

#include "geomhh/bounds.hpp"
#include "geomhh/interval.hpp"

namespace geomhh::applications {

using quadrature::Tolerance;

// Parameters of the x^s/s power family on a sub-interval of (0,1].
struct PowerFamilySpec {
    double s;          // (0, 1)
    double q;          // >= 1 (proposition for the Hoelder route needs > 1)
    Interval interval; // 0 < a < b <= 1

    PowerFamilySpec(double s_, double q_, Interval interval_);
};

// One row of a special-means proposition: the displayed closed form next to
// the bound obtained by pushing the family through the theorem machinery.
struct PropositionReport {
    double lhs;
    double rhs_closed_form;
    double rhs_via_theorem;
    double margin;          // rhs_closed_form - lhs
    double equivalence_gap; // |rhs_closed_form - rhs_via_theorem|
};

// (trapezoid, midpoint) rows of the power-mean-route proposition (q >= 1).
std::pair<PropositionReport, PropositionReport> proposition31(const PowerFamilySpec& spec,
                                                              const Tolerance& tol = {});

// Same against the Hoelder-route theorem; requires q > 1.
std::pair<PropositionReport, PropositionReport> proposition32(const PowerFamilySpec& spec,
                                                              const Tolerance& tol = {});

// The family member f(x) = x^s/s as an expression handle over the interval.
expr::FunctionHandle power_family_handle(const PowerFamilySpec& spec);

} // namespace geomhh::applications
