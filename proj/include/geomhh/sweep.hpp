#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geomhh/expr.hpp"
#include "geomhh/parallel.hpp"
#include "geomhh/quadrature.hpp"

namespace geomhh::sweep {

using parallel::ExecMode;
using quadrature::Tolerance;

// Known check names, in the order they run: lemma, hh, chain, convexity,
// thm21, thm22, prop31, prop32.
const std::vector<std::string>& known_checks();

// A grid of parameter points crossed with a set of checks. Interval pairs
// are the a-grid x b-grid combinations with a < b; q = 1 points are skipped
// for the strict-q checks and s outside (0,1) for the power-family
// propositions. The reserved parameter names s and q are re-bound per point.
struct SweepSpec {
    std::string function_source = "x^s/s";
    expr::Bindings params{{"s", 0.5}}; // default binding for the s-free checks
    std::vector<double> a_values;
    std::vector<double> b_values;
    std::vector<double> s_values{1.0};
    std::vector<double> q_values{1.0};
    std::vector<std::string> checks;
    Tolerance tol;
    double slack = 1e-12;        // pass iff margin >= -(slack + err_estimate)
    double identity_tol = 1e-8;  // residual budget for the integral identities
};

struct SweepRecord {
    std::string check;
    std::string side;
    double a = 0.0;
    double b = 0.0;
    std::optional<double> s;
    std::optional<double> q;
    std::optional<double> lhs;
    std::optional<double> rhs;
    double margin = 0.0;
    std::string region; // empty when the check has no case dispatch
    bool pass = false;
    double err_estimate = 0.0;
    std::string error; // non-empty marks a numerical failure at this point
};

struct SweepSummary {
    long total = 0;
    long passed = 0;
    long failed = 0;
    long errors = 0;
    double worst_margin = 0.0;
    double wall_time_ms = 0.0;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    SweepSummary summary;
};

// Runs every requested check over the grid. Points execute concurrently in
// Auto mode; records come back in grid order either way, so the result is
// byte-identical across modes and thread counts. Per-point failures are
// recorded and the sweep continues.
SweepResult run_sweep(const SweepSpec& spec, ExecMode mode = ExecMode::Auto);

} // namespace geomhh::sweep
