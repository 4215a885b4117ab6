// Compares the serial reference path against the OpenMP path for the three
// data-parallel kernels: the convexity grid scan, the verification sweep and
// the exponent-inequality sampler. Also asserts that both paths produce
// identical results, since the parallel lane must be a pure speedup.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>

#include "geomhh/convexity.hpp"
#include "geomhh/kernels.hpp"
#include "geomhh/parallel.hpp"
#include "geomhh/report.hpp"
#include "geomhh/sweep.hpp"

using namespace geomhh;
using parallel::ExecMode;

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double timed(const F& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return seconds(t0);
}

void report_row(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-28s serial %8.3f s   openmp %8.3f s   speedup %5.2fx   %s\n", name,
                serial_s, parallel_s, serial_s / parallel_s,
                identical ? "results identical" : "RESULTS DIFFER");
    if (!identical) std::exit(1);
}

void bench_convexity_scan() {
    Interval interval(0.5, 4.0);
    expr::FunctionHandle f("exp(-x)", {}, interval);
    convexity::SampleGrid grid;
    grid.points_per_axis = 257;
    convexity::ConvexityVerdict vs, vp;
    const double ts = timed(
        [&] { vs = convexity::check_s_geometric(f, interval, 0.8, grid, ExecMode::Serial); });
    const double tp = timed(
        [&] { vp = convexity::check_s_geometric(f, interval, 0.8, grid, ExecMode::Auto); });
    const bool same = vs.holds == vp.holds && vs.worst_margin == vp.worst_margin &&
                      vs.witness.has_value() == vp.witness.has_value() &&
                      (!vs.witness || (vs.witness->x == vp.witness->x &&
                                       vs.witness->y == vp.witness->y &&
                                       vs.witness->t == vp.witness->t));
    report_row("convexity grid scan", ts, tp, same);
}

void bench_sweep() {
    sweep::SweepSpec spec;
    spec.function_source = "x^s/s";
    spec.params = {{"s", 0.5}};
    spec.a_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
    spec.b_values = {0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95};
    spec.s_values = {0.1, 0.3, 0.5, 0.7, 0.9};
    spec.q_values = {1.0, 1.5, 2.0, 4.0};
    spec.checks = {"lemma", "chain", "thm21", "thm22", "prop31", "prop32"};
    sweep::SweepResult rs, rp;
    const double ts = timed([&] { rs = sweep::run_sweep(spec, ExecMode::Serial); });
    const double tp = timed([&] { rp = sweep::run_sweep(spec, ExecMode::Auto); });
    report_row("verification sweep", ts, tp, report::to_csv(rs) == report::to_csv(rp));
}

void bench_exponent_samples() {
    const std::int64_t n = 20'000'000;
    auto count = [&](ExecMode mode) {
        std::vector<std::uint8_t> ok(n);
        parallel::fill_indexed(
            ok,
            [](std::int64_t i) -> std::uint8_t {
                std::uint64_t state = 0x51ab3fd9e02ULL + static_cast<std::uint64_t>(i);
                kernels::TwoSidedBase base;
                base.mu = std::exp(-parallel::uniform01(state) * std::log(1e8));
                base.eta = std::exp(parallel::uniform01(state) * std::log(1e8));
                base.alpha = 1.0 - parallel::uniform01(state);
                base.s = 1.0 - parallel::uniform01(state);
                auto [mu_ok, eta_ok] = kernels::check_exponent_inequality(base);
                return mu_ok && eta_ok ? 1 : 0;
            },
            mode);
        std::int64_t good = 0;
        for (std::uint8_t v : ok) good += v;
        return good;
    };
    std::int64_t gs = 0, gp = 0;
    const double ts = timed([&] { gs = count(ExecMode::Serial); });
    const double tp = timed([&] { gp = count(ExecMode::Auto); });
    report_row("exponent-inequality batch", ts, tp, gs == gp && gs == n);
}

} // namespace

int main() {
    std::printf("threads available: %d\n", parallel::thread_count());
    bench_convexity_scan();
    bench_sweep();
    bench_exponent_samples();
    return 0;
}
