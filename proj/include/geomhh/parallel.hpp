#pragma once

#include <cstdint>
#include <exception>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace geomhh::parallel {

// Serial is the reference path; Auto uses OpenMP when compiled in. Both
// paths must produce identical results, which the tests assert.
enum class ExecMode { Serial, Auto };

inline int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// (margin, index) pair ordered by margin, ties to the lower index, so the
// reduction result does not depend on iteration order.
struct MinMargin {
    double margin;
    std::int64_t index;

    bool better_than(const MinMargin& other) const {
        if (margin != other.margin) return margin < other.margin;
        return index < other.index;
    }
};

// Exceptions may not escape an OpenMP region; each thread keeps the one
// thrown at the lowest index and the winner is rethrown afterwards, which
// matches what the serial loop would have thrown first.
struct CapturedError {
    std::int64_t index = std::numeric_limits<std::int64_t>::max();
    std::exception_ptr error;
};

inline void rethrow_lowest(const std::vector<CapturedError>& slots) {
    const CapturedError* first = nullptr;
    for (const CapturedError& slot : slots)
        if (slot.error && (!first || slot.index < first->index)) first = &slot;
    if (first) std::rethrow_exception(first->error);
}

// Minimum margin over i in [0, n) where Eval is (std::int64_t) -> double.
// Every index is evaluated exactly once in both modes.
template <typename Eval>
MinMargin min_margin_scan(std::int64_t n, const Eval& eval, ExecMode mode) {
    MinMargin best{std::numeric_limits<double>::infinity(), -1};
    if (n <= 0) return best;
#ifdef _OPENMP
    if (mode == ExecMode::Auto) {
        std::vector<MinMargin> locals(thread_count(),
                                      {std::numeric_limits<double>::infinity(), -1});
        std::vector<CapturedError> errors(thread_count());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const int tid = omp_get_thread_num();
            try {
                MinMargin candidate{eval(i), i};
                MinMargin& local = locals[tid];
                if (candidate.better_than(local)) local = candidate;
            } catch (...) {
                if (i < errors[tid].index) errors[tid] = {i, std::current_exception()};
            }
        }
        rethrow_lowest(errors);
        for (const MinMargin& local : locals)
            if (local.index >= 0 && local.better_than(best)) best = local;
        return best;
    }
#else
    (void)mode;
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        MinMargin candidate{eval(i), i};
        if (candidate.better_than(best)) best = candidate;
    }
    return best;
}

// Fills out[i] = eval(i) for i in [0, n); out must be presized. Slots are
// independent, so the parallel fill is deterministic by construction.
template <typename T, typename Eval>
void fill_indexed(std::vector<T>& out, const Eval& eval, ExecMode mode) {
    const std::int64_t n = static_cast<std::int64_t>(out.size());
#ifdef _OPENMP
    if (mode == ExecMode::Auto) {
        std::vector<CapturedError> errors(thread_count());
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < n; ++i) {
            const int tid = omp_get_thread_num();
            try {
                out[i] = eval(i);
            } catch (...) {
                if (i < errors[tid].index) errors[tid] = {i, std::current_exception()};
            }
        }
        rethrow_lowest(errors);
        return;
    }
#else
    (void)mode;
#endif
    for (std::int64_t i = 0; i < n; ++i) out[i] = eval(i);
}

// splitmix64; the per-index generator behind every seeded sampling loop.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

} // namespace geomhh::parallel
