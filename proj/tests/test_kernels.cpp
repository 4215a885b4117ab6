#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "geomhh/kernels.hpp"
#include "geomhh/parallel.hpp"
#include "geomhh/quadrature.hpp"

using namespace geomhh;
using namespace geomhh::kernels;

namespace {

// Quadrature oracle for the defining integrals of g1 and g2.
double kernel_oracle(KernelFunction kind, double u) {
    quadrature::Tolerance tol;
    tol.abs_tol = 1e-13;
    tol.rel_tol = 1e-13;
    auto integrand = [&](double t) {
        double v = std::pow(u, t);
        return kind == KernelFunction::G1 ? t * v : v;
    };
    auto r = quadrature::integrate(integrand, 0.0, 1.0, tol);
    REQUIRE(r.converged);
    return r.value;
}

} // namespace

TEST_CASE("kernel point values") {
    CHECK(kernel_g(KernelFunction::G1, 1.0) == 0.5);
    CHECK(kernel_g(KernelFunction::G2, 1.0) == 1.0);
    CHECK(kernel_g(KernelFunction::G1, M_E) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(kernel_g(KernelFunction::G2, 2.0) ==
          doctest::Approx(1.4426950408889634).epsilon(1e-15));
    CHECK(kernel_g(KernelFunction::G2, 2.0) ==
          doctest::Approx(kernel_oracle(KernelFunction::G2, 2.0)));
    CHECK_THROWS_AS(kernel_g(KernelFunction::G1, 0.0), DomainError);
    CHECK_THROWS_AS(kernel_g(KernelFunction::G1, -2.0), DomainError);
    CHECK_THROWS_AS(kernel_g(KernelFunction::G2, std::numeric_limits<double>::infinity()),
                    DomainError);
}

TEST_CASE("kernels match the integral oracle across scales and near u=1") {
    std::vector<double> grid;
    for (int i = 0; i < 50; ++i) grid.push_back(std::pow(10.0, -3.0 + 6.0 * i / 49.0));
    // straddle the series window boundary at |u-1| = 1e-4
    for (double d : {1e-12, 1e-5, 9.9e-5, 1.01e-4, 1e-3}) {
        grid.push_back(1.0 + d);
        grid.push_back(1.0 - d);
    }
    for (double u : grid) {
        CAPTURE(u);
        CHECK(std::fabs(kernel_g(KernelFunction::G1, u) -
                        kernel_oracle(KernelFunction::G1, u)) <= 1e-9);
        CHECK(std::fabs(kernel_g(KernelFunction::G2, u) -
                        kernel_oracle(KernelFunction::G2, u)) <= 1e-9);
    }
}

TEST_CASE("theta set") {
    SUBCASE("equal derivative factors cancel") {
        for (double da : {0.25, 1.0, 3.0}) {
            auto set = theta_set(1.0, 2.0, da, da, 0.7, 3.0);
            CHECK(set.theta1 == doctest::Approx(8.0).epsilon(1e-14));
        }
    }
    SUBCASE("worked value") {
        // a=0.25, b=1, da=0.25^(s-1), db=1 at s=0.5, q=2 gives 0.25^(-1.5) = 8
        const double da = std::pow(0.25, -0.5);
        auto set = theta_set(0.25, 1.0, da, 1.0, 0.5, 2.0);
        CHECK(set.theta1 == doctest::Approx(8.0).epsilon(1e-14));
    }
    SUBCASE("reciprocal and square-root structure") {
        std::uint64_t state = 11;
        for (int i = 0; i < 200; ++i) {
            const double a = 0.1 + parallel::uniform01(state);
            const double b = a + 0.1 + parallel::uniform01(state);
            const double da = std::exp(4.0 * (parallel::uniform01(state) - 0.5));
            const double db = std::exp(4.0 * (parallel::uniform01(state) - 0.5));
            const double s = 0.05 + 0.95 * parallel::uniform01(state);
            const double q = 1.0 + 5.0 * parallel::uniform01(state);
            auto set = theta_set(a, b, da, db, s, q);
            CHECK(std::fabs(set.theta1 * set.theta2 - 1.0) <=
                  4.0 * std::numeric_limits<double>::epsilon());
            CHECK(set.theta3 == doctest::Approx(std::sqrt(set.theta1)).epsilon(1e-14));
            CHECK(set.theta4 == doctest::Approx(std::sqrt(set.theta2)).epsilon(1e-14));
            CHECK(set.theta1 > 0.0);
            CHECK(std::isfinite(set.theta1));
        }
    }
    SUBCASE("swapping the endpoint factors swaps the set exactly") {
        std::uint64_t state = 23;
        for (int i = 0; i < 200; ++i) {
            const double fa = 8.0 * (parallel::uniform01(state) - 0.5);
            const double fb = 8.0 * (parallel::uniform01(state) - 0.5);
            const double q = 1.0 + 4.0 * parallel::uniform01(state);
            auto set = theta_set_from_log_factors(fa, fb, q);
            auto swapped = theta_set_from_log_factors(fb, fa, q);
            CHECK(set.theta1 == swapped.theta2);
            CHECK(set.theta2 == swapped.theta1);
            CHECK(set.theta3 == swapped.theta4);
            CHECK(set.theta4 == swapped.theta3);
        }
    }
    SUBCASE("rejects bad input") {
        CHECK_THROWS_AS(theta_set(1.0, 2.0, 0.0, 1.0, 0.5, 1.0), DomainError);
        CHECK_THROWS_AS(theta_set(1.0, 2.0, 1.0, 0.0, 0.5, 1.0), DomainError);
        CHECK_THROWS_AS(theta_set(2.0, 1.0, 1.0, 1.0, 0.5, 1.0), DomainError);
        CHECK_THROWS_AS(theta_set(0.5, 2.0, 1e-300, 1e300, 1.0, 400.0), RangeError);
    }
}

TEST_CASE("case dispatch and weights") {
    SUBCASE("boundary point where all branches coincide") {
        auto [region, w] = case_weights(1.0, 2.0, 1.0, 1.0, 0.4);
        (void)region; // any region is acceptable at the four-fold tie
        CHECK(w.wa == 1.0);
        CHECK(w.wb == 2.0);
    }
    SUBCASE("both below one") {
        auto [region, w] = case_weights(1.0, 2.0, 0.5, 0.5, 0.5);
        CHECK(region == CaseRegion::BothBelowOne);
        CHECK(w.wa == doctest::Approx(0.70710678118654757).epsilon(1e-15));
        CHECK(w.wb == doctest::Approx(1.4142135623730951).epsilon(1e-15));
    }
    SUBCASE("b below, a above") {
        auto [region, w] = case_weights(1.0, 2.0, 4.0, 0.25, 0.5);
        CHECK(region == CaseRegion::BBelowAAbove);
        CHECK(w.wa == doctest::Approx(4.0).epsilon(1e-15));
        CHECK(w.wb == doctest::Approx(2.0).epsilon(1e-15));
    }
    SUBCASE("s=1 collapses every region to (a|f'(a)|, b|f'(b)|)") {
        std::uint64_t state = 99;
        for (int i = 0; i < 200; ++i) {
            const double a = 0.2 + parallel::uniform01(state);
            const double b = a + 0.5;
            const double da = std::exp(3.0 * (parallel::uniform01(state) - 0.5));
            const double db = std::exp(3.0 * (parallel::uniform01(state) - 0.5));
            auto [region, w] = case_weights(a, b, da, db, 1.0);
            (void)region;
            CHECK(w.wa == a * da);
            CHECK(w.wb == b * db);
        }
    }
    SUBCASE("adjacent branch formulas agree at the |f'|=1 boundaries") {
        const double ulp4 = 4.0 * std::numeric_limits<double>::epsilon();
        for (int i = 0; i < 100; ++i) {
            const double other = std::pow(10.0, -3.0 + 6.0 * i / 99.0);
            const double s = 0.3;
            // da = 1 line
            auto low = region_weights(
                other <= 1.0 ? CaseRegion::BothBelowOne : CaseRegion::ABelowBAbove, 1.0, 2.0,
                1.0, other, s);
            auto high = region_weights(
                other <= 1.0 ? CaseRegion::BBelowAAbove : CaseRegion::BothAboveOne, 1.0, 2.0,
                1.0, other, s);
            CHECK(std::fabs(low.wa - high.wa) <= ulp4 * std::fabs(low.wa));
            CHECK(std::fabs(low.wb - high.wb) <= ulp4 * std::fabs(low.wb));
            // db = 1 line
            low = region_weights(
                other <= 1.0 ? CaseRegion::BothBelowOne : CaseRegion::BBelowAAbove, 1.0, 2.0,
                other, 1.0, s);
            high = region_weights(
                other <= 1.0 ? CaseRegion::ABelowBAbove : CaseRegion::BothAboveOne, 1.0, 2.0,
                other, 1.0, s);
            CHECK(std::fabs(low.wa - high.wa) <= ulp4 * std::fabs(low.wa));
            CHECK(std::fabs(low.wb - high.wb) <= ulp4 * std::fabs(low.wb));
        }
    }
}

TEST_CASE("h dispatch") {
    CHECK(h_dispatch(KernelFunction::G1, {1.0, 2.0}, 1.0, 1.0, 1.0) == doctest::Approx(1.5));
    CHECK(h_dispatch(KernelFunction::G2, {1.0, 2.0}, 1.0, 1.0, 2.0) == doctest::Approx(3.0));
    // g1(e) = 1 and g1(1/e) = 1 - 2/e by hand
    CHECK(h_dispatch(KernelFunction::G1, {1.0, 1.0}, M_E, 1.0 / M_E, 1.0) ==
          doctest::Approx(1.0 + 1.0 - 2.0 / M_E).epsilon(1e-14));
}

TEST_CASE("exponent inequality") {
    CHECK(check_exponent_inequality({1.0, 1.0, 0.5, 0.5}) == std::pair{true, true});
    CHECK(check_exponent_inequality({0.4, 3.0, 0.8, 1.0}) == std::pair{true, true});
    CHECK(check_exponent_inequality({0.3, 4.0, 0.7, 0.4}) == std::pair{true, true});
    CHECK_THROWS_AS(check_exponent_inequality({0.0, 1.0, 0.5, 0.5}), DomainError);
    CHECK_THROWS_AS(check_exponent_inequality({0.5, 0.5, 0.5, 0.5}), DomainError);
    CHECK_THROWS_AS(check_exponent_inequality({0.5, 2.0, 1.5, 0.5}), DomainError);
    CHECK_THROWS_AS(check_exponent_inequality({0.5, 2.0, 0.5, 0.0}), DomainError);

    std::uint64_t state = 314159;
    for (int i = 0; i < 10'000; ++i) {
        TwoSidedBase base;
        base.mu = 1.0 - parallel::uniform01(state);
        base.eta = std::exp(parallel::uniform01(state) * std::log(1e6));
        base.alpha = 1.0 - parallel::uniform01(state);
        base.s = 1.0 - parallel::uniform01(state);
        auto [mu_ok, eta_ok] = check_exponent_inequality(base);
        CHECK(mu_ok);
        CHECK(eta_ok);
    }
}

TEST_CASE("alpha and gamma ratios are reciprocal") {
    CHECK(alpha_ratio(1.0, M_E, 1.0, 1.0, 1.0) == doctest::Approx(M_E).epsilon(1e-15));
    const double al = alpha_ratio(0.5, 2.0, 3.0, 0.7, 2.5);
    const double ga = gamma_ratio(0.5, 2.0, 3.0, 0.7, 2.5);
    CHECK(al * ga == doctest::Approx(1.0).epsilon(1e-14));
}
