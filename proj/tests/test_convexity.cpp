#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geomhh/convexity.hpp"

using namespace geomhh;
using namespace geomhh::convexity;
using expr::FunctionHandle;

TEST_CASE("power functions are geometrically convex with zero margin") {
    Interval interval(0.5, 3.0);
    FunctionHandle f("x^p", {{"p", 2.7}}, interval);
    auto verdict = check_s_geometric(f, interval, 1.0);
    CHECK(verdict.holds);
    CHECK(verdict.worst_margin >= -1e-12);
    CHECK(verdict.worst_margin <= 1e-10);
    CHECK_FALSE(verdict.witness.has_value());
}

TEST_CASE("the x^((s-1)q) family is s-geometrically convex on (0,1]") {
    Interval interval(0.25, 1.0);
    const double s = 0.5, q = 2.0;
    FunctionHandle f("x^((s-1)*q)", {{"s", s}, {"q", q}}, interval);
    auto verdict = check_s_geometric(f, interval, s);
    CHECK(verdict.holds);
}

TEST_CASE("decaying exponential fails geometric convexity with a witness") {
    Interval interval(1.0, 4.0);
    FunctionHandle f("exp(-x)", {}, interval);
    auto verdict = check_s_geometric(f, interval, 1.0);
    CHECK_FALSE(verdict.holds);
    REQUIRE(verdict.witness.has_value());

    // hand point: x=1, y=4, t=1/2 gives lhs e^-2 > rhs e^-2.5
    const double hand = s_geometric_margin(f, 1.0, 4.0, 0.5, 1.0);
    CHECK(hand == doctest::Approx(std::exp(-2.5) - std::exp(-2.0)).epsilon(1e-12));
    CHECK(hand < 0.0);

    // the reported witness violates the inequality when re-evaluated alone
    const auto& w = *verdict.witness;
    const double replay = s_geometric_margin(f, w.x, w.y, w.t, 1.0);
    CHECK(replay == verdict.worst_margin);
    CHECK(replay < -1e-12);
}

TEST_CASE("constant functions hold with zero margin at s=1") {
    Interval interval(0.5, 2.0);
    FunctionHandle f("2.5", {}, interval);
    auto verdict = check_s_geometric(f, interval, 1.0);
    CHECK(verdict.holds);
    CHECK(std::fabs(verdict.worst_margin) <= 1e-14);
}

TEST_CASE("positivity is enforced for the geometric checks") {
    Interval interval(0.5, 2.0);
    FunctionHandle f("x-10", {}, interval);
    CHECK_THROWS_AS(check_s_geometric(f, interval, 1.0), DomainError);
}

TEST_CASE("s-convexity in the second sense") {
    SUBCASE("x^2 is convex in the ordinary sense") {
        Interval interval(0.001, 1.0);
        FunctionHandle f("x^2", {}, interval);
        CHECK(check_s_convex_second_sense(f, interval, 1.0).holds);
    }
    SUBCASE("x^s is s-convex in the second sense") {
        Interval interval(0.01, 1.0);
        FunctionHandle f("x^s", {{"s", 0.5}}, interval);
        auto verdict = check_s_convex_second_sense(f, interval, 0.5);
        CHECK(verdict.holds);
    }
    SUBCASE("affine functions sit on the boundary, negative values allowed") {
        Interval interval(0.001, 1.0);
        FunctionHandle f("-x", {}, interval);
        auto verdict = check_s_convex_second_sense(f, interval, 1.0);
        CHECK(verdict.holds);
        CHECK(std::fabs(verdict.worst_margin) <= 1e-16);
    }
    SUBCASE("concave functions fail") {
        Interval interval(0.1, 1.0);
        FunctionHandle f("sqrt(x)", {}, interval);
        auto verdict = check_s_convex_second_sense(f, interval, 1.0);
        CHECK_FALSE(verdict.holds);
        REQUIRE(verdict.witness.has_value());
        const auto& w = *verdict.witness;
        CHECK(s_convex_second_sense_margin(f, w.x, w.y, w.t, 1.0) < -1e-12);
    }
}

TEST_CASE("s profile reports one verdict per s") {
    Interval interval(0.25, 1.0);
    FunctionHandle power("x^p", {{"p", 3.0}}, interval);
    auto profile = s_profile(power, interval, {}, {0.25, 0.5, 1.0});
    REQUIRE(profile.size() == 3);
    CHECK(profile[2].first == 1.0);
    CHECK(profile[2].second.holds);

    // the family member x^((s0-1)q) holds at its own s0
    FunctionHandle member("x^((s-1)*q)", {{"s", 0.5}, {"q", 1.0}}, interval);
    auto verdict = check_s_geometric(member, interval, 0.5);
    CHECK(verdict.holds);

    auto empty = s_profile(power, interval, {}, {});
    CHECK(empty.empty());
}

TEST_CASE("a coarse-grid failure survives grid refinement") {
    Interval interval(1.0, 4.0);
    FunctionHandle f("exp(-x)", {}, interval);
    SampleGrid coarse;
    coarse.points_per_axis = 9;
    auto coarse_verdict = check_s_geometric(f, interval, 1.0, coarse);
    REQUIRE_FALSE(coarse_verdict.holds);

    // 17 = 2*9-1 log-spaced points contain the coarse axis exactly
    SampleGrid fine;
    fine.points_per_axis = 17;
    auto fine_verdict = check_s_geometric(f, interval, 1.0, fine);
    CHECK_FALSE(fine_verdict.holds);
    CHECK(fine_verdict.worst_margin <= coarse_verdict.worst_margin);
}

TEST_CASE("serial and parallel scans agree bitwise") {
    Interval interval(0.5, 4.0);
    FunctionHandle f("exp(-x)", {}, interval);
    SampleGrid grid;
    grid.points_per_axis = 33;
    auto serial = check_s_geometric(f, interval, 0.8, grid, ExecMode::Serial);
    auto parallel = check_s_geometric(f, interval, 0.8, grid, ExecMode::Auto);
    CHECK(serial.holds == parallel.holds);
    CHECK(serial.worst_margin == parallel.worst_margin);
    REQUIRE(serial.witness.has_value() == parallel.witness.has_value());
    if (serial.witness) {
        CHECK(serial.witness->x == parallel.witness->x);
        CHECK(serial.witness->y == parallel.witness->y);
        CHECK(serial.witness->t == parallel.witness->t);
    }
}

TEST_CASE("grid validation") {
    Interval interval(0.5, 2.0);
    FunctionHandle f("x", {}, interval);
    SampleGrid bad;
    bad.points_per_axis = 2;
    CHECK_THROWS_AS(check_s_geometric(f, interval, 1.0, bad), DomainError);
    bad = SampleGrid{};
    bad.t_values = {0.5, 0.25};
    CHECK_THROWS_AS(check_s_geometric(f, interval, 1.0, bad), DomainError);
    CHECK_THROWS_AS(check_s_geometric(f, interval, 0.0), DomainError);
    CHECK_THROWS_AS(check_s_geometric(f, interval, 1.5), DomainError);
}
