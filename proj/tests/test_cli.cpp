#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "geomhh/cli.hpp"
#include "geomhh/report.hpp"
#include "geomhh/sweep.hpp"

using namespace geomhh;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run_command(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("sweep engine") {
    SUBCASE("singleton lemma sweep") {
        sweep::SweepSpec spec;
        spec.function_source = "x^2";
        spec.a_values = {1.0};
        spec.b_values = {2.0};
        spec.checks = {"lemma"};
        auto result = sweep::run_sweep(spec);
        REQUIRE(result.records.size() == 2);
        for (const auto& r : result.records) {
            CHECK(r.pass);
            CHECK(*r.lhs <= 1e-8);
        }
        CHECK(result.summary.passed == 2);
        CHECK(result.summary.failed == 0);
    }
    SUBCASE("empty checks yield an empty result") {
        sweep::SweepSpec spec;
        spec.a_values = {1.0};
        spec.b_values = {2.0};
        auto result = sweep::run_sweep(spec);
        CHECK(result.records.empty());
        CHECK(result.summary.total == 0);
    }
    SUBCASE("power family sweep over the full grid passes everywhere") {
        sweep::SweepSpec spec;
        spec.function_source = "x^s/s";
        spec.a_values = {0.25, 0.5, 0.75};
        spec.b_values = {0.5, 0.75, 1.0};
        spec.s_values = {0.1, 0.3, 0.5, 0.7, 0.9};
        spec.q_values = {1.0, 2.0, 5.0};
        spec.checks = {"thm21"};
        auto result = sweep::run_sweep(spec);
        CHECK(result.records.size() == 6u * 5u * 3u * 2u);
        CHECK(result.summary.failed == 0);
        CHECK(result.summary.errors == 0);
        CHECK(result.summary.worst_margin >= -1e-12);
    }
    SUBCASE("triangular interval grid and automatic q filtering") {
        sweep::SweepSpec spec;
        spec.a_values = {0.25, 0.5, 0.75};
        spec.b_values = {0.5, 0.75, 1.0};
        spec.s_values = {0.5};
        spec.q_values = {1.0, 2.0};
        spec.checks = {"thm22"};
        auto result = sweep::run_sweep(spec);
        // 6 valid pairs, q=1 dropped for the strict-q check, two rows per point
        CHECK(result.records.size() == 6 * 1 * 2);
        for (const auto& r : result.records) CHECK(r.pass);
    }
    SUBCASE("per-point failures are recorded and the sweep continues") {
        sweep::SweepSpec spec;
        spec.function_source = "ln(x-2)";
        spec.a_values = {0.5, 3.0};
        spec.b_values = {1.0, 4.0};
        spec.checks = {"lemma"};
        auto result = sweep::run_sweep(spec);
        CHECK(result.summary.errors > 0);
        bool found_good = false;
        for (const auto& r : result.records)
            if (r.error.empty() && r.a == 3.0) found_good = true;
        CHECK(found_good);
    }
    SUBCASE("unknown check rejected") {
        sweep::SweepSpec spec;
        spec.a_values = {1.0};
        spec.b_values = {2.0};
        spec.checks = {"nope"};
        CHECK_THROWS_AS(sweep::run_sweep(spec), DomainError);
    }
    SUBCASE("q below one rejected at the grid level") {
        sweep::SweepSpec spec;
        spec.a_values = {1.0};
        spec.b_values = {2.0};
        spec.q_values = {0.5};
        spec.checks = {"thm21"};
        CHECK_THROWS_AS(sweep::run_sweep(spec), DomainError);
    }
}

TEST_CASE("records follow the requested check order, then grid order") {
    sweep::SweepSpec spec;
    spec.function_source = "x^2";
    spec.a_values = {0.5, 1.0};
    spec.b_values = {2.0};
    spec.checks = {"chain", "lemma"};
    auto result = sweep::run_sweep(spec);
    REQUIRE(result.records.size() == 2 * 4 + 2 * 2);
    for (size_t i = 0; i < 8; ++i) CHECK(result.records[i].check == "chain");
    for (size_t i = 8; i < 12; ++i) CHECK(result.records[i].check == "lemma");
    CHECK(result.records[0].a == 0.5);
    CHECK(result.records[4].a == 1.0);
}

TEST_CASE("sweep determinism") {
    sweep::SweepSpec spec;
    spec.function_source = "x^s/s";
    spec.a_values = {0.25, 0.5};
    spec.b_values = {0.75, 1.0};
    spec.s_values = {0.3, 0.7};
    spec.q_values = {1.0, 2.0};
    spec.checks = {"lemma", "chain", "thm21", "thm22", "prop31", "prop32"};

    auto first = sweep::run_sweep(spec, parallel::ExecMode::Auto);
    auto second = sweep::run_sweep(spec, parallel::ExecMode::Auto);
    auto serial = sweep::run_sweep(spec, parallel::ExecMode::Serial);

    const std::string csv1 = report::to_csv(first);
    const std::string csv2 = report::to_csv(second);
    const std::string csv3 = report::to_csv(serial);
    CHECK(csv1 == csv2);
    CHECK(csv1 == csv3);
    CHECK(first.summary.passed == serial.summary.passed);
}

TEST_CASE("csv shape") {
    sweep::SweepSpec spec;
    spec.function_source = "x^2";
    spec.a_values = {1.0};
    spec.b_values = {2.0};
    spec.checks = {"hh"};
    auto result = sweep::run_sweep(spec);
    const std::string csv = report::to_csv(result);
    CHECK(csv.rfind("check,a,b,s,q,side,lhs,rhs,margin,case,pass,err_estimate\n", 0) == 0);
    // header + one line per record
    size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == result.records.size() + 1);
}

TEST_CASE("bound subcommand") {
    auto r = run({"bound", "--f", "x^s/s", "--param", "s=0.5", "--a", "0.25", "--b", "1",
                  "--q", "2", "--theorem", "21"});
    CHECK(r.exit_code == cli::kExitPass);
    auto j = json::parse(r.out);
    CHECK(j["trapezoid"]["margin"].get<double>() > 0.0);
    CHECK(j["midpoint"]["margin"].get<double>() > 0.0);
    CHECK(j["case"] == "both_above_one");
    CHECK(j["s"].get<double>() == 0.5); // picked up from the binding
}

TEST_CASE("bound precheck warns without changing the evaluation") {
    std::ostringstream out, err;
    int code = cli::run_command({"bound", "--f", "sqrt(x)", "--a", "0.1", "--b", "0.9", "--q",
                                 "1", "--s", "0.2", "--precheck"},
                                out, err);
    CHECK(code == cli::kExitPass); // the inequality itself still holds here
    CHECK(err.str().find("warning") != std::string::npos);

    std::ostringstream out2, err2;
    code = cli::run_command({"bound", "--f", "x^s/s", "--param", "s=0.5", "--a", "0.25", "--b",
                             "1", "--q", "2", "--precheck"},
                            out2, err2);
    CHECK(code == cli::kExitPass);
    CHECK(err2.str().empty());
}

TEST_CASE("means subcommand") {
    auto r = run({"means", "--kind", "L", "--a", "1", "--b", "2.718281828459045"});
    CHECK(r.exit_code == cli::kExitPass);
    CHECK(std::fabs(std::strtod(r.out.c_str(), nullptr) - (M_E - 1.0)) <= 1e-12);

    r = run({"means", "--kind", "Lp", "--a", "2", "--b", "5", "--p", "1"});
    CHECK(r.exit_code == cli::kExitPass);
    CHECK(std::fabs(std::strtod(r.out.c_str(), nullptr) - 3.5) <= 1e-14);

    r = run({"means", "--kind", "Lp", "--a", "2", "--b", "5", "--p", "0"});
    CHECK(r.exit_code == cli::kExitNumerical);

    r = run({"means", "--kind", "X", "--a", "1", "--b", "2"});
    CHECK(r.exit_code == cli::kExitUsage);
}

TEST_CASE("chain subcommand") {
    auto r = run({"chain", "--f", "exp(x)", "--a", "1", "--b", "2"});
    CHECK(r.exit_code == cli::kExitPass);
    auto j = json::parse(r.out);
    CHECK(j["ordered"].get<bool>());
}

TEST_CASE("convexity subcommand") {
    auto ok = run({"convexity", "--f", "x^2", "--a", "0.5", "--b", "2", "--s", "1"});
    CHECK(ok.exit_code == cli::kExitPass);

    auto bad = run({"convexity", "--f", "exp(-x)", "--a", "1", "--b", "4", "--s", "1"});
    CHECK(bad.exit_code == cli::kExitViolation);
    auto j = json::parse(bad.out);
    CHECK_FALSE(j["holds"].get<bool>());
    CHECK(j.contains("witness"));
}

TEST_CASE("props subcommand") {
    auto r = run({"props", "--prop", "31", "--s", "0.3,0.6", "--q", "1,2", "--a", "0.25",
                  "--b", "0.75", "--format", "csv"});
    CHECK(r.exit_code == cli::kExitPass);
    CHECK(r.out.find("prop31") != std::string::npos);
}

TEST_CASE("verify subcommand") {
    SUBCASE("missing spec file is a usage error with an error record") {
        auto r = run({"verify", "--spec", "missing.json"});
        CHECK(r.exit_code == cli::kExitUsage);
        auto j = json::parse(r.out);
        CHECK(j.contains("error"));
    }
    SUBCASE("spec file drives the sweep; flags override") {
        const char* path = "test_cli_spec.json";
        {
            std::ofstream f(path);
            f << R"({"f": "x^2", "a": [1.0], "b": [2.0], "checks": ["lemma", "hh"]})";
        }
        auto r = run({"verify", "--spec", path, "--format", "csv"});
        std::remove(path);
        CHECK(r.exit_code == cli::kExitPass);
        CHECK(r.out.find("lemma") != std::string::npos);
        CHECK(r.out.find("hh") != std::string::npos);
    }
    SUBCASE("empty checks in a spec file give an empty passing result") {
        const char* path = "test_cli_empty.json";
        {
            std::ofstream f(path);
            f << R"({"f": "x^2", "a": [1.0], "b": [2.0], "checks": []})";
        }
        auto r = run({"verify", "--spec", path});
        std::remove(path);
        CHECK(r.exit_code == cli::kExitPass);
        auto j = json::parse(r.out);
        CHECK(j["records"].empty());
    }
    SUBCASE("violations exit 1") {
        auto r = run({"verify", "--f", "exp(-x)", "--checks", "convexity", "--a", "1", "--b",
                      "4", "--s", "1"});
        CHECK(r.exit_code == cli::kExitViolation);
    }
    SUBCASE("numerical failures exit 3 even when other points pass") {
        auto r = run({"verify", "--f", "ln(x-2)", "--checks", "lemma", "--a", "0.5,3", "--b",
                      "1,4"});
        CHECK(r.exit_code == cli::kExitNumerical);
    }
    SUBCASE("inline expression parse error exits 2") {
        auto r = run({"verify", "--f", "ln(x", "--checks", "lemma", "--a", "1", "--b", "2"});
        CHECK(r.exit_code == cli::kExitUsage);
    }
}

TEST_CASE("usage errors") {
    CHECK(run({}).exit_code == cli::kExitUsage);
    CHECK(run({"bogus"}).exit_code == cli::kExitUsage);
    CHECK(run({"bound", "--a", "1", "--b", "2"}).exit_code == cli::kExitUsage); // missing --f
    CHECK(run({"bound", "--f", "x", "--a", "1", "--b", "2", "--param", "oops"}).exit_code ==
          cli::kExitUsage);
}

TEST_CASE("tolerance environment override") {
    setenv("GEOCONVEX_TOL", "1e-6", 1);
    auto r = run({"bound", "--f", "x", "--a", "1", "--b", "2"});
    unsetenv("GEOCONVEX_TOL");
    CHECK(r.exit_code == cli::kExitPass);
}

TEST_CASE("verify full suite is byte-deterministic modulo the meta header") {
    auto strip_meta = [](const std::string& text) {
        std::istringstream in(text);
        std::string line, kept;
        while (std::getline(in, line)) {
            if (line.find("\"timestamp\"") != std::string::npos) continue;
            if (line.find("\"wall_time_ms\"") != std::string::npos) continue;
            kept += line;
            kept += '\n';
        }
        return kept;
    };
    auto first = run({"verify"});
    auto second = run({"verify"});
    CHECK(first.exit_code == cli::kExitPass);
    CHECK(second.exit_code == cli::kExitPass);
    CHECK(strip_meta(first.out) == strip_meta(second.out));
    CHECK(first.out.find("\"timestamp\"") != std::string::npos);
}
