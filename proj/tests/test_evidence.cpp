#include <cmath>

#include "doctest.h"
#include "tangent/evidence.hpp"

using namespace tangent;

TEST_CASE("example 1: the corrected parabola holds numerically on (0, 1)") {
    ExprPtr f = parse_expr("sqrt(1-x) - sqrt(x)");
    ExprPtr parabola = parse_expr("-sqrt(2)*(x^2 - 1/4)");
    auto report = numeric_evidence(f, parabola, Interval::open(rational(0), rational(1)), 10000,
                                   1e-9);
    CHECK(report.holds());
    CHECK(std::fabs(report.min_gap) <= 1e-6);
    CHECK(report.argmin == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(report.flag == "evidence, not certificate");
}

TEST_CASE("example 1: the published line fails, witnessed around x = 0.64") {
    ExprPtr f = parse_expr("sqrt(1-x) - sqrt(x)");
    ExprPtr line = parse_expr("-sqrt(2)*(x - 1/2)");
    auto report = numeric_evidence(f, line, Interval::open(rational(0), rational(1)), 10000, 1e-9);
    CHECK(report.verdict == EvidenceReport::Verdict::Violated);
    REQUIRE(report.witness.has_value());
    CHECK(report.witness_value < -1e-9);
    // the violated region covers the published counterexample point 0.64
    bool witnessed_around_064 = false;
    for (const auto& [x, gap] : report.violations)
        if (x > 0.6 && x < 0.7 && gap < -1e-9) witnessed_around_064 = true;
    CHECK(witnessed_around_064);
}

TEST_CASE("identical expressions give a zero gap") {
    ExprPtr f = parse_expr("x^2 - x/3");
    auto report = numeric_evidence(f, f, Interval::open(rational(-1), rational(1)), 500, 1e-9);
    CHECK(report.holds());
    CHECK(report.min_gap == 0.0);
}

TEST_CASE("domain violations inside the interval propagate") {
    ExprPtr f = parse_expr("sqrt(x - 1/2)");
    ExprPtr g = parse_expr("0*x");
    CHECK_THROWS_AS(numeric_evidence(f, g, Interval::open(rational(0), rational(1)), 200, 1e-9),
                    EvalDomainError);
}

TEST_CASE("input validation") {
    ExprPtr f = parse_expr("x");
    CHECK_THROWS_AS(numeric_evidence(f, f, Interval::open(rational(0), rational(1)), 50, 1e-9),
                    std::invalid_argument);
    CHECK_THROWS_AS(numeric_evidence(f, f, Interval::at_least(rational(0)), 500, 1e-9),
                    std::invalid_argument);
}
