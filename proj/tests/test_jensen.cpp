#include <cmath>
#include <random>

#include "doctest.h"
#include "tangent/jensen.hpp"

using namespace tangent;

namespace {

ConstraintSpec sum_constraint(const BigRational& budget, int n) {
    ConstraintSpec c;
    c.family = ConstraintFamily::Sum;
    c.budget = budget;
    c.n = n;
    return c;
}

CandidateCurve line_candidate(const ExprPtr& f, const BigRational& x0) {
    CandidateCurve cand;
    cand.curve = tangent_line(f, x0);
    cand.summation = SummationRule::DirectL;
    return cand;
}

ProblemSpec make_problem(const char* fn, ConstraintSpec constraint, Interval domain,
                         Direction direction, const char* bound) {
    ProblemSpec p;
    p.id = "test";
    p.functions = {parse_expr(fn)};
    p.n = constraint.n;
    p.constraint = std::move(constraint);
    p.domain = std::move(domain);
    p.direction = direction;
    p.bound = parse_expr(bound);
    return p;
}

// sum f(x_j) stays on the right side of n f(x0) over constraint samples
void jensen_numeric_oracle(const ProofCertificate& cert, int samples) {
    REQUIRE(cert.exact());
    REQUIRE(cert.conclusion.n_f_x0.has_value());
    double bound = to_double(*cert.conclusion.n_f_x0);
    bool upper = cert.problem.direction == Direction::UpperBound;
    auto tuples = sample_constraint_tuples(cert.problem.constraint, cert.problem.domain, samples,
                                           cert.seed);
    for (const auto& tuple : tuples) {
        double total = 0;
        for (std::size_t j = 0; j < tuple.size(); ++j) {
            const ExprPtr& f = cert.problem.functions.size() == 1 ? cert.problem.f()
                                                                  : cert.problem.functions[j];
            total += eval_numeric(f, tuple[j]);
        }
        if (upper)
            REQUIRE(total <= bound + 1e-9);
        else
            REQUIRE(total >= bound - 1e-9);
    }
}

}  // namespace

TEST_CASE("theorem 1 route: the Baltic 2011 inequality (internal >= form)") {
    // prove works on the negated function for upper bounds; exercised here
    // directly in the >= sense
    ExprPtr f = parse_expr("-(x/(x^3+8))");
    auto cert = prove_theorem1(f, line_candidate(f, rational(1)), sum_constraint(rational(4), 4),
                               Interval::open(rational(0), rational(4)));
    REQUIRE(cert.route == Route::Theorem1);
    CHECK(*cert.conclusion.n_f_x0 == rational(-4, 9));
    REQUIRE(cert.curves.size() == 1);
    REQUIRE(cert.curves[0].factorization.has_value());
    CHECK(cert.curves[0].factorization->cofactor ==
          Polynomial({rational(8), rational(5), rational(2)}));
}

TEST_CASE("theorem 1 route reports an indefinite witness for sample problem 3") {
    ExprPtr f = parse_expr("10*x^3 - 9*x^5");
    auto cert = prove_theorem1(f, line_candidate(f, rational(1, 3)),
                               sum_constraint(rational(1), 3),
                               Interval::half_open_right(rational(0), rational(1)));
    CHECK(cert.route == Route::Failure);
    REQUIRE(!cert.curves.empty());
    REQUIRE(cert.curves[0].cofactor_sign.has_value());
    CHECK(cert.curves[0].cofactor_sign->verdict == SignVerdict::Indefinite);
    // the crossing lies above 0.9
    CHECK(*cert.curves[0].cofactor_sign->witness_negative > rational(9, 10));
}

TEST_CASE("auto_split recovers the published 0,9 carve for sample problem 3") {
    ExprPtr f = parse_expr("10*x^3 - 9*x^5");
    std::string why;
    auto carved = auto_split(f, line_candidate(f, rational(1, 3)),
                             Interval::half_open_right(rational(0), rational(1)), &why);
    REQUIRE(carved.has_value());
    CHECK(*carved->lo == rational(9, 10));
    CHECK(!carved->lo_open);
    CHECK(*carved->hi == rational(1));
    CHECK(!carved->hi_open);
}

TEST_CASE("auto_split refuses a two-sided crossing: x^3 at the origin") {
    ExprPtr f = parse_expr("x^3");
    CandidateCurve cand;
    cand.curve = tangent_line(f, rational(0));
    std::string why;
    auto carved = auto_split(f, cand, Interval::open(rational(-1), rational(1)), &why);
    CHECK(!carved.has_value());
    CHECK(why.find("touch point") != std::string::npos);
}

TEST_CASE("split route: sample problem 3 closes with G = [9/10, 1]") {
    ExprPtr f = parse_expr("10*x^3 - 9*x^5");
    Interval domain = Interval::half_open_right(rational(0), rational(1));
    Interval carved = Interval::closed(rational(9, 10), rational(1));
    auto cert = prove_with_split(f, line_candidate(f, rational(1, 3)),
                                 sum_constraint(rational(1), 3), domain, carved);
    REQUIRE(cert.route == Route::Theorem2Split);
    REQUIRE(cert.split.has_value());
    CHECK(cert.split->extremum_G.value == rational(1));
    CHECK(*cert.split->extremum_G.argmin == rational(1));
    CHECK(cert.split->extremum_I.value == rational(0));
    CHECK(cert.split->n_f_x0 == rational(1));
    CHECK(*cert.conclusion.n_f_x0 == rational(1));
}

TEST_CASE("split route: G = [1/2, 1] breaks the minimum condition") {
    ExprPtr f = parse_expr("10*x^3 - 9*x^5");
    Interval domain = Interval::half_open_right(rational(0), rational(1));
    Interval carved = Interval::closed(rational(1, 2), rational(1));
    auto cert = prove_with_split(f, line_candidate(f, rational(1, 3)),
                                 sum_constraint(rational(1), 3), domain, carved);
    CHECK(cert.route == Route::Failure);
    bool found = false;
    for (const auto& d : cert.diagnostics)
        if (d.find("SplitConditionFails") != std::string::npos) found = true;
    CHECK(found);
    // min over [1/2, 1] is f(1/2) = 31/32, checked through the stored data
    REQUIRE(cert.split.has_value());
    CHECK(cert.split->extremum_G.value == rational(31, 32));
}

TEST_CASE("prove: a left-side crossing splits through the mirrored carve") {
    // sample problem 3 mirrored around 1/2: the tangent crossing moves below
    // x0 and the carve lands on [0, 1/10]
    ProblemSpec p = make_problem("10*(1-x)^3 - 9*(1-x)^5", sum_constraint(rational(2), 3),
                                 Interval::half_open_left(rational(0), rational(1)),
                                 Direction::LowerBound, "1");
    auto cert = prove(p);
    REQUIRE(cert.route == Route::Theorem2Split);
    CHECK(cert.proved());
    REQUIRE(cert.split.has_value());
    CHECK(cert.split->carved == Interval::closed(rational(0), rational(1, 10)));
    CHECK(cert.split->extremum_G.value == rational(1));
    CHECK(cert.split->extremum_I.value == rational(0));
    CHECK(*cert.conclusion.n_f_x0 == rational(1));
    jensen_numeric_oracle(cert, 2000);
}

TEST_CASE("split route: an interior carve certifies both remainder pieces") {
    // G strictly inside (0, 1] leaves two regions; the right piece still
    // contains the crossing, so the sign run fails there
    ExprPtr f = parse_expr("10*x^3 - 9*x^5");
    Interval domain = Interval::half_open_right(rational(0), rational(1));
    Interval carved = Interval::closed(rational(17, 20), rational(19, 20));
    auto cert = prove_with_split(f, line_candidate(f, rational(1, 3)),
                                 sum_constraint(rational(1), 3), domain, carved);
    CHECK(cert.route == Route::Failure);
    bool right_piece_failed = false;
    for (const auto& d : cert.diagnostics)
        if (d.find("fails on [19/20, 1]") != std::string::npos) right_piece_failed = true;
    CHECK(right_piece_failed);
}

TEST_CASE("theorem 1 with l'(x0) = 0: a constant curve and the summed-bound fallback") {
    // base_curve on l = x^2 at x0 = 0 has k = 0, and f'(0) = 1 breaks
    // tangency; the touch point cannot match the power-sum budget either, so
    // the conclusion falls back to k B + n m = n m
    ExprPtr f = parse_expr("x^3 + x + 2");
    ConstraintSpec c;
    c.family = ConstraintFamily::PowerSum;
    c.alpha = rational(2);
    c.budget = rational(4);
    c.n = 3;
    CandidateCurve cand;
    cand.curve = base_curve(f, parse_expr("x^2"), rational(0));
    cand.summation = SummationRule::DirectL;
    REQUIRE(*cand.curve.k == rational(0));
    auto cert = prove_theorem1(f, cand, c, Interval::closed(rational(0), rational(2)));
    REQUIRE(cert.route == Route::Theorem1);
    CHECK(*cert.conclusion.n_f_x0 == rational(6));
    CHECK(!cert.curves[0].factorization.has_value());  // no tangency to factor
}

TEST_CASE("theorem 1 rejects a direct-summation curve built on the wrong l") {
    ExprPtr f = parse_expr("1/(x^3+2)");
    CandidateCurve cand;
    cand.curve = base_curve(f, parse_expr("x^2"), rational(1));
    cand.summation = SummationRule::DirectL;
    // sum constraint, but the curve is k x^2 + m
    auto cert = prove_theorem1(f, cand, sum_constraint(rational(3), 3),
                               Interval::open(rational(0), rational(3)));
    CHECK(cert.route == Route::Failure);
    bool mismatch_reported = false;
    for (const auto& d : cert.diagnostics)
        if (d.find("match the constraint") != std::string::npos) mismatch_reported = true;
    CHECK(mismatch_reported);
}

TEST_CASE("theorem 5: the Baltic 2002 cubic family") {
    // negated form of x(1-x)^2: a = -1, b = 2, c = -1, d = 0
    for (int n = 2; n <= 10; ++n) {
        auto cert = theorem5_cubic(rational(-1), rational(2), rational(-1), rational(0), n,
                                   rational(1, n));
        REQUIRE(cert.route == Route::Theorem5Cubic);
        CHECK(cert.cubic->endpoint_low == rational(2) - rational(2, n));
        CHECK(cert.cubic->endpoint_high == rational(n - 2, n));
        // n f(1/n) = -(1 - 1/n)^2 in the negated sense
        BigRational expected = -pow(rational(n - 1, n), 2);
        CHECK(*cert.conclusion.n_f_x0 == expected);
    }
    SUBCASE("n = 1 is the trivial equality") {
        auto cert = theorem5_cubic(rational(-1), rational(2), rational(-1), rational(0), 1,
                                   rational(1));
        CHECK(cert.route == Route::Theorem5Cubic);
        CHECK(cert.cubic->trivial_n1);
    }
    SUBCASE("note-4 family: nonconvex on [0, 3] but the conditions hold") {
        auto cert = theorem5_cubic(rational(1), rational(-1), rational(0), rational(0), 3,
                                   rational(1));
        CHECK(cert.route == Route::Theorem5Cubic);
        CHECK(cert.cubic->endpoint_low == rational(1));
        CHECK(cert.cubic->endpoint_high == rational(4));
    }
    SUBCASE("failing condition is reported with its slack") {
        auto cert = theorem5_cubic(rational(1), rational(-5), rational(0), rational(0), 2,
                                   rational(1));
        CHECK(cert.route == Route::Failure);
        REQUIRE(!cert.diagnostics.empty());
        CHECK(cert.diagnostics[0].find("2 a x0 + b = -3") != std::string::npos);
    }
    SUBCASE("a = 0 is rejected") {
        CHECK_THROWS_AS(theorem5_cubic(rational(0), rational(1), rational(0), rational(0), 2,
                                       rational(1)),
                        std::invalid_argument);
    }
}

TEST_CASE("theorem 5 exhaustive grid cross-check") {
    // wherever the endpoint conditions pass, grid-minimizing sum P over the
    // constraint simplex stays above n P(x0)
    for (long a = -3; a <= 3; ++a) {
        if (a == 0) continue;
        for (long b = -3; b <= 3; ++b) {
            for (long c : {-1L, 0L, 1L}) {
                for (int n : {2, 3, 4}) {
                    for (auto [x0n, x0d] : {std::pair<long, long>{1, 2}, {1, 1}, {2, 1}}) {
                        BigRational x0 = rational(x0n, x0d);
                        auto cert = theorem5_cubic(rational(a), rational(b), rational(c),
                                                   rational(0), n, x0);
                        if (cert.route != Route::Theorem5Cubic) continue;
                        double bound = to_double(*cert.conclusion.n_f_x0);
                        double s = to_double(x0) * n;
                        double step = to_double(x0) / 20;
                        auto P = [&](double x) {
                            return ((a * x + b) * x + c) * x;
                        };
                        double min_found = 1e300;
                        int cells = static_cast<int>(std::lround(s / step));
                        if (n == 2) {
                            for (int i = 0; i <= cells; ++i) {
                                double x1 = i * step;
                                min_found = std::min(min_found, P(x1) + P(s - x1));
                            }
                        } else if (n == 3) {
                            for (int i = 0; i <= cells; ++i)
                                for (int j = 0; i + j <= cells; ++j) {
                                    double x1 = i * step, x2 = j * step;
                                    min_found = std::min(min_found, P(x1) + P(x2) + P(s - x1 - x2));
                                }
                        } else {
                            for (int i = 0; i <= cells; ++i)
                                for (int j = 0; i + j <= cells; ++j)
                                    for (int k = 0; i + j + k <= cells; ++k) {
                                        double x1 = i * step, x2 = j * step, x3 = k * step;
                                        min_found = std::min(min_found, P(x1) + P(x2) + P(x3) +
                                                                            P(s - x1 - x2 - x3));
                                    }
                        }
                        CAPTURE(a);
                        CAPTURE(b);
                        CAPTURE(c);
                        CAPTURE(n);
                        REQUIRE(min_found >= bound - 1e-9);
                    }
                }
            }
        }
    }
}

TEST_CASE("touch points: example 3 solves to (1, 1, 2, 4) exactly") {
    std::vector<ExprPtr> fs = {parse_expr("1/x"), parse_expr("1/x"), parse_expr("4/x"),
                               parse_expr("16/x")};
    auto sol = solve_touchpoints(fs, Expr::variable(), rational(8),
                                 Interval::open(rational(0), rational(8)));
    REQUIRE(sol.exact_points.has_value());
    std::vector<BigRational> expected = {rational(1), rational(1), rational(2), rational(4)};
    CHECK(*sol.exact_points == expected);
    CHECK(*sol.exact_slope == rational(-1));
}

TEST_CASE("touch points: symmetric cases collapse to B/n") {
    std::vector<ExprPtr> two = {parse_expr("1/x"), parse_expr("1/x")};
    auto sol = solve_touchpoints(two, Expr::variable(), rational(4),
                                 Interval::open(rational(0), rational(4)));
    REQUIRE(sol.exact_points.has_value());
    CHECK((*sol.exact_points)[0] == rational(2));
    CHECK((*sol.exact_points)[1] == rational(2));
}

TEST_CASE("touch points: non-monotone slope is rejected") {
    std::vector<ExprPtr> fs = {parse_expr("x^3 - x"), parse_expr("x^3 - x")};
    CHECK_THROWS_AS(solve_touchpoints(fs, Expr::variable(), rational(1),
                                      Interval::open(rational(-2), rational(2))),
                    NonMonotoneSlope);
}

TEST_CASE("case 2: example 3 proves sum >= 8 with tangents 2-a, 2-b, 4-c, 8-d") {
    std::vector<ExprPtr> fs = {parse_expr("1/x"), parse_expr("1/x"), parse_expr("4/x"),
                               parse_expr("16/x")};
    auto cert = prove_case2(fs, sum_constraint(rational(8), 4),
                            Interval::open(rational(0), rational(8)));
    REQUIRE(cert.route == Route::Case2Heterogeneous);
    CHECK(*cert.conclusion.n_f_x0 == rational(8));
    REQUIRE(cert.curves.size() == 4);
    BigRational expected_m[] = {rational(2), rational(2), rational(4), rational(8)};
    for (int j = 0; j < 4; ++j) {
        CHECK(*cert.curves[j].curve.k == rational(-1));
        CHECK(*cert.curves[j].curve.m == expected_m[j]);
    }
}

TEST_CASE("case 2 degenerates to the theorem 1 conclusion for identical functions") {
    std::vector<ExprPtr> fs = {parse_expr("1/x"), parse_expr("1/x"), parse_expr("1/x")};
    ConstraintSpec c = sum_constraint(rational(3), 3);
    auto case2 = prove_case2(fs, c, Interval::open(rational(0), rational(3)));
    REQUIRE(case2.route == Route::Case2Heterogeneous);
    REQUIRE(case2.touch_points.has_value());
    for (const auto& t : *case2.touch_points) CHECK(t == rational(1));

    ExprPtr f = parse_expr("1/x");
    auto theorem1 = prove_theorem1(f, line_candidate(f, rational(1)), c,
                                   Interval::open(rational(0), rational(3)));
    REQUIRE(theorem1.route == Route::Theorem1);
    CHECK(*case2.conclusion.n_f_x0 == *theorem1.conclusion.n_f_x0);
}

TEST_CASE("normalize_homogeneous rewrites example 3 to the budget-8 form") {
    ProblemSpec p;
    p.id = "example3";
    p.functions = {parse_expr("1/x"), parse_expr("1/x"), parse_expr("4/x"), parse_expr("16/x")};
    p.n = 4;
    p.constraint = sum_constraint(rational(0), 4);
    p.domain = Interval::at_least(rational(0), true);
    p.direction = Direction::LowerBound;
    p.bound = parse_expr("64/x");
    p.homogeneous_degree = rational(-1);
    p.normalize_budget = rational(8);

    ProblemSpec out = normalize_homogeneous(p);
    CHECK(out.constraint.budget == rational(8));
    CHECK(out.bound->is_const(rational(8)));
    CHECK(*out.domain.hi == rational(8));

    SUBCASE("degree-0 functions keep their constant bound") {
        ProblemSpec z = p;
        z.functions = {parse_expr("(x^2 + 3*x^2)/(2*x^2)")};  // constant 2, degree 0
        z.n = 1;
        z.homogeneous_degree = rational(0);
        z.normalize_budget.reset();
        z.bound = parse_expr("2");
        ProblemSpec zn = normalize_homogeneous(z);
        CHECK(zn.constraint.budget == rational(1));
        CHECK(zn.bound->is_const(rational(2)));
    }
    SUBCASE("non-homogeneous input is rejected") {
        ProblemSpec bad = p;
        bad.functions = {parse_expr("x + x^2")};
        bad.n = 1;
        CHECK_THROWS_AS(normalize_homogeneous(bad), NotHomogeneous);
    }
}

TEST_CASE("prove: the Baltic 2011 corpus problem end to end") {
    ProblemSpec p = make_problem("x/(x^3+8)", sum_constraint(rational(4), 4),
                                 Interval::open(rational(0), rational(4)),
                                 Direction::UpperBound, "4/9");
    auto cert = prove(p);
    REQUIRE(cert.route == Route::Theorem1);
    CHECK(cert.proved());
    // certificate fields are in the original (<=) sense
    CHECK(*cert.conclusion.n_f_x0 == rational(4, 9));
    REQUIRE(cert.curves.size() == 1);
    CHECK(*cert.curves[0].curve.k == rational(2, 27));
    CHECK(*cert.curves[0].curve.m == rational(1, 27));
    CHECK(cert.curves[0].required_sign == -1);
    REQUIRE(cert.curves[0].factorization.has_value());
    CHECK(cert.curves[0].factorization->cofactor ==
          Polynomial({rational(-8), rational(-5), rational(-2)}));
    CHECK(cert.curves[0].factorization->denominator ==
          Polynomial({rational(216), rational(0), rational(0), rational(27)}));
    jensen_numeric_oracle(cert, 2000);
}

TEST_CASE("prove: sample problem 3 routes through the split") {
    ProblemSpec p = make_problem("10*x^3 - 9*x^5", sum_constraint(rational(1), 3),
                                 Interval::half_open_right(rational(0), rational(1)),
                                 Direction::LowerBound, "1");
    auto cert = prove(p);
    REQUIRE(cert.route == Route::Theorem2Split);
    CHECK(cert.proved());
    CHECK(cert.split->carved == Interval::closed(rational(9, 10), rational(1)));
    jensen_numeric_oracle(cert, 2000);
}

TEST_CASE("prove: example 1 runs on numeric evidence with the line rejected") {
    ConstraintSpec c;
    c.family = ConstraintFamily::PowerSum;
    c.alpha = rational(2);
    c.budget = rational(1);
    c.n = 4;
    ProblemSpec p = make_problem("sqrt(1-x) - sqrt(x)", c, Interval::open(rational(0), rational(1)),
                                 Direction::LowerBound, "0");
    auto cert = prove(p);
    REQUIRE(cert.route == Route::NumericEvidenceOnly);
    CHECK(cert.proved());
    CHECK(!cert.exact());

    bool parabola_selected = false, line_rejected = false;
    for (const auto& ev : cert.evidence) {
        if (ev.selected && ev.curve.family == CurveFamily::PowerCurve && ev.report.holds())
            parabola_selected = true;
        if (ev.curve.family == CurveFamily::Line && !ev.report.holds()) {
            for (const auto& [x, gap] : ev.report.violations)
                if (x > 0.6 && x < 0.7) line_rejected = true;
        }
    }
    CHECK(parabola_selected);
    CHECK(line_rejected);
}

TEST_CASE("prove: sample problem 5 takes the cubic fast path") {
    ProblemSpec p = make_problem("x*(1-x)^2", sum_constraint(rational(1), 3),
                                 Interval::closed(rational(0), rational(1)),
                                 Direction::UpperBound, "4/9");
    auto cert = prove(p);
    REQUIRE(cert.route == Route::Theorem5Cubic);
    CHECK(cert.proved());
    CHECK(*cert.conclusion.n_f_x0 == rational(4, 9));
    REQUIRE(cert.cubic.has_value());
    CHECK(cert.cubic->a == rational(-1));
    CHECK(cert.cubic->b == rational(2));
    CHECK(cert.cubic->c == rational(-1));
    CHECK(cert.cubic->d == rational(0));
    jensen_numeric_oracle(cert, 2000);
}

TEST_CASE("prove: example 3 from the homogeneous original") {
    ProblemSpec p;
    p.id = "example3";
    p.functions = {parse_expr("1/x"), parse_expr("1/x"), parse_expr("4/x"), parse_expr("16/x")};
    p.n = 4;
    p.constraint = sum_constraint(rational(0), 4);
    p.domain = Interval::at_least(rational(0), true);
    p.direction = Direction::LowerBound;
    p.bound = parse_expr("64/x");
    p.homogeneous_degree = rational(-1);
    p.normalize_budget = rational(8);

    auto cert = prove(p);
    REQUIRE(cert.route == Route::Case2Heterogeneous);
    CHECK(cert.proved());
    CHECK(*cert.conclusion.n_f_x0 == rational(8));
    std::vector<BigRational> expected = {rational(1), rational(1), rational(2), rational(4)};
    CHECK(*cert.touch_points == expected);
    jensen_numeric_oracle(cert, 2000);
}

TEST_CASE("lemma 1 contrapositive: a wrong-slope line takes both signs near x0") {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<long> coeff(-5, 5);
    const char* functions[] = {"x/(x^3+8)", "1/(x^3+2)", "(x^2-1)/(x^2+3)", "10*x^3 - 9*x^5"};
    for (const char* text : functions) {
        ExprPtr f = parse_expr(text);
        for (int trial = 0; trial < 25; ++trial) {
            BigRational x0 = rational(1 + (rng() % 3), 1 + (rng() % 2));
            double fx0 = eval_numeric(f, to_double(x0));
            double slope = eval_numeric(differentiate(f), to_double(x0));
            double wrong = slope + (coeff(rng) >= 0 ? 1 : -1) * (0.5 + (rng() % 3));
            auto line = [&](double x) { return fx0 + wrong * (x - to_double(x0)); };
            double left = eval_numeric(f, to_double(x0) - 1e-4) - line(to_double(x0) - 1e-4);
            double right = eval_numeric(f, to_double(x0) + 1e-4) - line(to_double(x0) + 1e-4);
            CHECK(left * right < 0);
        }
    }
}

TEST_CASE("example 2 regression: the proof closes although f is not convex") {
    ProblemSpec p = make_problem("1/(1-x) - 2/(1+x)", sum_constraint(rational(1), 3),
                                 Interval::open(rational(0), rational(1)),
                                 Direction::LowerBound, "0");
    auto cert = prove(p);
    REQUIRE(cert.route == Route::Theorem1);
    CHECK(cert.proved());
    CHECK(*cert.curves[0].curve.k == rational(27, 8));

    // f'' takes both signs on (0, 1)
    ExprPtr second = differentiate(differentiate(p.f()));
    bool saw_positive = false, saw_negative = false;
    for (int i = 1; i < 100; ++i) {
        double v = eval_numeric(second, i / 100.0);
        saw_positive = saw_positive || v > 0;
        saw_negative = saw_negative || v < 0;
    }
    CHECK(saw_positive);
    CHECK(saw_negative);
    jensen_numeric_oracle(cert, 2000);
}

TEST_CASE("prove: product constraint selects the log curve and stays numeric") {
    ConstraintSpec c;
    c.family = ConstraintFamily::Product;
    c.budget = rational(1);
    c.n = 3;
    // the 2005 Baltic discussion function; the full log-curve proof is out of
    // reach of the exact pipeline, and the log curve does not separate
    // globally, so this lands in failure with the family selection recorded
    ProblemSpec p = make_problem("-x/(x^2+2)", c, Interval::open(rational(0), rational(100)),
                                 Direction::LowerBound, "-1");
    auto cert = prove(p);
    CHECK(cert.route == Route::Failure);
    bool line_rejection_recorded = false;
    for (const auto& d : cert.diagnostics)
        if (d.find("not positive") != std::string::npos) line_rejection_recorded = true;
    CHECK(line_rejection_recorded);
}

TEST_CASE("prove: an exact line beats numeric log-curve evidence under a product constraint") {
    // x^2 >= 2 ln x + 1 and x^2 >= 2x - 1 both hold at x0 = 1; the log curve
    // is evidence-only while the tangent line certifies exactly, so the
    // prover must pick the line although the log curve is first in order
    ConstraintSpec c;
    c.family = ConstraintFamily::Product;
    c.budget = rational(1);
    c.n = 3;
    ProblemSpec p = make_problem("x^2", c, Interval::open(rational(0), rational(100)),
                                 Direction::LowerBound, "3");
    auto cert = prove(p);
    REQUIRE(cert.route == Route::Theorem1);
    CHECK(cert.exact());
    CHECK(cert.proved());
    CHECK(*cert.conclusion.n_f_x0 == rational(3));
    CHECK(cert.curves[0].curve.family == CurveFamily::Line);
    // the holding log curve is still on the record as evidence
    bool log_recorded = false;
    for (const auto& ev : cert.evidence)
        if (ev.curve.family == CurveFamily::LogCurve && ev.report.holds()) log_recorded = true;
    CHECK(log_recorded);
}

TEST_CASE("constraint samplers satisfy their constraints") {
    SUBCASE("sum") {
        auto tuples = sample_constraint_tuples(sum_constraint(rational(4), 4),
                                               Interval::open(rational(0), rational(4)), 200, 7);
        for (const auto& t : tuples) {
            double total = 0;
            for (double x : t) {
                CHECK(x > 0);
                total += x;
            }
            CHECK(total == doctest::Approx(4.0).epsilon(1e-9));
        }
    }
    SUBCASE("power sum") {
        ConstraintSpec c;
        c.family = ConstraintFamily::PowerSum;
        c.alpha = rational(2);
        c.budget = rational(12);
        c.n = 3;
        auto tuples = sample_constraint_tuples(c, Interval::open(rational(0), rational(4)), 200, 7);
        for (const auto& t : tuples) {
            double total = 0;
            for (double x : t) total += x * x;
            CHECK(total == doctest::Approx(12.0).epsilon(1e-9));
        }
    }
    SUBCASE("product") {
        ConstraintSpec c;
        c.family = ConstraintFamily::Product;
        c.budget = rational(1);
        c.n = 3;
        auto tuples = sample_constraint_tuples(c, Interval::at_least(rational(0), true), 200, 7);
        for (const auto& t : tuples) {
            double prod = 1;
            for (double x : t) prod *= x;
            CHECK(prod == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("custom mean") {
        ConstraintSpec c;
        c.family = ConstraintFamily::CustomMean;
        c.l = parse_expr("1/(4+x)");
        c.budget = rational(1);
        c.n = 5;
        auto tuples = sample_constraint_tuples(c, Interval::at_least(rational(0)), 100, 7);
        for (const auto& t : tuples) {
            double total = 0;
            for (double x : t) {
                CHECK(x >= 0);
                total += 1.0 / (4.0 + x);
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-7));
        }
    }
}

TEST_CASE("prove: sample problem 2 through the custom mean constraint") {
    ConstraintSpec c;
    c.family = ConstraintFamily::CustomMean;
    c.l = parse_expr("1/(4+x)");
    c.budget = rational(1);
    c.n = 5;
    ProblemSpec p = make_problem("x/(4+x^2)", c, Interval::at_least(rational(0)),
                                 Direction::UpperBound, "1");
    auto cert = prove(p);
    REQUIRE(cert.route == Route::Theorem1);
    CHECK(cert.proved());
    CHECK(*cert.curves[0].curve.k == rational(-3));
    CHECK(*cert.curves[0].curve.m == rational(4, 5));
    CHECK(*cert.conclusion.n_f_x0 == rational(1));
    CHECK(cert.curves[0].factorization->cofactor == Polynomial({rational(-4), rational(-4)}));
    jensen_numeric_oracle(cert, 2000);
}
