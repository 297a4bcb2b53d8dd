#include <random>

#include "doctest.h"
#include "tangent/ratfunc.hpp"

using namespace tangent;

namespace {

Polynomial from_ints(std::initializer_list<long> cs) {
    std::vector<BigRational> v;
    for (long c : cs) v.emplace_back(c);
    return Polynomial(std::move(v));
}

RationalFunction rf(std::initializer_list<long> num, std::initializer_list<long> den) {
    return RationalFunction(from_ints(num), from_ints(den));
}

}  // namespace

TEST_CASE("canonical form: reduced, integer content 1, positive leading denominator") {
    RationalFunction a = rf({2, 2}, {4, 4});  // (2x+2)/(4x+4) = 1/2
    CHECK(a.num() == from_ints({1}));
    CHECK(a.den() == from_ints({2}));

    RationalFunction b = rf({-1, 3}, {1, 0, -1});  // (3x-1)/(1-x^2) -> (1-3x)/(x^2-1)
    CHECK(b.num() == from_ints({1, -3}));
    CHECK(b.den() == from_ints({-1, 0, 1}));

    RationalFunction c = rf({0}, {5, 1});
    CHECK(c.is_zero());
    CHECK(c.den() == from_ints({1}));
}

TEST_CASE("arithmetic: the inequality-(2) difference") {
    // x/(x^3+8) - (2x+1)/27 = (-2x^4 - x^3 + 11x - 8)/(27x^3 + 216)
    RationalFunction f = rf({0, 1}, {8, 0, 0, 1});
    RationalFunction line = rf({1, 2}, {27});
    RationalFunction h = f - line;
    CHECK(h.num() == from_ints({-8, 11, 0, -1, -2}));
    CHECK(h.den() == from_ints({216, 0, 0, 27}));

    RationalFunction p = rf({1, 2, 3}, {1});
    CHECK(p + RationalFunction() == p);
    CHECK(p * RationalFunction::constant(rational(1)) == p);
}

TEST_CASE("derivative and evaluation") {
    RationalFunction f = rf({0, 1}, {8, 0, 0, 1});  // x/(x^3+8)
    RationalFunction d = f.derivative();            // (8 - 2x^3)/(x^3+8)^2
    CHECK(d(rational(1)) == rational(2, 27));
    CHECK(f(rational(1)) == rational(1, 9));
    CHECK_THROWS_AS(rf({1}, {0, 1})(rational(0)), std::domain_error);
}

TEST_CASE("double_root_factor on the corpus steps") {
    SUBCASE("x^4 against (4x^3 - 1)/3 at 1") {
        RationalFunction f = rf({0, 0, 0, 0, 1}, {1});
        RationalFunction g = rf({-1, 0, 0, 4}, {3});
        auto fac = double_root_factor(f, g, rational(1));
        CHECK(fac.cofactor == from_ints({1, 2, 3}));  // 3x^2 + 2x + 1
        CHECK(fac.denominator == from_ints({3}));
    }
    SUBCASE("1/(x^3+2) against -x^2/6 + 1/2 at 1") {
        RationalFunction f = rf({1}, {2, 0, 0, 1});
        RationalFunction g = rf({3, 0, -1}, {6});
        auto fac = double_root_factor(f, g, rational(1));
        CHECK(fac.cofactor == from_ints({0, 0, 2, 1}));  // x^2 (x + 2)
        CHECK(fac.denominator == from_ints({12, 0, 0, 6}));
    }
    SUBCASE("x/(4+x^2) against 4/5 - 3/(4+x) at 1, reversed") {
        RationalFunction f = rf({0, 1}, {4, 0, 1});
        RationalFunction g = rf({4}, {5}) - rf({3}, {4, 1});  // 4/5 - 3/(4+x)
        auto fac = double_root_factor(g, f, rational(1));
        CHECK(fac.cofactor == from_ints({4, 4}));  // 4(x + 1)
        CHECK(fac.denominator == from_ints({80, 20, 20, 5}));
    }
}

TEST_CASE("double_root_factor rejects non-tangent data") {
    RationalFunction f = rf({0, 0, 1}, {1});  // x^2
    RationalFunction g = rf({0, 1}, {1});     // x: value matches at 1, slope does not
    CHECK_THROWS_AS(double_root_factor(f, g, rational(1)), TangencyViolation);
    RationalFunction pole = rf({1}, {-1, 1});  // 1/(x-1)
    CHECK_THROWS_AS(double_root_factor(pole, g, rational(1)), PoleAtTouchPoint);
    RationalFunction h = rf({5, 1}, {1});  // value mismatch
    CHECK_THROWS_AS(double_root_factor(f, h, rational(1)), TangencyViolation);
}

TEST_CASE("tangency factorization round trips on random rational functions") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> coeff(-5, 5);
    std::uniform_int_distribution<int> deg(0, 5);
    auto random_poly = [&](bool nonzero) {
        for (;;) {
            std::vector<BigRational> v(deg(rng) + 1);
            for (auto& c : v) c = BigRational(coeff(rng));
            Polynomial p(std::move(v));
            if (!nonzero || !p.is_zero()) return p;
        }
    };

    int done = 0;
    while (done < 500) {
        Polynomial num = random_poly(false);
        Polynomial den = random_poly(true);
        BigRational x0 = rational(coeff(rng), 1 + static_cast<long>(rng() % 3));
        if (den(x0) == 0) continue;
        RationalFunction f(num, den);

        // tangent line to f at x0
        BigRational k = f.derivative()(x0);
        BigRational m = f(x0) - k * x0;
        RationalFunction line(Polynomial({m, k}), Polynomial::constant(rational(1)));

        RationalFunction h = f - line;
        CHECK(h.defined_at(x0));
        CHECK(h(x0) == 0);
        CHECK(h.derivative()(x0) == 0);

        auto fac = double_root_factor(f, line, x0);
        Polynomial square = Polynomial::linear_root(x0) * Polynomial::linear_root(x0);
        RationalFunction rebuilt(square * fac.cofactor, fac.denominator);
        CHECK(rebuilt == h);
        ++done;
    }
}
