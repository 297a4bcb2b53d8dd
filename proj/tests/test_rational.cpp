#include "doctest.h"
#include "tangent/rational.hpp"

using namespace tangent;

TEST_CASE("parse_rational handles integers, fractions and decimals") {
    CHECK(*parse_rational("12") == rational(12));
    CHECK(*parse_rational("-7") == rational(-7));
    CHECK(*parse_rational("3/4") == rational(3, 4));
    CHECK(*parse_rational("-6/8") == rational(-3, 4));
    CHECK(*parse_rational("0.9") == rational(9, 10));
    CHECK(*parse_rational("-0.25") == rational(-1, 4));
    CHECK(*parse_rational("5.69") == rational(569, 100));
    CHECK(!parse_rational("1/0"));
    CHECK(!parse_rational("abc"));
    CHECK(!parse_rational("1.2.3"));
    CHECK(!parse_rational(""));
}

TEST_CASE("rational values are always reduced with positive denominator") {
    BigRational q = rational(4, -6);
    CHECK(q.get_num() == -2);
    CHECK(q.get_den() == 3);
    CHECK(to_string(q) == "-2/3");
    CHECK(to_string(rational(8, 4)) == "2");
}

TEST_CASE("pow and exact_root") {
    CHECK(pow(rational(2, 3), 3) == rational(8, 27));
    CHECK(pow(rational(2, 3), -2) == rational(9, 4));
    CHECK(pow(rational(5), 0) == rational(1));
    CHECK(*exact_root(rational(8, 27), 3) == rational(2, 3));
    CHECK(*exact_root(rational(-8), 3) == rational(-2));
    CHECK(!exact_root(rational(2), 2));
    CHECK(!exact_root(rational(-4), 2));
    CHECK(*exact_root(rational(9, 4), 2) == rational(3, 2));
}

TEST_CASE("floor/ceil to decimal multiples") {
    CHECK(floor_to_multiple(*parse_rational("0.90739"), 100) == rational(9, 10));
    CHECK(ceil_to_multiple(*parse_rational("0.90139"), 100) == rational(91, 100));
    CHECK(floor_to_multiple(rational(-1, 3), 100) == rational(-34, 100));
}

TEST_CASE("simplest_rational_between finds the minimal denominator") {
    CHECK(simplest_rational_between(rational(1, 3), rational(1, 2)) == rational(1, 2));
    CHECK(simplest_rational_between(rational(31, 100), rational(34, 100)) == rational(1, 3));
    CHECK(simplest_rational_between(rational(31, 100), rational(33, 100)) == rational(5, 16));
    CHECK(simplest_rational_between(rational(-1, 2), rational(1, 3)) == rational(0));
    CHECK(simplest_rational_between(rational(7), rational(8)) == rational(7));
    // tight interval around an exact rational recovers it
    CHECK(simplest_rational_between(*parse_rational("0.666666"), *parse_rational("0.666667")) ==
          rational(2, 3));
}

TEST_CASE("reconstruct_rational recovers small fractions from doubles") {
    CHECK(*reconstruct_rational(0.5, 1e-9, BigInt(10000)) == rational(1, 2));
    CHECK(*reconstruct_rational(2.0 / 7.0, 1e-12, BigInt(10000)) == rational(2, 7));
    CHECK(!reconstruct_rational(0.6180339887498949, 1e-15, BigInt(10000)));
}
