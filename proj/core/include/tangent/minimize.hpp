#pragma once

#include <stdexcept>

#include "tangent/expr.hpp"
#include "tangent/interval.hpp"
#include "tangent/ratfunc.hpp"
#include "tangent/sturm.hpp"

namespace tangent {

struct PoleInInterval : std::runtime_error {
    explicit PoleInInterval(const std::string& what) : std::runtime_error(what) {}
};

struct MinReport {
    // Certified lower bound for f over the closure of the interval; equals
    // the exact minimum when `exact` is set.
    BigRational value;
    bool exact = false;
    std::optional<BigRational> argmin;  // when exact
    // bracket around the (irrational) minimizing critical point otherwise
    std::optional<RootBracket> argmin_bracket;
};

// Minimum of f over the closure of iv, from endpoint values plus critical
// points (roots of the numerator of f' isolated by Sturm bisection).
// Rational critical points contribute exact values; irrational ones are
// bracketed to width 1e-12 and bounded by an exact interval enclosure.
// Requires a bounded interval and a pole-free closure.
MinReport certified_min(const RationalFunction& f, const Interval& iv);

}  // namespace tangent
