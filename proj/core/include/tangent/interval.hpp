#pragma once

#include <optional>
#include <string>

#include "tangent/rational.hpp"

namespace tangent {

// Rational-endpoint interval; an absent endpoint means the interval is
// unbounded on that side. Invariant: lo < hi, or lo == hi with both ends
// closed.
struct Interval {
    std::optional<BigRational> lo, hi;
    bool lo_open = true;
    bool hi_open = true;

    static Interval open(BigRational lo, BigRational hi);
    static Interval closed(BigRational lo, BigRational hi);
    static Interval half_open_right(BigRational lo, BigRational hi);  // (lo, hi]
    static Interval half_open_left(BigRational lo, BigRational hi);   // [lo, hi)
    static Interval all();
    static Interval at_least(BigRational lo, bool open = false);  // [lo, inf) / (lo, inf)
    static Interval point(BigRational x);

    bool bounded() const { return lo.has_value() && hi.has_value(); }
    bool is_point() const { return lo && hi && *lo == *hi; }
    bool contains(const BigRational& x) const;
    bool contains(const Interval& other) const;
    Interval interior() const;

    std::string to_string() const;
    bool operator==(const Interval& rhs) const = default;
};

void validate(const Interval& iv);

// Parses "(0, 4)", "[9/10, 1]", "(0, inf)", "(-inf, 2]".
std::optional<Interval> parse_interval(const std::string& text);

}  // namespace tangent
