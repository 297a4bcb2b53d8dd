#include "tangent/interval.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace tangent {

Interval Interval::open(BigRational lo, BigRational hi) {
    Interval iv{std::move(lo), std::move(hi), true, true};
    validate(iv);
    return iv;
}

Interval Interval::closed(BigRational lo, BigRational hi) {
    Interval iv{std::move(lo), std::move(hi), false, false};
    validate(iv);
    return iv;
}

Interval Interval::half_open_right(BigRational lo, BigRational hi) {
    Interval iv{std::move(lo), std::move(hi), true, false};
    validate(iv);
    return iv;
}

Interval Interval::half_open_left(BigRational lo, BigRational hi) {
    Interval iv{std::move(lo), std::move(hi), false, true};
    validate(iv);
    return iv;
}

Interval Interval::all() {
    return Interval{std::nullopt, std::nullopt, true, true};
}

Interval Interval::at_least(BigRational lo, bool open) {
    return Interval{std::move(lo), std::nullopt, open, true};
}

Interval Interval::point(BigRational x) {
    return Interval{x, x, false, false};
}

bool Interval::contains(const BigRational& x) const {
    if (lo) {
        if (x < *lo || (lo_open && x == *lo)) return false;
    }
    if (hi) {
        if (x > *hi || (hi_open && x == *hi)) return false;
    }
    return true;
}

bool Interval::contains(const Interval& other) const {
    if (lo) {
        if (!other.lo) return false;
        if (*other.lo < *lo) return false;
        if (*other.lo == *lo && lo_open && !other.lo_open) return false;
    }
    if (hi) {
        if (!other.hi) return false;
        if (*other.hi > *hi) return false;
        if (*other.hi == *hi && hi_open && !other.hi_open) return false;
    }
    return true;
}

Interval Interval::interior() const {
    return Interval{lo, hi, true, true};
}

std::string Interval::to_string() const {
    std::ostringstream out;
    out << (lo_open ? "(" : "[");
    out << (lo ? tangent::to_string(*lo) : "-inf");
    out << ", ";
    out << (hi ? tangent::to_string(*hi) : "inf");
    out << (hi_open ? ")" : "]");
    return out.str();
}

void validate(const Interval& iv) {
    if (iv.lo && iv.hi) {
        if (*iv.lo > *iv.hi) throw std::invalid_argument("interval: lo > hi");
        if (*iv.lo == *iv.hi && (iv.lo_open || iv.hi_open))
            throw std::invalid_argument("interval: degenerate open interval");
    }
}

std::optional<Interval> parse_interval(const std::string& text) {
    std::size_t i = 0, j = text.size();
    while (i < j && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    while (j > i && std::isspace(static_cast<unsigned char>(text[j - 1]))) --j;
    if (j - i < 4) return std::nullopt;
    char open_ch = text[i], close_ch = text[j - 1];
    if ((open_ch != '(' && open_ch != '[') || (close_ch != ')' && close_ch != ']'))
        return std::nullopt;
    std::string body = text.substr(i + 1, j - i - 2);
    auto comma = body.find(',');
    if (comma == std::string::npos) return std::nullopt;
    auto trim = [](std::string s) {
        std::size_t a = 0, b = s.size();
        while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
        return s.substr(a, b - a);
    };
    std::string lo_s = trim(body.substr(0, comma));
    std::string hi_s = trim(body.substr(comma + 1));

    Interval iv;
    iv.lo_open = open_ch == '(';
    iv.hi_open = close_ch == ')';
    if (lo_s != "-inf") {
        auto q = parse_rational(lo_s);
        if (!q) return std::nullopt;
        iv.lo = *q;
    } else if (!iv.lo_open) {
        return std::nullopt;
    }
    if (hi_s != "inf" && hi_s != "+inf") {
        auto q = parse_rational(hi_s);
        if (!q) return std::nullopt;
        iv.hi = *q;
    } else if (!iv.hi_open) {
        return std::nullopt;
    }
    try {
        validate(iv);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
    return iv;
}

}  // namespace tangent
