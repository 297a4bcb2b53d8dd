#include "tangent/minimize.hpp"

#include <algorithm>

namespace tangent {

namespace {

// [nlo, nhi] / [dlo, dhi] with the divisor interval excluding zero.
std::pair<BigRational, BigRational> divide_enclosures(const std::pair<BigRational, BigRational>& n,
                                                      const std::pair<BigRational, BigRational>& d) {
    if (d.first <= 0 && d.second >= 0)
        throw std::logic_error("certified_min: denominator enclosure straddles zero");
    BigRational q1 = n.first / d.first, q2 = n.first / d.second;
    BigRational q3 = n.second / d.first, q4 = n.second / d.second;
    return {std::min(std::min(q1, q2), std::min(q3, q4)),
            std::max(std::max(q1, q2), std::max(q3, q4))};
}

}  // namespace

MinReport certified_min(const RationalFunction& f, const Interval& iv) {
    validate(iv);
    if (!iv.bounded())
        throw std::invalid_argument("certified_min requires a bounded interval");
    BigRational a = *iv.lo, b = *iv.hi;
    Interval closure = Interval::closed(a, b);
    if (!f.den().is_zero() && f.den().degree() >= 0 && count_real_roots(f.den(), closure) > 0)
        throw PoleInInterval("denominator vanishes on " + closure.to_string());

    MinReport best;
    best.value = f(a);
    best.exact = true;
    best.argmin = a;
    auto consider_exact = [&best](const BigRational& x, const BigRational& v) {
        if (v < best.value || (!best.exact && v == best.value)) {
            best.value = v;
            best.exact = true;
            best.argmin = x;
            best.argmin_bracket.reset();
        }
    };
    consider_exact(b, f(b));
    if (a == b) return best;

    RationalFunction fprime = f.derivative();
    Polynomial critical = fprime.num();
    if (critical.is_zero()) return best;  // f constant

    Interval interior = Interval::open(a, b);

    // exact rational critical points first
    Polynomial remaining = critical;
    for (const BigRational& r : rational_roots(critical)) {
        if (!interior.contains(r)) continue;
        consider_exact(r, f(r));
        Polynomial factor = Polynomial::linear_root(r);
        while (true) {
            ExactDivision div = poly_divide_exact(remaining, factor);
            if (!div.exact) break;
            remaining = div.quotient;
        }
    }

    if (remaining.degree() > 0) {
        Polynomial sf = squarefree_part(remaining);
        const BigRational width = rational(1, 1000000000000L);  // 1e-12
        for (RootBracket bracket : isolate_roots(remaining, interior)) {
            if (!bracket.exact) refine_bracket(sf, bracket, width);
            if (bracket.exact) {
                consider_exact(bracket.point, f(bracket.point));
                continue;
            }
            auto n_enc = f.num().enclose(bracket.lo, bracket.hi);
            auto d_enc = f.den().enclose(bracket.lo, bracket.hi);
            auto q_enc = divide_enclosures(n_enc, d_enc);
            if (q_enc.first < best.value) {
                best.value = q_enc.first;
                best.exact = false;
                best.argmin.reset();
                best.argmin_bracket = bracket;
            }
        }
    }
    return best;
}

}  // namespace tangent
