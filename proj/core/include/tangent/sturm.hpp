#pragma once

#include <vector>

#include "tangent/interval.hpp"
#include "tangent/polynomial.hpp"

namespace tangent {

// Canonical Sturm sequence of the square-free part of p: (s, s', then the
// negated remainders, scaled to primitive integer form). The last element is
// a nonzero constant.
std::vector<Polynomial> sturm_chain(const Polynomial& p);

// Sign variations of the chain at x, zeros skipped.
int sign_variations(const std::vector<Polynomial>& chain, const BigRational& x);

// Exact number of distinct real roots of p in iv. Roots at open endpoints are
// excluded, at closed endpoints included; infinite endpoints are replaced by
// the Cauchy root bound.
int count_real_roots(const Polynomial& p, const Interval& iv);

// An isolated real root: either pinned exactly or bracketed by an open
// interval (lo, hi) containing exactly that root, with p(lo), p(hi) != 0.
struct RootBracket {
    bool exact = false;
    BigRational point;       // valid when exact
    BigRational lo, hi;      // valid when !exact
    BigRational approx() const { return exact ? point : (lo + hi) / 2; }
};

// Disjoint isolations of all distinct roots of p in iv, left to right.
std::vector<RootBracket> isolate_roots(const Polynomial& p, const Interval& iv);

// Shrinks an inexact bracket below the given width by sign bisection on the
// square-free part; may discover the root exactly.
void refine_bracket(const Polynomial& squarefree, RootBracket& bracket, const BigRational& width);

enum class SignVerdict { NonNegative, NonPositive, Indefinite };

std::string to_string(SignVerdict v);

struct SignCertificate {
    SignVerdict verdict = SignVerdict::Indefinite;
    // constant-sign verdicts: one interior point with a strict sign
    std::optional<BigRational> sample_point;
    BigRational sample_value;
    // Indefinite: exact witness pair with strictly opposite signs
    std::optional<BigRational> witness_positive, witness_negative;
    BigRational witness_positive_value, witness_negative_value;
    // distinct real roots of p inside iv
    int root_count = 0;
    std::vector<RootBracket> root_brackets;
};

// Rigorous sign of p on iv. NonNegative means p >= 0 everywhere on iv,
// certified by the absence of interior sign-changing roots (odd-multiplicity
// analysis) plus a strict interior sample; NonPositive symmetrically.
// Indefinite carries a re-verifiable witness pair.
SignCertificate certify_sign(const Polynomial& p, const Interval& iv);

}  // namespace tangent
