#include "tangent/jensen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace tangent {

std::string to_string(Direction d) {
    return d == Direction::LowerBound ? "ge" : "le";
}

std::optional<BigRational> ProblemSpec::bound_value() const {
    if (!bound) return std::nullopt;
    try {
        return eval_exact(bound, BigRational(0));
    } catch (const EvalDomainError&) {
        return std::nullopt;
    }
}

void validate(const ProblemSpec& p) {
    if (p.functions.empty()) throw std::invalid_argument("problem: no functions");
    if (p.n < 1) throw std::invalid_argument("problem: n must be >= 1");
    if (p.functions.size() > 1 && static_cast<int>(p.functions.size()) != p.n)
        throw std::invalid_argument("problem: a heterogeneous function list must have length n");
    if (!p.bound) throw std::invalid_argument("problem: missing bound");
    validate(p.constraint);
    validate(p.domain);
}

std::string to_string(Route r) {
    switch (r) {
        case Route::Theorem1: return "Theorem1";
        case Route::Theorem2Split: return "Theorem2Split";
        case Route::Theorem5Cubic: return "Theorem5Cubic";
        case Route::Case2Heterogeneous: return "Case2Heterogeneous";
        case Route::NumericEvidenceOnly: return "NumericEvidenceOnly";
        default: return "Failure";
    }
}

std::optional<Route> route_from_string(const std::string& s) {
    for (Route r : {Route::Theorem1, Route::Theorem2Split, Route::Theorem5Cubic,
                    Route::Case2Heterogeneous, Route::NumericEvidenceOnly, Route::Failure})
        if (to_string(r) == s) return r;
    return std::nullopt;
}

namespace {

std::optional<RationalFunction> try_lower(const ExprPtr& e) {
    auto r = lower_to_rational(e);
    if (std::holds_alternative<RationalFunction>(r)) return std::get<RationalFunction>(r);
    return std::nullopt;
}

// exact check that the touch point matches the budget: n * l(x0) = sum l
bool budget_matches_touch_point(const ConstraintSpec& c, const BigRational& x0) {
    switch (c.family) {
        case ConstraintFamily::Sum: return BigRational(x0 * c.n) == c.budget;
        case ConstraintFamily::PowerSum: {
            if (x0 <= 0) return false;
            long p = c.alpha.get_num().get_si();
            long q = c.alpha.get_den().get_si();
            return pow(x0, p) == pow(c.budget / c.n, q);
        }
        case ConstraintFamily::Product:
            return x0 > 0 && pow(x0, c.n) == c.budget;
        default: {
            auto lf = try_lower(c.l);
            if (!lf || !lf->defined_at(x0)) return false;
            return BigRational((*lf)(x0) * c.n) == c.budget;
        }
    }
}

SignVerdict required_verdict(int required_sign, int denominator_sign) {
    return required_sign * denominator_sign > 0 ? SignVerdict::NonNegative
                                                : SignVerdict::NonPositive;
}

struct ExactSetup {
    RationalFunction f, g, h;
    std::optional<DoubleRootFactorization> factorization;  // absent for k = 0 curves
    SignCertificate den_sign;
    int qsign = +1;
};

// Shared lowering + factorization + denominator analysis for the exact
// routes. Returns diagnostics instead of a setup when the candidate cannot
// enter the exact pipeline.
std::variant<ExactSetup, std::string> exact_setup(const ExprPtr& f, const BaseCurve& curve,
                                                  const Interval& domain) {
    auto F = try_lower(f);
    if (!F) return std::string("f is not a rational function");
    if (!curve.exact()) return std::string("curve coefficients are not exact rationals");
    auto G = try_lower(curve.as_expr);
    if (!G) return std::string("curve is not a rational function (log or fractional power)");
    if (!domain.contains(curve.x0))
        return std::string("touch point x0 = " + to_string(curve.x0) + " outside the domain");

    ExactSetup setup;
    setup.f = *F;
    setup.g = *G;
    setup.h = *F - *G;
    if (!setup.h.defined_at(curve.x0))
        return std::string("pole at the touch point x0 = " + to_string(curve.x0));

    bool tangent = setup.f.derivative()(curve.x0) == setup.g.derivative()(curve.x0);
    if (tangent) {
        try {
            setup.factorization = double_root_factor(setup.f, setup.g, curve.x0);
        } catch (const TangencyViolation& e) {
            return std::string(e.what());
        } catch (const PoleAtTouchPoint& e) {
            return std::string(e.what());
        }
    } else if (!curve.k || *curve.k != 0) {
        return std::string("curve is not tangent to f at x0 = " + to_string(curve.x0));
    }

    const Polynomial& den = setup.h.den();
    if (den.degree() > 0 && count_real_roots(den, domain) > 0)
        return std::string("PoleInInterval: the difference f - g has a pole inside " +
                           domain.to_string());
    setup.den_sign = certify_sign(den, domain);
    setup.qsign = setup.den_sign.verdict == SignVerdict::NonNegative ? +1 : -1;
    return setup;
}

BigRational conclusion_value(const ExactSetup& setup, const CandidateCurve& cand,
                             const ConstraintSpec& constraint, bool consistent,
                             std::string* error) {
    const BigRational x0 = cand.curve.x0;
    BigRational n_f_x0 = setup.f(x0) * constraint.n;
    if (consistent) return n_f_x0;
    if (cand.summation == SummationRule::DirectL &&
        constraint.family != ConstraintFamily::Product) {
        // touch point overridden away from the constraint: fall back to the
        // raw summed bound k B + n m
        return BigRational(*cand.curve.k * constraint.budget) +
               BigRational(*cand.curve.m * constraint.n);
    }
    *error = "touch point is inconsistent with the constraint budget";
    return n_f_x0;
}

bool positive_domain(const Interval& domain) {
    return domain.lo && *domain.lo >= 0;
}

// the direct summation rule only applies when the curve is built on the
// constrained l itself
bool l_matches_constraint(const ExprPtr& curve_l, const ConstraintSpec& c) {
    ExprPtr want = constraint_l(c);
    auto a = try_lower(curve_l);
    auto b = try_lower(want);
    if (a && b) return *a == *b;
    if (a || b) return false;
    // the only non-rational l in the family is ln x
    return curve_l->kind == ExprKind::Ln && want->kind == ExprKind::Ln &&
           curve_l->a->kind == ExprKind::Var && want->a->kind == ExprKind::Var;
}

}  // namespace

ProofCertificate prove_theorem1(const ExprPtr& f, const CandidateCurve& candidate,
                                const ConstraintSpec& constraint, const Interval& domain) {
    ProofCertificate cert;
    cert.route = Route::Failure;

    CurveRecord rec;
    rec.curve = candidate.curve;
    rec.summation = candidate.summation;
    rec.note = candidate.note;
    rec.required_sign = +1;
    rec.certified_regions = {domain};

    auto setup_or_error = exact_setup(f, candidate.curve, domain);
    if (std::holds_alternative<std::string>(setup_or_error)) {
        cert.diagnostics.push_back(std::get<std::string>(setup_or_error));
        return cert;
    }
    ExactSetup setup = std::get<ExactSetup>(std::move(setup_or_error));

    if (candidate.summation != SummationRule::DirectL && !positive_domain(domain)) {
        cert.diagnostics.push_back("power-mean summation requires a nonnegative domain");
        return cert;
    }
    if (candidate.summation == SummationRule::DirectL &&
        !l_matches_constraint(candidate.curve.l, constraint)) {
        cert.diagnostics.push_back("direct summation needs the curve's l to match the constraint");
        return cert;
    }

    bool consistent = budget_matches_touch_point(constraint, candidate.curve.x0);
    std::string value_error;
    BigRational bound_value =
        conclusion_value(setup, candidate, constraint, consistent, &value_error);
    if (!value_error.empty()) {
        cert.diagnostics.push_back(value_error);
        return cert;
    }

    rec.denominator_sign = setup.den_sign;
    Polynomial cofactor =
        setup.factorization ? setup.factorization->cofactor : setup.h.num();
    if (setup.factorization)
        rec.factorization = Factorization{candidate.curve.x0, setup.factorization->cofactor,
                                          setup.factorization->denominator};

    SignCertificate tcert = certify_sign(cofactor, domain);
    rec.cofactor_sign = tcert;
    cert.curves.push_back(rec);

    SignVerdict needed = required_verdict(+1, setup.qsign);
    if (tcert.verdict != needed) {
        if (tcert.verdict == SignVerdict::Indefinite) {
            std::ostringstream diag;
            diag << "tangent bound crosses f: witness pair "
                 << to_string(*tcert.witness_positive) << " (positive), "
                 << to_string(*tcert.witness_negative) << " (negative)";
            cert.diagnostics.push_back(diag.str());
        } else {
            cert.diagnostics.push_back("curve lies on the wrong side of f over " +
                                       domain.to_string());
        }
        return cert;
    }

    cert.route = Route::Theorem1;
    cert.curves.back().cofactor_sign = tcert;
    cert.conclusion.n_f_x0 = bound_value;
    cert.conclusion.n_f_x0_numeric = to_double(bound_value);
    cert.conclusion.holds = true;
    return cert;
}

std::optional<Interval> auto_split(const ExprPtr& f, const CandidateCurve& candidate,
                                   const Interval& domain, std::string* why_not) {
    auto fail = [why_not](const std::string& reason) -> std::optional<Interval> {
        if (why_not) *why_not = reason;
        return std::nullopt;
    };
    auto setup_or_error = exact_setup(f, candidate.curve, domain);
    if (std::holds_alternative<std::string>(setup_or_error))
        return fail(std::get<std::string>(setup_or_error));
    ExactSetup setup = std::get<ExactSetup>(std::move(setup_or_error));
    if (!setup.factorization) return fail("no tangency factorization to split on");

    const BigRational& x0 = candidate.curve.x0;
    const Polynomial& cofactor = setup.factorization->cofactor;
    if (cofactor.is_zero()) return fail("f equals the curve identically");
    SignVerdict needed = required_verdict(+1, setup.qsign);

    Polynomial odd = odd_multiplicity_part(cofactor);
    if (odd.degree() == 0) return fail("the cofactor never changes sign");
    if (odd(x0) == 0) return fail("the cofactor changes sign at the touch point itself");

    Polynomial odd_sf = squarefree_part(odd);
    auto brackets = isolate_roots(odd, domain.interior());
    if (brackets.empty()) return fail("no interior sign change found");

    // classify crossings against x0
    std::vector<RootBracket> above, below;
    for (RootBracket b : brackets) {
        while (!b.exact && b.lo < x0 && b.hi > x0)
            refine_bracket(odd_sf, b, BigRational((b.hi - b.lo) / 4));
        BigRational position = b.exact ? b.point : b.lo;
        if (position >= x0)
            above.push_back(b);
        else
            below.push_back(b);
    }
    if (!above.empty() && !below.empty())
        return fail("the curve crosses f on both sides of the touch point");

    const BigRational width(rational(1, 1000000));
    if (!above.empty()) {
        if (!domain.hi) return fail("right split needs a bounded domain");
        RootBracket first = above.front();
        refine_bracket(odd_sf, first, width);
        BigRational raw = first.exact ? first.point : first.lo;
        for (const BigRational& r : {floor_to_multiple(raw, 100), raw}) {
            if (r <= x0 || (domain.lo && r <= *domain.lo) || r >= *domain.hi) continue;
            Interval region{domain.lo, r, domain.lo_open, false};
            if (certify_sign(cofactor, region).verdict == needed)
                return Interval{r, domain.hi, false, domain.hi_open};
        }
        return fail("no verified carve boundary to the right of x0");
    }
    if (!domain.lo) return fail("left split needs a bounded domain");
    RootBracket last = below.back();
    refine_bracket(odd_sf, last, width);
    BigRational raw = last.exact ? last.point : last.hi;
    for (const BigRational& r : {ceil_to_multiple(raw, 100), raw}) {
        if (r >= x0 || (domain.hi && r >= *domain.hi) || r <= *domain.lo) continue;
        Interval region{r, domain.hi, false, domain.hi_open};
        if (certify_sign(cofactor, region).verdict == needed)
            return Interval{domain.lo, r, domain.lo_open, false};
    }
    return fail("no verified carve boundary to the left of x0");
}

ProofCertificate prove_with_split(const ExprPtr& f, const CandidateCurve& candidate,
                                  const ConstraintSpec& constraint, const Interval& domain,
                                  const Interval& carved) {
    ProofCertificate cert;
    cert.route = Route::Failure;
    auto diag = [&cert](const std::string& d) { cert.diagnostics.push_back(d); };

    if (!domain.contains(carved)) {
        diag("G is not contained in the domain");
        return cert;
    }
    if (!domain.bounded()) {
        diag("the split route needs a bounded domain for the minimum argument");
        return cert;
    }
    const BigRational& x0 = candidate.curve.x0;
    if (carved.contains(x0)) {
        diag("x0 must lie in I minus G");
        return cert;
    }
    if (!budget_matches_touch_point(constraint, x0)) {
        diag("touch point is inconsistent with the constraint budget");
        return cert;
    }

    auto setup_or_error = exact_setup(f, candidate.curve, domain);
    if (std::holds_alternative<std::string>(setup_or_error)) {
        diag(std::get<std::string>(setup_or_error));
        return cert;
    }
    ExactSetup setup = std::get<ExactSetup>(std::move(setup_or_error));
    if (candidate.summation != SummationRule::DirectL && !positive_domain(domain)) {
        diag("power-mean summation requires a nonnegative domain");
        return cert;
    }
    if (candidate.summation == SummationRule::DirectL &&
        !l_matches_constraint(candidate.curve.l, constraint)) {
        diag("direct summation needs the curve's l to match the constraint");
        return cert;
    }

    // I minus G: one or two interval pieces
    std::vector<Interval> regions;
    bool shares_hi = carved.hi == domain.hi;  // right carve
    bool shares_lo = carved.lo == domain.lo;
    if (shares_hi && carved.lo) {
        regions.push_back(Interval{domain.lo, *carved.lo, domain.lo_open, false});
    } else if (shares_lo && carved.hi) {
        regions.push_back(Interval{*carved.hi, domain.hi, false, domain.hi_open});
    } else if (carved.lo && carved.hi) {
        regions.push_back(Interval{domain.lo, *carved.lo, domain.lo_open, false});
        regions.push_back(Interval{*carved.hi, domain.hi, false, domain.hi_open});
    } else {
        diag("G must be an interval sharing at most one end with the domain");
        return cert;
    }

    CurveRecord rec;
    rec.curve = candidate.curve;
    rec.summation = candidate.summation;
    rec.note = candidate.note;
    rec.required_sign = +1;
    rec.certified_regions = regions;
    rec.denominator_sign = setup.den_sign;
    Polynomial cofactor = setup.factorization ? setup.factorization->cofactor : setup.h.num();
    if (setup.factorization)
        rec.factorization =
            Factorization{x0, setup.factorization->cofactor, setup.factorization->denominator};

    SignVerdict needed = required_verdict(+1, setup.qsign);
    for (const Interval& region : regions) {
        SignCertificate sc = certify_sign(cofactor, region);
        rec.cofactor_sign = sc;  // the last computed one; both must pass
        if (sc.verdict != needed) {
            cert.curves.push_back(rec);
            diag("tangent bound fails on " + region.to_string());
            return cert;
        }
    }
    cert.curves.push_back(rec);

    SplitData split;
    split.carved = carved;
    split.extrema_are_minima = true;
    try {
        split.extremum_G = certified_min(setup.f, carved);
        split.extremum_I = certified_min(setup.f, domain);
    } catch (const PoleInInterval& e) {
        diag(std::string("MinimumUncertifiable: ") + e.what());
        return cert;
    }
    split.n_f_x0 = setup.f(x0) * constraint.n;

    BigRational lhs = split.extremum_G.value + split.extremum_I.value * (constraint.n - 1);
    std::ostringstream condition;
    condition << to_string(split.extremum_G.value) << " + " << (constraint.n - 1) << " * "
              << to_string(split.extremum_I.value) << " >= " << to_string(split.n_f_x0);
    split.condition = condition.str();
    if (lhs < split.n_f_x0) {
        diag("SplitConditionFails: " + condition.str() + " is violated (lhs = " +
             to_string(lhs) + ")");
        cert.split = split;
        return cert;
    }

    cert.split = split;
    cert.route = Route::Theorem2Split;
    cert.conclusion.n_f_x0 = split.n_f_x0;
    cert.conclusion.n_f_x0_numeric = to_double(split.n_f_x0);
    cert.conclusion.holds = true;
    return cert;
}

ProofCertificate theorem5_cubic(const BigRational& a, const BigRational& b, const BigRational& c,
                                const BigRational& d, int n, const BigRational& x0) {
    if (a == 0) throw std::invalid_argument("theorem5_cubic: a = 0 is not a cubic");
    if (n < 1) throw std::invalid_argument("theorem5_cubic: n must be >= 1");
    if (x0 <= 0) throw std::invalid_argument("theorem5_cubic: x0 must be positive");

    ProofCertificate cert;
    Theorem5Data data;
    data.a = a;
    data.b = b;
    data.c = c;
    data.d = d;
    data.x0 = x0;
    data.n = n;
    data.endpoint_low = BigRational(a * x0 * 2 + b);
    data.endpoint_high = BigRational(a * x0 * (n + 2) + b);
    data.trivial_n1 = (n == 1);
    cert.cubic = data;

    Polynomial P({d, c, b, a});
    BigRational n_p_x0 = P(x0) * n;

    if (n == 1) {
        cert.route = Route::Theorem5Cubic;
        cert.conclusion.n_f_x0 = n_p_x0;
        cert.conclusion.n_f_x0_numeric = to_double(n_p_x0);
        cert.conclusion.holds = true;
        cert.diagnostics.push_back("n = 1: the constraint pins x1 = x0, the bound is an equality");
        return cert;
    }

    if (data.endpoint_low < 0) {
        cert.route = Route::Failure;
        cert.diagnostics.push_back("ConditionsFail: 2 a x0 + b = " + to_string(data.endpoint_low) +
                                   " < 0");
        return cert;
    }
    if (data.endpoint_high < 0) {
        cert.route = Route::Failure;
        cert.diagnostics.push_back("ConditionsFail: (n + 2) a x0 + b = " +
                                   to_string(data.endpoint_high) + " < 0");
        return cert;
    }

    // P - P(x0) - P'(x0)(x - x0) = (x - x0)^2 (a x + 2 a x0 + b), re-verified
    Polynomial linear({BigRational(a * x0 * 2 + b), a});
    Polynomial square = Polynomial::linear_root(x0) * Polynomial::linear_root(x0);
    Polynomial tangent_poly({BigRational(P(x0) - P.derivative()(x0) * x0), P.derivative()(x0)});
    if (P - tangent_poly != square * linear)
        throw std::logic_error("theorem5_cubic: factorization identity failed");

    CurveRecord rec;
    BaseCurve line;
    line.family = CurveFamily::Line;
    line.l = Expr::variable();
    line.x0 = x0;
    line.k = P.derivative()(x0);
    line.m = BigRational(P(x0) - *line.k * x0);
    line.k_sym = Expr::constant(*line.k);
    line.m_sym = Expr::constant(*line.m);
    line.as_expr = Expr::add(Expr::mul(line.k_sym, line.l), line.m_sym);
    rec.curve = line;
    rec.summation = SummationRule::DirectL;
    rec.note = "Theorem 5: monotone linear cofactor checked at 0 and n x0";
    rec.required_sign = +1;
    Interval range = Interval::closed(BigRational(0), BigRational(x0 * n));
    rec.certified_regions = {range};
    rec.factorization = Factorization{x0, linear, Polynomial::constant(BigRational(1))};
    rec.cofactor_sign = certify_sign(linear, range);
    rec.denominator_sign = certify_sign(Polynomial::constant(BigRational(1)), range);
    cert.curves.push_back(rec);

    cert.route = Route::Theorem5Cubic;
    cert.conclusion.n_f_x0 = n_p_x0;
    cert.conclusion.n_f_x0_numeric = to_double(n_p_x0);
    cert.conclusion.holds = true;
    return cert;
}

// ---------------------------------------------------------------------------
// Case 2

namespace {

double eval_ratio(const ExprPtr& fprime, const ExprPtr& lprime, double x) {
    double den = eval_numeric(lprime, x);
    if (den == 0.0) throw EvalDomainError("l'(x) = 0 inside the domain");
    return eval_numeric(fprime, x) / den;
}

}  // namespace

TouchPointSolution solve_touchpoints(const std::vector<ExprPtr>& fs, const ExprPtr& l,
                                     const BigRational& budget, const Interval& domain) {
    if (fs.empty()) throw std::invalid_argument("solve_touchpoints: no functions");
    if (!domain.bounded())
        throw NoSolutionInDomain("touch-point search needs a bounded domain");
    double a = to_double(*domain.lo), b = to_double(*domain.hi);
    double margin = (b - a) * 1e-9;
    double lo = a + margin, hi = b - margin;
    double B = to_double(budget);

    ExprPtr lprime = differentiate(l);
    std::vector<ExprPtr> fprimes;
    for (const auto& f : fs) fprimes.push_back(differentiate(f));

    // monotonicity probe of each slope ratio on a grid
    const int kGrid = 64;
    std::vector<int> direction(fs.size());
    for (std::size_t j = 0; j < fs.size(); ++j) {
        double prev = eval_ratio(fprimes[j], lprime, lo);
        int dir = 0;
        for (int i = 1; i <= kGrid; ++i) {
            double x = lo + (hi - lo) * i / kGrid;
            double v = eval_ratio(fprimes[j], lprime, x);
            int step = v > prev ? +1 : (v < prev ? -1 : 0);
            if (step == 0 || (dir != 0 && step != dir))
                throw NonMonotoneSlope("f_" + std::to_string(j + 1) +
                                       "'/l' is not strictly monotone on the domain");
            dir = step;
            prev = v;
        }
        direction[j] = dir;
    }

    // common slope range = intersection of the per-function ranges
    double s_lo = -std::numeric_limits<double>::infinity();
    double s_hi = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < fs.size(); ++j) {
        double r1 = eval_ratio(fprimes[j], lprime, lo);
        double r2 = eval_ratio(fprimes[j], lprime, hi);
        s_lo = std::max(s_lo, std::min(r1, r2));
        s_hi = std::min(s_hi, std::max(r1, r2));
    }
    if (!(s_lo < s_hi)) throw NoSolutionInDomain("slope ranges do not intersect");

    auto invert = [&](std::size_t j, double s) {
        double xa = lo, xb = hi;
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (xa + xb);
            double v = eval_ratio(fprimes[j], lprime, mid);
            if ((v < s) == (direction[j] > 0))
                xa = mid;
            else
                xb = mid;
        }
        return 0.5 * (xa + xb);
    };
    auto l_sum = [&](double s) {
        double total = 0;
        for (std::size_t j = 0; j < fs.size(); ++j) total += eval_numeric(l, invert(j, s));
        return total;
    };

    double sum_lo = l_sum(s_lo), sum_hi = l_sum(s_hi);
    if ((sum_lo - B) * (sum_hi - B) > 0)
        throw NoSolutionInDomain("sum l(x_j) never meets the budget over the slope range");
    bool increasing = sum_hi > sum_lo;
    double sa = s_lo, sb = s_hi;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (sa + sb);
        if ((l_sum(mid) < B) == increasing)
            sa = mid;
        else
            sb = mid;
    }
    double slope = 0.5 * (sa + sb);

    TouchPointSolution sol;
    sol.common_slope = slope;
    for (std::size_t j = 0; j < fs.size(); ++j) sol.points.push_back(invert(j, slope));
    double total = 0;
    for (std::size_t j = 0; j < fs.size(); ++j) total += eval_numeric(l, sol.points[j]);
    sol.sum_residual = std::fabs(total - B);
    for (std::size_t j = 0; j < fs.size(); ++j)
        sol.slope_residual =
            std::max(sol.slope_residual,
                     std::fabs(eval_ratio(fprimes[j], lprime, sol.points[j]) - slope));
    if (sol.sum_residual > 1e-10 * std::max(1.0, std::fabs(B)))
        throw NoSolutionInDomain("touch-point bisection did not converge to the budget");

    // exact rational reconstruction, verified exactly
    std::vector<BigRational> exact;
    bool all_exact = true;
    for (double x : sol.points) {
        auto r = reconstruct_rational(x, 1e-9, BigInt(10000));
        if (!r) {
            all_exact = false;
            break;
        }
        exact.push_back(*r);
    }
    if (all_exact) {
        try {
            BigRational total_exact(0);
            bool ok = true;
            for (const auto& x : exact) {
                auto v = eval_exact(l, x);
                if (!v) {
                    ok = false;
                    break;
                }
                total_exact += *v;
            }
            std::optional<BigRational> slope_exact;
            for (std::size_t j = 0; ok && j < fs.size(); ++j) {
                auto num = eval_exact(fprimes[j], exact[j]);
                auto den = eval_exact(lprime, exact[j]);
                if (!num || !den || *den == 0) {
                    ok = false;
                    break;
                }
                BigRational ratio = *num / *den;
                if (!slope_exact)
                    slope_exact = ratio;
                else if (*slope_exact != ratio)
                    ok = false;
            }
            if (ok && total_exact == budget) {
                sol.exact_points = exact;
                sol.exact_slope = slope_exact;
            }
        } catch (const EvalDomainError&) {
            // reconstruction landed on a pole: keep the numeric solution
        }
    }
    return sol;
}

ProofCertificate prove_case2(const std::vector<ExprPtr>& fs, const ConstraintSpec& constraint,
                             const Interval& domain, const ProveOptions& options) {
    ProofCertificate cert;
    cert.route = Route::Failure;
    auto diag = [&cert](const std::string& d) { cert.diagnostics.push_back(d); };

    if (constraint.family == ConstraintFamily::Product) {
        diag("Case 2 with a product constraint is not supported; restate it as a mean with l");
        return cert;
    }
    ExprPtr l = constraint_l(constraint);

    TouchPointSolution sol;
    try {
        sol = solve_touchpoints(fs, l, constraint.budget, domain);
    } catch (const std::runtime_error& e) {
        diag(e.what());
        return cert;
    }

    if (!sol.exact_points) {
        // NonRationalTouchPoint: numeric evidence at the reconstructed doubles
        bool all_hold = true;
        std::vector<BigRational> pts;
        for (std::size_t j = 0; j < fs.size(); ++j) {
            BigRational x0 = exact_from_double(sol.points[j]);
            pts.push_back(x0);
            BaseCurve curve;
            try {
                curve = base_curve(fs[j], l, x0);
            } catch (const CurveConstructionError& e) {
                diag(e.what());
                return cert;
            }
            EvidenceRecord ev;
            ev.curve = curve;
            ev.note = "function " + std::to_string(j + 1) + " against its touch-point curve";
            ev.report = numeric_evidence(fs[j], curve.as_expr, domain, options.grid_points,
                                         options.numeric_tol);
            ev.selected = ev.report.holds();
            all_hold = all_hold && ev.report.holds();
            cert.evidence.push_back(ev);
        }
        cert.touch_points = pts;
        if (!all_hold) {
            diag("a touch-point curve is violated numerically");
            return cert;
        }
        cert.route = Route::NumericEvidenceOnly;
        double value = 0;
        for (std::size_t j = 0; j < fs.size(); ++j)
            value += eval_numeric(fs[j], sol.points[j]);
        cert.conclusion.n_f_x0_numeric = value;
        cert.conclusion.holds = true;
        cert.diagnostics.push_back("touch points are not rational; evidence only");
        return cert;
    }

    const std::vector<BigRational>& points = *sol.exact_points;
    cert.touch_points = points;

    std::optional<BigRational> slope;
    BigRational m_total(0);
    BigRational f_at_points(0);
    for (std::size_t j = 0; j < fs.size(); ++j) {
        CandidateCurve cand;
        try {
            cand.curve = base_curve(fs[j], l, points[j]);
        } catch (const CurveConstructionError& e) {
            diag(e.what());
            return cert;
        }
        cand.summation = SummationRule::DirectL;
        cand.note = "touch-point curve for function " + std::to_string(j + 1);

        auto setup_or_error = exact_setup(fs[j], cand.curve, domain);
        if (std::holds_alternative<std::string>(setup_or_error)) {
            diag("function " + std::to_string(j + 1) + ": " +
                 std::get<std::string>(setup_or_error));
            return cert;
        }
        ExactSetup setup = std::get<ExactSetup>(std::move(setup_or_error));
        if (!cand.curve.exact()) {
            diag("function " + std::to_string(j + 1) + ": curve coefficients are not rational");
            return cert;
        }
        if (!slope)
            slope = *cand.curve.k;
        else if (*slope != *cand.curve.k) {
            diag("curves do not share one slope: " + to_string(*slope) + " vs " +
                 to_string(*cand.curve.k));
            return cert;
        }
        m_total += *cand.curve.m;
        f_at_points += setup.f(points[j]);

        CurveRecord rec;
        rec.curve = cand.curve;
        rec.summation = cand.summation;
        rec.note = cand.note;
        rec.required_sign = +1;
        rec.certified_regions = {domain};
        rec.denominator_sign = setup.den_sign;
        if (setup.factorization)
            rec.factorization = Factorization{points[j], setup.factorization->cofactor,
                                              setup.factorization->denominator};
        Polynomial cofactor = setup.factorization ? setup.factorization->cofactor : setup.h.num();
        SignCertificate sc = certify_sign(cofactor, domain);
        rec.cofactor_sign = sc;
        cert.curves.push_back(rec);
        if (sc.verdict != required_verdict(+1, setup.qsign)) {
            diag("function " + std::to_string(j + 1) + ": curve bound fails on " +
                 domain.to_string());
            return cert;
        }
    }

    BigRational value = *slope * constraint.budget + m_total;
    if (value != f_at_points) {
        diag("conclusion mismatch: k B + sum m = " + to_string(value) + " but sum f(x_j) = " +
             to_string(f_at_points));
        return cert;
    }
    cert.route = Route::Case2Heterogeneous;
    cert.conclusion.n_f_x0 = value;
    cert.conclusion.n_f_x0_numeric = to_double(value);
    cert.conclusion.holds = true;
    return cert;
}

// ---------------------------------------------------------------------------
// homogeneous normalization

ProblemSpec normalize_homogeneous(const ProblemSpec& problem) {
    if (!problem.homogeneous_degree)
        throw NotHomogeneous("the problem is not flagged homogeneous");
    double degree = to_double(*problem.homogeneous_degree);

    auto scaling_residual = [degree](const ExprPtr& e, double x, double t) {
        double base = eval_numeric(e, x);
        double scaled = eval_numeric(e, t * x);
        double expected = std::pow(t, degree) * base;
        return std::fabs(scaled - expected) / (1.0 + std::fabs(expected));
    };
    for (const auto& f : problem.functions) {
        for (double x : {0.7, 1.3, 2.4}) {
            for (double t : {2.0, 3.7}) {
                double r;
                try {
                    r = scaling_residual(f, x, t);
                } catch (const EvalDomainError&) {
                    continue;
                }
                if (r > 1e-8)
                    throw NotHomogeneous("scaling residual " + std::to_string(r) + " at x = " +
                                         std::to_string(x));
            }
        }
    }

    ProblemSpec out = problem;
    BigRational budget =
        problem.normalize_budget ? *problem.normalize_budget : BigRational(problem.n);
    out.constraint.budget = budget;

    // the bound rewrites as a function of the chosen budget
    if (contains_variable(problem.bound)) {
        auto value = eval_exact(problem.bound, budget);
        if (!value)
            throw NotHomogeneous("bound does not evaluate exactly at the chosen budget");
        out.bound = Expr::constant(*value);
    }
    if (out.constraint.family == ConstraintFamily::Sum)
        out.domain = Interval::open(BigRational(0), budget);
    out.homogeneous_degree.reset();
    out.normalize_budget.reset();
    return out;
}

// ---------------------------------------------------------------------------
// direction flip: internal >=-certificates map back to the original <= sense

namespace {

SignCertificate flip_sign_certificate(const SignCertificate& in) {
    SignCertificate out = in;
    if (in.verdict == SignVerdict::NonNegative)
        out.verdict = SignVerdict::NonPositive;
    else if (in.verdict == SignVerdict::NonPositive)
        out.verdict = SignVerdict::NonNegative;
    if (in.sample_point) out.sample_value = BigRational(-in.sample_value);
    out.witness_positive = in.witness_negative;
    out.witness_negative = in.witness_positive;
    out.witness_positive_value = BigRational(-in.witness_negative_value);
    out.witness_negative_value = BigRational(-in.witness_positive_value);
    return out;
}

BaseCurve flip_curve(const BaseCurve& in) {
    BaseCurve out = in;
    if (in.k) out.k = BigRational(-*in.k);
    if (in.m) out.m = BigRational(-*in.m);
    out.k_sym = Expr::neg(in.k_sym);
    out.m_sym = Expr::neg(in.m_sym);
    ExprPtr k_expr = out.k ? Expr::constant(*out.k) : out.k_sym;
    ExprPtr m_expr = out.m ? Expr::constant(*out.m) : out.m_sym;
    out.as_expr = Expr::add(Expr::mul(k_expr, out.l), m_expr);
    return out;
}

void flip_certificate(ProofCertificate& cert, int n) {
    for (CurveRecord& rec : cert.curves) {
        rec.curve = flip_curve(rec.curve);
        rec.required_sign = -rec.required_sign;
        if (rec.factorization) rec.factorization->cofactor = -rec.factorization->cofactor;
        if (rec.cofactor_sign) rec.cofactor_sign = flip_sign_certificate(*rec.cofactor_sign);
        // the denominator belongs to f - g whose numerator alone was negated
    }
    if (cert.split) {
        cert.split->extrema_are_minima = false;
        cert.split->extremum_G.value = BigRational(-cert.split->extremum_G.value);
        cert.split->extremum_I.value = BigRational(-cert.split->extremum_I.value);
        cert.split->n_f_x0 = BigRational(-cert.split->n_f_x0);
        cert.split->condition = to_string(cert.split->extremum_G.value) + " + " +
                                std::to_string(n - 1) + " * " +
                                to_string(cert.split->extremum_I.value) +
                                " <= " + to_string(cert.split->n_f_x0);
    }
    for (EvidenceRecord& ev : cert.evidence) {
        ev.curve = flip_curve(ev.curve);
        ev.gap_sense = "g-f";
    }
    if (cert.conclusion.n_f_x0) cert.conclusion.n_f_x0 = BigRational(-*cert.conclusion.n_f_x0);
    cert.conclusion.n_f_x0_numeric = -cert.conclusion.n_f_x0_numeric;
    // cert.cubic stays in the negated (internal) form by design
}

SummationRule rule_for(const ConstraintSpec& c, CurveFamily family) {
    switch (c.family) {
        case ConstraintFamily::Sum:
            return family == CurveFamily::Line ? SummationRule::DirectL
                                               : SummationRule::PowerMeanTheorem4;
        case ConstraintFamily::PowerSum:
            return family == CurveFamily::PowerCurve ? SummationRule::DirectL
                                                     : SummationRule::PowerMeanTheorem3;
        case ConstraintFamily::Product:
            return family == CurveFamily::LogCurve ? SummationRule::DirectL
                                                   : SummationRule::PowerMeanTheorem3;
        default: return SummationRule::DirectL;
    }
}

}  // namespace

ProofCertificate prove(const ProblemSpec& problem, const ProveOptions& options) {
    validate(problem);
    ProblemSpec p = problem;
    if (p.homogeneous_degree) p = normalize_homogeneous(p);

    const bool upper = p.direction == Direction::UpperBound;
    ProblemSpec internal = p;
    if (upper)
        for (auto& fn : internal.functions) fn = Expr::neg(fn);

    ProofCertificate cert;
    std::vector<std::string> pending_diagnostics;

    if (internal.functions.size() > 1) {
        cert = prove_case2(internal.functions, internal.constraint, internal.domain, options);
    } else {
        const ExprPtr& f = internal.f();
        std::optional<BigRational> x0 = internal.touch_point;
        if (!x0) x0 = implied_touch_point(internal.constraint, internal.domain);
        if (!x0) {
            cert.route = Route::Failure;
            cert.diagnostics.push_back(
                "the constraint implies an irrational touch point; supply x0 explicitly");
        } else {
            bool settled = false;

            // Theorem 5 fast path for cubic polynomials under a sum constraint
            if (internal.constraint.family == ConstraintFamily::Sum && *x0 > 0 &&
                !internal.curve_override) {
                auto F = try_lower(f);
                if (F && F->is_polynomial() && F->num().degree() == 3 &&
                    internal.domain.bounded()) {
                    Interval allowed =
                        Interval::closed(BigRational(0), internal.constraint.budget);
                    Interval closure{internal.domain.lo, internal.domain.hi, false, false};
                    if (allowed.contains(closure)) {
                        BigRational den = F->den().coeff(0);
                        ProofCertificate t5 = theorem5_cubic(
                            BigRational(F->num().coeff(3) / den),
                            BigRational(F->num().coeff(2) / den),
                            BigRational(F->num().coeff(1) / den),
                            BigRational(F->num().coeff(0) / den), internal.n, *x0);
                        if (t5.route == Route::Theorem5Cubic) {
                            cert = std::move(t5);
                            settled = true;
                        } else {
                            pending_diagnostics.insert(pending_diagnostics.end(),
                                                       t5.diagnostics.begin(),
                                                       t5.diagnostics.end());
                        }
                    }
                }
            }

            if (!settled) {
                FamilySelection selection;
                try {
                    if (internal.curve_override) {
                        CandidateCurve cand;
                        switch (internal.curve_override->family) {
                            case CurveFamily::Line: cand.curve = tangent_line(f, *x0); break;
                            case CurveFamily::PowerCurve:
                                cand.curve = power_curve(f, internal.curve_override->alpha, *x0);
                                break;
                            case CurveFamily::LogCurve: cand.curve = log_curve(f, *x0); break;
                            default:
                                cand.curve = base_curve(f, constraint_l(internal.constraint), *x0);
                        }
                        cand.summation = rule_for(internal.constraint, cand.curve.family);
                        cand.note = "curve family forced by the problem file";
                        selection.candidates.push_back(cand);
                    } else {
                        selection = select_family(f, internal.constraint, *x0);
                    }
                } catch (const CurveConstructionError& e) {
                    pending_diagnostics.push_back(e.what());
                }

                bool rational_f = try_lower(f).has_value();
                std::optional<ProofCertificate> selected;
                std::vector<EvidenceRecord> rejected_evidence;

                // exact-capable candidates first, in method order: an exact
                // certificate always beats numeric evidence
                for (const CandidateCurve& cand : selection.candidates) {
                    bool exact_capable = rational_f && cand.curve.exact() &&
                                         std::holds_alternative<RationalFunction>(
                                             lower_to_rational(cand.curve.as_expr));
                    if (!exact_capable || selected) continue;
                    ProofCertificate attempt =
                        prove_theorem1(f, cand, internal.constraint, internal.domain);
                    if (attempt.route == Route::Theorem1) {
                        selected = std::move(attempt);
                        continue;
                    }
                    bool indefinite =
                        !attempt.curves.empty() && attempt.curves[0].cofactor_sign &&
                        attempt.curves[0].cofactor_sign->verdict == SignVerdict::Indefinite;
                    for (const auto& d : attempt.diagnostics)
                        pending_diagnostics.push_back(to_string(cand.curve.family) + ": " + d);
                    if (indefinite) {
                        std::string why_not;
                        auto carved = auto_split(f, cand, internal.domain, &why_not);
                        if (carved) {
                            ProofCertificate split_attempt = prove_with_split(
                                f, cand, internal.constraint, internal.domain, *carved);
                            if (split_attempt.route == Route::Theorem2Split) {
                                selected = std::move(split_attempt);
                                continue;
                            }
                            for (const auto& d : split_attempt.diagnostics)
                                pending_diagnostics.push_back(to_string(cand.curve.family) +
                                                              " split: " + d);
                        } else {
                            pending_diagnostics.push_back(to_string(cand.curve.family) +
                                                          ": NoSplitFound: " + why_not);
                        }
                    }
                }

                // numeric-evidence candidates; all are evaluated even after a
                // selection exists so rejections stay on the record
                for (const CandidateCurve& cand : selection.candidates) {
                    bool exact_capable = rational_f && cand.curve.exact() &&
                                         std::holds_alternative<RationalFunction>(
                                             lower_to_rational(cand.curve.as_expr));
                    if (exact_capable) continue;
                    EvidenceRecord ev;
                    ev.curve = cand.curve;
                    ev.summation = cand.summation;
                    ev.note = cand.note;
                    try {
                        ev.report = numeric_evidence(f, cand.curve.as_expr, internal.domain,
                                                     options.grid_points, options.numeric_tol);
                    } catch (const std::exception& e) {
                        pending_diagnostics.push_back(to_string(cand.curve.family) +
                                                      " evidence: " + e.what());
                        continue;
                    }
                    if (ev.report.holds() && !selected) {
                        ev.selected = true;
                        ProofCertificate numeric;
                        numeric.route = Route::NumericEvidenceOnly;
                        double fx0 = eval_numeric(f, to_double(*x0));
                        numeric.conclusion.n_f_x0_numeric = internal.n * fx0;
                        numeric.conclusion.holds = true;
                        numeric.evidence.push_back(ev);
                        selected = std::move(numeric);
                    } else if (selected) {
                        selected->evidence.push_back(ev);
                    } else {
                        pending_diagnostics.push_back(
                            to_string(cand.curve.family) + " candidate: " +
                            to_string(ev.report.verdict) + " with min gap " +
                            std::to_string(ev.report.min_gap));
                        rejected_evidence.push_back(ev);
                    }
                }

                for (const auto& r : selection.rejections)
                    pending_diagnostics.push_back("not a candidate: " + r);
                if (selected) {
                    for (auto& ev : rejected_evidence) selected->evidence.push_back(ev);
                    cert = std::move(*selected);
                } else {
                    cert.route = Route::Failure;
                    cert.evidence = std::move(rejected_evidence);
                }
            }
        }
    }

    cert.diagnostics.insert(cert.diagnostics.begin(), pending_diagnostics.begin(),
                            pending_diagnostics.end());
    if (upper) flip_certificate(cert, p.n);
    cert.problem = p;
    cert.problem_id = p.id;
    cert.seed = options.seed;
    cert.numeric_tol = options.numeric_tol;

    // settle the claimed bound
    cert.conclusion.direction = p.direction;
    cert.conclusion.bound = p.bound_value();
    if (cert.route == Route::Failure) {
        cert.conclusion.holds = false;
    } else if (cert.conclusion.bound) {
        const BigRational& claimed = *cert.conclusion.bound;
        if (cert.exact() && cert.conclusion.n_f_x0) {
            cert.conclusion.holds = upper ? *cert.conclusion.n_f_x0 <= claimed
                                          : *cert.conclusion.n_f_x0 >= claimed;
        } else {
            double v = cert.conclusion.n_f_x0_numeric, A = to_double(claimed);
            cert.conclusion.holds =
                upper ? v <= A + options.numeric_tol : v >= A - options.numeric_tol;
        }
        if (!cert.conclusion.holds)
            cert.diagnostics.push_back("the certified value does not settle the claimed bound");
    }
    return cert;
}

// ---------------------------------------------------------------------------
// constraint samplers

std::vector<std::vector<double>> sample_constraint_tuples(const ConstraintSpec& constraint,
                                                          const Interval& domain, int count,
                                                          unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = constraint.n;
    const double B = to_double(constraint.budget);

    auto in_domain = [&domain](double x) {
        if (domain.lo) {
            double lo = to_double(*domain.lo);
            if (x < lo || (domain.lo_open && x <= lo + 1e-12)) return false;
        }
        if (domain.hi) {
            double hi = to_double(*domain.hi);
            if (x > hi || (domain.hi_open && x >= hi - 1e-12)) return false;
        }
        return true;
    };

    std::vector<std::vector<double>> out;
    out.reserve(count);
    long attempts = 0, max_attempts = 2000L * count + 1000;
    while (static_cast<int>(out.size()) < count && ++attempts < max_attempts) {
        std::vector<double> xs(n);
        bool ok = true;
        switch (constraint.family) {
            case ConstraintFamily::Sum: {
                double total = 0;
                for (auto& x : xs) {
                    x = expo(rng) + 1e-12;
                    total += x;
                }
                for (auto& x : xs) x *= B / total;
                break;
            }
            case ConstraintFamily::PowerSum: {
                double a = to_double(constraint.alpha);
                double total = 0;
                for (auto& x : xs) {
                    x = std::exp(gauss(rng) * 0.7);
                    total += std::pow(x, a);
                }
                double scale = std::pow(B / total, 1.0 / a);
                for (auto& x : xs) x *= scale;
                break;
            }
            case ConstraintFamily::Product: {
                double target = std::log(B);
                std::vector<double> logs(n);
                double total = 0;
                for (auto& y : logs) {
                    y = gauss(rng);
                    total += y;
                }
                for (int j = 0; j < n; ++j) xs[j] = std::exp(logs[j] + (target - total) / n);
                break;
            }
            default: {
                // sample l-values on the simplex and invert the monotone l
                if (!domain.lo) {
                    ok = false;
                    break;
                }
                double lo = to_double(*domain.lo) + 1e-9;
                double hi = domain.hi ? to_double(*domain.hi) - 1e-9 : lo + 1e6;
                double l_lo = eval_numeric(constraint.l, lo);
                double l_hi = eval_numeric(constraint.l, hi);
                double lmin = std::min(l_lo, l_hi), lmax = std::max(l_lo, l_hi);
                std::vector<double> ls(n);
                double total = 0;
                for (auto& v : ls) {
                    v = expo(rng) + 1e-12;
                    total += v;
                }
                for (auto& v : ls) v *= B / total;
                for (int j = 0; j < n && ok; ++j) {
                    if (ls[j] <= lmin || ls[j] >= lmax) {
                        ok = false;
                        break;
                    }
                    double xa = lo, xb = hi;
                    bool increasing = l_hi > l_lo;
                    for (int i = 0; i < 100; ++i) {
                        double mid = 0.5 * (xa + xb);
                        if ((eval_numeric(constraint.l, mid) < ls[j]) == increasing)
                            xa = mid;
                        else
                            xb = mid;
                    }
                    xs[j] = 0.5 * (xa + xb);
                    if (std::fabs(eval_numeric(constraint.l, xs[j]) - ls[j]) > 1e-9) ok = false;
                }
                break;
            }
        }
        if (!ok) continue;
        for (double x : xs)
            if (!in_domain(x)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(std::move(xs));
    }
    if (static_cast<int>(out.size()) < count)
        throw std::runtime_error("sample_constraint_tuples: rejection sampling starved");
    return out;
}

}  // namespace tangent
