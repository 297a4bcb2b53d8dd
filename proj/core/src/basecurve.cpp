#include "tangent/basecurve.hpp"

#include <cmath>
#include <sstream>

namespace tangent {

std::string ConstraintSpec::family_name() const {
    switch (family) {
        case ConstraintFamily::Sum: return "sum";
        case ConstraintFamily::PowerSum: return "power_sum";
        case ConstraintFamily::Product: return "product";
        default: return "mean";
    }
}

void validate(const ConstraintSpec& c) {
    if (c.n < 1) throw std::invalid_argument("constraint: n must be >= 1");
    if (c.family == ConstraintFamily::PowerSum && c.alpha == 0)
        throw std::invalid_argument("constraint: power_sum needs a nonzero alpha");
    if (c.family == ConstraintFamily::Product && c.budget <= 0)
        throw std::invalid_argument("constraint: product budget must be positive");
    if (c.family == ConstraintFamily::CustomMean && !c.l)
        throw std::invalid_argument("constraint: mean family needs an l expression");
}

namespace {

ExprPtr power_l(const BigRational& alpha) {
    ExprPtr x = Expr::variable();
    BigInt p = alpha.get_num(), q = alpha.get_den();
    if (q == 1) return Expr::int_pow(x, p.get_si());
    return Expr::root(Expr::int_pow(x, p.get_si()), q.get_ui());
}

}  // namespace

ExprPtr constraint_l(const ConstraintSpec& c) {
    switch (c.family) {
        case ConstraintFamily::Sum: return Expr::variable();
        case ConstraintFamily::PowerSum: return power_l(c.alpha);
        case ConstraintFamily::Product: return Expr::ln(Expr::variable());
        default: return c.l;
    }
}

ExprPtr constraint_l_sum(const ConstraintSpec& c) {
    if (c.family == ConstraintFamily::Product) return Expr::ln(Expr::constant(c.budget));
    return Expr::constant(c.budget);
}

std::optional<BigRational> implied_touch_point(const ConstraintSpec& c, const Interval& domain) {
    switch (c.family) {
        case ConstraintFamily::Sum: return BigRational(c.budget / c.n);
        case ConstraintFamily::PowerSum: {
            BigRational mean = c.budget / c.n;
            BigInt p = c.alpha.get_num(), q = c.alpha.get_den();
            bool invert = p < 0;
            if (invert) p = -p;
            if (mean <= 0) return std::nullopt;
            BigRational powed = invert ? pow(BigRational(1) / mean, q.get_si())
                                       : pow(mean, q.get_si());
            return exact_root(powed, p.get_ui());
        }
        case ConstraintFamily::Product:
            return exact_root(c.budget, static_cast<unsigned long>(c.n));
        default: {
            auto lowered = lower_to_rational(c.l);
            if (!std::holds_alternative<RationalFunction>(lowered)) return std::nullopt;
            const auto& lf = std::get<RationalFunction>(lowered);
            BigRational target = c.budget / c.n;
            Polynomial eq = lf.num() - lf.den() * target;
            std::optional<BigRational> best;
            for (const BigRational& r : rational_roots(eq)) {
                if (!lf.defined_at(r) || !domain.contains(r)) continue;
                if (!best || r < *best) best = r;
            }
            return best;
        }
    }
}

Interval feasible_range(const ConstraintSpec& c) {
    switch (c.family) {
        case ConstraintFamily::Sum: return Interval::open(BigRational(0), c.budget);
        case ConstraintFamily::PowerSum: {
            if (c.alpha > 0) {
                // positive x with x^alpha < B: cover (0, B^{1/alpha}] by the
                // smallest integer bound when the endpoint is irrational
                BigRational hi(1);
                long pnum = c.alpha.get_num().get_si();
                long pden = c.alpha.get_den().get_si();
                while (pow(hi, pnum) < pow(c.budget, pden)) hi = hi + 1;
                return Interval::open(BigRational(0), hi);
            }
            return Interval::at_least(BigRational(0), true);  // alpha < 0: unbounded above
        }
        case ConstraintFamily::Product: return Interval::at_least(BigRational(0), true);
        default: return Interval::at_least(BigRational(0), true);
    }
}

std::string to_string(CurveFamily f) {
    switch (f) {
        case CurveFamily::Line: return "line";
        case CurveFamily::PowerCurve: return "power";
        case CurveFamily::LogCurve: return "log";
        default: return "custom";
    }
}

double BaseCurve::k_value() const {
    return k ? to_double(*k) : eval_numeric(k_sym, 0.0);
}

double BaseCurve::m_value() const {
    return m ? to_double(*m) : eval_numeric(m_sym, 0.0);
}

BaseCurve base_curve(const ExprPtr& f, const ExprPtr& l, const BigRational& x0) {
    ExprPtr x0_const = Expr::constant(x0);
    ExprPtr f_at, fprime_at, l_at, lprime_at;
    try {
        f_at = substitute_constant(f, x0_const);
        fprime_at = substitute_constant(differentiate(f), x0_const);
        l_at = substitute_constant(l, x0_const);
        lprime_at = substitute_constant(differentiate(l), x0_const);
        // force full evaluation so poles and branch points surface here
        (void)eval_numeric(f_at, 0.0);
        (void)eval_numeric(fprime_at, 0.0);
        (void)eval_numeric(l_at, 0.0);
    } catch (const EvalDomainError& e) {
        throw CurveConstructionError("f or l is not differentiable at x0 = " + to_string(x0) +
                                     ": " + e.what());
    }

    bool lprime_zero;
    try {
        lprime_zero = eval_numeric(lprime_at, 0.0) == 0.0;
        if (auto exact_lp = eval_exact(lprime_at, BigRational(0))) lprime_zero = (*exact_lp == 0);
    } catch (const EvalDomainError& e) {
        throw CurveConstructionError("l is not differentiable at x0 = " + to_string(x0) + ": " +
                                     e.what());
    }

    BaseCurve curve;
    curve.family = CurveFamily::CustomCurve;
    curve.l = l;
    curve.x0 = x0;
    try {
        curve.k_sym = lprime_zero ? Expr::constant(BigRational(0)) : Expr::div(fprime_at, lprime_at);
        curve.m_sym = Expr::sub(f_at, Expr::mul(curve.k_sym, l_at));
        curve.k = eval_exact(curve.k_sym, BigRational(0));
        curve.m = eval_exact(curve.m_sym, BigRational(0));
    } catch (const EvalDomainError& e) {
        throw CurveConstructionError(std::string("curve coefficients undefined: ") + e.what());
    }

    ExprPtr k_expr = curve.k ? Expr::constant(*curve.k) : curve.k_sym;
    ExprPtr m_expr = curve.m ? Expr::constant(*curve.m) : curve.m_sym;
    curve.as_expr = Expr::add(Expr::mul(k_expr, l), m_expr);
    return curve;
}

BaseCurve tangent_line(const ExprPtr& f, const BigRational& x0) {
    BaseCurve curve = base_curve(f, Expr::variable(variable_name(f)), x0);
    curve.family = CurveFamily::Line;
    return curve;
}

BaseCurve parabola_curve(const ExprPtr& f, const BigRational& x0) {
    return power_curve(f, BigRational(2), x0);
}

BaseCurve power_curve(const ExprPtr& f, const BigRational& alpha, const BigRational& x0) {
    if (alpha == 0) throw std::invalid_argument("power_curve: alpha must be nonzero");
    if (x0 <= 0 && alpha.get_den() != 1)
        throw CurveConstructionError("power_curve: fractional alpha needs x0 > 0");
    BaseCurve curve = base_curve(f, power_l(alpha), x0);
    curve.family = CurveFamily::PowerCurve;
    curve.alpha = alpha;
    return curve;
}

BaseCurve log_curve(const ExprPtr& f, const BigRational& x0) {
    if (x0 <= 0) throw CurveConstructionError("log_curve: x0 must be positive");
    BaseCurve curve = base_curve(f, Expr::ln(Expr::variable(variable_name(f))), x0);
    curve.family = CurveFamily::LogCurve;
    return curve;
}

Admissibility admissibility_theorem3(const BigRational& alpha, const BigRational& fprime_x0) {
    BigRational product = (alpha - 1) * fprime_x0;
    Admissibility out;
    out.admissible = product <= 0;
    std::ostringstream reason;
    reason << "(alpha - 1) * f'(x0) = " << to_string(product)
           << (out.admissible ? " <= 0" : " > 0: a tangent line cannot separate here");
    out.reason = reason.str();
    return out;
}

Admissibility admissibility_theorem4(const BigRational& alpha, const BigRational& fprime_x0) {
    if (alpha == 0) return {false, "alpha must be nonzero"};
    BigRational product = (alpha - 1) * fprime_x0;
    Admissibility out;
    out.admissible = product >= 0;
    std::ostringstream reason;
    reason << "(alpha - 1) * f'(x0) = " << to_string(product)
           << (out.admissible ? " >= 0" : " < 0: the power curve is not separating");
    out.reason = reason.str();
    return out;
}

std::string to_string(SummationRule r) {
    switch (r) {
        case SummationRule::DirectL: return "direct";
        case SummationRule::PowerMeanTheorem3: return "power_mean_theorem3";
        default: return "power_mean_theorem4";
    }
}

namespace {

// f'(x0), exact when the expression permits; the double fallback only feeds
// candidate ordering on the numeric-evidence path.
BigRational fprime_for_gates(const ExprPtr& f, const BigRational& x0) {
    ExprPtr fprime_at = substitute_constant(differentiate(f), Expr::constant(x0));
    if (auto exact = eval_exact(fprime_at, BigRational(0))) return *exact;
    double v = eval_numeric(fprime_at, 0.0);
    if (std::fabs(v) < 1e-12) return BigRational(0);
    return exact_from_double(v);
}

}  // namespace

FamilySelection select_family(const ExprPtr& f, const ConstraintSpec& c, const BigRational& x0) {
    validate(c);
    FamilySelection out;
    BigRational fp = fprime_for_gates(f, x0);

    auto push = [&out](BaseCurve curve, SummationRule rule, std::string note) {
        out.candidates.push_back({std::move(curve), rule, std::move(note)});
    };

    switch (c.family) {
        case ConstraintFamily::Sum: {
            push(tangent_line(f, x0), SummationRule::DirectL,
                 "tangent line under the sum constraint");
            for (long a : {2L, 3L}) {
                Admissibility adm = admissibility_theorem4(BigRational(a), fp);
                if (adm.admissible)
                    push(power_curve(f, BigRational(a), x0), SummationRule::PowerMeanTheorem4,
                         "power curve x^" + std::to_string(a) + " admitted: " + adm.reason);
                else
                    out.rejections.push_back("power curve x^" + std::to_string(a) + ": " +
                                             adm.reason);
            }
            break;
        }
        case ConstraintFamily::PowerSum: {
            push(power_curve(f, c.alpha, x0), SummationRule::DirectL,
                 "matching power curve x^" + to_string(c.alpha));
            Admissibility adm = admissibility_theorem3(c.alpha, fp);
            if (adm.admissible)
                push(tangent_line(f, x0), SummationRule::PowerMeanTheorem3,
                     "tangent line admitted: " + adm.reason);
            else
                out.rejections.push_back("tangent line: " + adm.reason);
            break;
        }
        case ConstraintFamily::Product: {
            push(log_curve(f, x0), SummationRule::DirectL,
                 "log curve under the product constraint");
            if (fp > 0)
                push(tangent_line(f, x0), SummationRule::PowerMeanTheorem3,
                     "tangent line admitted: f'(x0) = " + to_string(fp) + " > 0");
            else
                out.rejections.push_back("tangent line: f'(x0) = " + to_string(fp) +
                                         " is not positive under a product constraint");
            break;
        }
        case ConstraintFamily::CustomMean: {
            push(base_curve(f, c.l, x0), SummationRule::DirectL,
                 "curve k*l + m matching the constrained l");
            break;
        }
    }
    return out;
}

PowerMeanValue power_mean(const BigRational& alpha, const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("power_mean: empty input");
    for (double x : xs)
        if (!(x > 0)) throw std::invalid_argument("power_mean: inputs must be positive");
    PowerMeanValue out;
    out.alpha = alpha;
    double a = to_double(alpha);
    if (alpha == 0) {
        double log_sum = 0;
        for (double x : xs) log_sum += std::log(x);
        out.value = std::exp(log_sum / xs.size());
    } else {
        double sum = 0;
        for (double x : xs) sum += std::pow(x, a);
        out.value = std::pow(sum / xs.size(), 1.0 / a);
    }
    return out;
}

PowerMeanValue power_mean_exact(const BigRational& alpha, const std::vector<BigRational>& xs) {
    if (xs.empty()) throw std::invalid_argument("power_mean: empty input");
    std::vector<double> approx;
    approx.reserve(xs.size());
    for (const auto& x : xs) {
        if (x <= 0) throw std::invalid_argument("power_mean: inputs must be positive");
        approx.push_back(to_double(x));
    }
    PowerMeanValue out = power_mean(alpha, approx);
    if (alpha.get_den() != 1) return out;
    long a = alpha.get_num().get_si();
    if (a == 0) {
        BigRational prod(1);
        for (const auto& x : xs) prod *= x;
        if (auto r = exact_root(prod, xs.size())) {
            out.exact = r;
            out.value = to_double(*r);
        }
        return out;
    }
    BigRational sum(0);
    for (const auto& x : xs) sum += pow(x, a);
    BigRational mean = sum / static_cast<long>(xs.size());
    if (a == 1) {
        out.exact = mean;
    } else if (a == -1) {
        out.exact = BigRational(1) / mean;
    } else if (a > 0) {
        if (auto r = exact_root(mean, static_cast<unsigned long>(a))) out.exact = r;
    } else {
        if (auto r = exact_root(BigRational(1) / mean, static_cast<unsigned long>(-a)))
            out.exact = r;
    }
    if (out.exact) out.value = to_double(*out.exact);
    return out;
}

}  // namespace tangent
