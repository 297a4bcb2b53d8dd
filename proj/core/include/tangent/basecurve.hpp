#pragma once

#include <vector>

#include "tangent/expr.hpp"
#include "tangent/interval.hpp"

namespace tangent {

// Side condition sum l(x_j) = B over n positive variables. "mean" problem
// files with a power alpha canonicalize to PowerSum; with a custom l they
// stay CustomMean.
enum class ConstraintFamily { Sum, PowerSum, Product, CustomMean };

struct ConstraintSpec {
    ConstraintFamily family = ConstraintFamily::Sum;
    BigRational alpha;  // PowerSum only, nonzero
    ExprPtr l;          // CustomMean only
    BigRational budget; // B (for Product: the fixed product)
    int n = 1;

    std::string family_name() const;
};

void validate(const ConstraintSpec& c);

// The l whose sum the constraint fixes (x, x^alpha, ln x, or the custom l).
ExprPtr constraint_l(const ConstraintSpec& c);

// Sum of l over the constraint: B for Sum/PowerSum/CustomMean, ln B for
// Product (where it has no exact rational value, callers work symbolically).
ExprPtr constraint_l_sum(const ConstraintSpec& c);

// The equality point the constraint implies: l(x0) = B/n, solved exactly.
// nullopt when x0 is irrational (or, for CustomMean, when no rational
// solution lies in the domain).
std::optional<BigRational> implied_touch_point(const ConstraintSpec& c, const Interval& domain);

// The range the variables can occupy under the constraint (positivity
// included); certificates must cover it.
Interval feasible_range(const ConstraintSpec& c);

enum class CurveFamily { Line, PowerCurve, LogCurve, CustomCurve };

std::string to_string(CurveFamily f);

struct CurveConstructionError : std::runtime_error {
    explicit CurveConstructionError(const std::string& what) : std::runtime_error(what) {}
};

// g(x) = k*l(x) + m matched to f at x0: g(x0) = f(x0), g'(x0) = f'(x0)
// (exact when f is rational; symbolic constants otherwise).
struct BaseCurve {
    CurveFamily family = CurveFamily::Line;
    BigRational alpha;  // PowerCurve exponent
    ExprPtr l;
    std::optional<BigRational> k, m;  // exact coefficients when available
    ExprPtr k_sym, m_sym;             // always present
    BigRational x0;
    ExprPtr as_expr;

    bool exact() const { return k.has_value() && m.has_value(); }
    double k_value() const;
    double m_value() const;
};

// g = k*l + m with k = f'(x0)/l'(x0) (k = 0 when l'(x0) = 0) and
// m = f(x0) - k*l(x0). Throws CurveConstructionError at poles/branch points.
BaseCurve base_curve(const ExprPtr& f, const ExprPtr& l, const BigRational& x0);

BaseCurve tangent_line(const ExprPtr& f, const BigRational& x0);

// The repair curve when a tangent line fails: l = x^2.
BaseCurve parabola_curve(const ExprPtr& f, const BigRational& x0);

BaseCurve power_curve(const ExprPtr& f, const BigRational& alpha, const BigRational& x0);

BaseCurve log_curve(const ExprPtr& f, const BigRational& x0);

struct Admissibility {
    bool admissible = false;
    std::string reason;
};

// A tangent line under the power-mean constraint c_alpha = x0 is usable when
// (alpha - 1) * f'(x0) <= 0. Product constraints use alpha = 0.
Admissibility admissibility_theorem3(const BigRational& alpha, const BigRational& fprime_x0);

// A power curve x^alpha under a sum constraint is usable when
// (alpha - 1) * f'(x0) >= 0 (alpha != 0).
Admissibility admissibility_theorem4(const BigRational& alpha, const BigRational& fprime_x0);

// How a candidate's per-point bound sums to n*f(x0).
enum class SummationRule { DirectL, PowerMeanTheorem3, PowerMeanTheorem4 };

std::string to_string(SummationRule r);

struct CandidateCurve {
    BaseCurve curve;
    SummationRule summation = SummationRule::DirectL;
    std::string note;
};

struct FamilySelection {
    std::vector<CandidateCurve> candidates;  // in method order
    std::vector<std::string> rejections;     // families that failed admissibility, with reasons
};

// The method's candidate order:
//   Sum:        line, then power curves (alpha in {2, 3}) under Theorem 4
//   PowerSum:   the matching power curve, then a line under Theorem 3
//   Product:    the log curve, then a line when f'(x0) > 0
//   CustomMean: the matching k*l + m curve
FamilySelection select_family(const ExprPtr& f, const ConstraintSpec& c, const BigRational& x0);

struct PowerMeanValue {
    BigRational alpha;
    double value = 0.0;
    std::optional<BigRational> exact;  // alpha in {1, -1}, or when roots are perfect
};

// c_alpha(xs) = (sum x^alpha / n)^(1/alpha), geometric mean at alpha = 0.
PowerMeanValue power_mean(const BigRational& alpha, const std::vector<double>& xs);
PowerMeanValue power_mean_exact(const BigRational& alpha, const std::vector<BigRational>& xs);

}  // namespace tangent
