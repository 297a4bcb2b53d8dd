#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tangent/basecurve.hpp"
#include "tangent/evidence.hpp"
#include "tangent/minimize.hpp"
#include "tangent/sturm.hpp"

namespace tangent {

enum class Direction { LowerBound, UpperBound };  // sum f >= A | sum f <= A

std::string to_string(Direction d);

struct ProblemSpec {
    std::string id;
    std::vector<ExprPtr> functions;  // one entry for symmetric problems, n for heterogeneous
    int n = 1;
    ConstraintSpec constraint;
    Interval domain;
    Direction direction = Direction::LowerBound;
    ExprPtr bound;  // constant; for homogeneous problems an expression in the budget
    std::optional<BigRational> touch_point;        // override
    std::optional<BigRational> homogeneous_degree; // set when normalization applies
    std::optional<BigRational> normalize_budget;   // budget chosen for normalization
    struct CurveOverride {
        CurveFamily family = CurveFamily::Line;
        BigRational alpha;
    };
    std::optional<CurveOverride> curve_override;

    const ExprPtr& f() const { return functions.front(); }
    std::optional<BigRational> bound_value() const;
};

void validate(const ProblemSpec& p);

enum class Route {
    Theorem1,
    Theorem2Split,
    Theorem5Cubic,
    Case2Heterogeneous,
    NumericEvidenceOnly,
    Failure,
};

std::string to_string(Route r);
std::optional<Route> route_from_string(const std::string& s);

// f - g = (x - x0)^2 T / Qden (in the original problem direction).
struct Factorization {
    BigRational x0;
    Polynomial cofactor;
    Polynomial denominator;
};

struct CurveRecord {
    BaseCurve curve;  // original direction
    SummationRule summation = SummationRule::DirectL;
    std::string note;
    std::optional<Factorization> factorization;
    // sign of f - g required on the certified region (+1 for >=, -1 for <=)
    int required_sign = +1;
    std::optional<SignCertificate> cofactor_sign;      // T on the certified region
    std::optional<SignCertificate> denominator_sign;   // Qden on the domain
    std::vector<Interval> certified_regions;           // whole domain, or I minus G
};

struct SplitData {
    Interval carved;  // G
    // certified extrema of f over G and over I (minima for >=, maxima for <=)
    MinReport extremum_G, extremum_I;
    bool extrema_are_minima = true;
    BigRational n_f_x0;
    std::string condition;  // the verified inequality, rendered
};

struct Theorem5Data {
    // coefficients of the cubic the theorem was applied to (already negated
    // for upper-bound problems)
    BigRational a, b, c, d;
    BigRational x0;
    int n = 0;
    BigRational endpoint_low;   // 2 a x0 + b
    BigRational endpoint_high;  // (n + 2) a x0 + b
    bool trivial_n1 = false;
};

struct TouchPointSolution {
    std::vector<double> points;
    std::optional<std::vector<BigRational>> exact_points;
    double common_slope = 0.0;
    std::optional<BigRational> exact_slope;
    double sum_residual = 0.0;    // |sum l(x_j) - B|
    double slope_residual = 0.0;  // max pairwise slope deviation
};

struct EvidenceRecord {
    BaseCurve curve;  // original direction
    SummationRule summation = SummationRule::DirectL;
    std::string note;
    EvidenceReport report;
    // "f-g" for lower bounds, "g-f" for upper bounds
    std::string gap_sense = "f-g";
    bool selected = false;
};

struct Conclusion {
    std::optional<BigRational> n_f_x0;  // exact routes
    double n_f_x0_numeric = 0.0;
    std::optional<BigRational> bound;   // the problem's claimed A
    Direction direction = Direction::LowerBound;
    bool holds = false;  // the certified value settles the claimed bound
};

struct ProofCertificate {
    std::string problem_id;
    Route route = Route::Failure;
    ProblemSpec problem;  // after canonicalization / homogeneous normalization
    std::vector<CurveRecord> curves;
    std::optional<SplitData> split;
    std::optional<std::vector<BigRational>> touch_points;
    std::optional<Theorem5Data> cubic;
    std::vector<EvidenceRecord> evidence;
    Conclusion conclusion;
    std::vector<std::string> diagnostics;
    unsigned long seed = 42;
    double numeric_tol = 1e-9;

    bool exact() const {
        return route == Route::Theorem1 || route == Route::Theorem2Split ||
               route == Route::Theorem5Cubic || route == Route::Case2Heterogeneous;
    }
    bool proved() const { return route != Route::Failure && conclusion.holds; }
};

struct ProveOptions {
    double numeric_tol = 1e-9;
    int grid_points = 10000;
    unsigned long seed = 42;
};

// --- route implementations (all in the >= sense; prove() pre-negates
// --- upper-bound problems and flips the certificate back) ---

// Tangent route: Lemma 2 factorization of f - g plus a sign certificate of T
// over the whole domain. Returns a Failure certificate carrying the
// Indefinite witness when the curve crosses f.
ProofCertificate prove_theorem1(const ExprPtr& f, const CandidateCurve& candidate,
                                const ConstraintSpec& constraint, const Interval& domain);

// Split route: tangent bound on I minus G, extremum argument on G:
// min_G f + (n-1) min_I f >= n f(x0).
ProofCertificate prove_with_split(const ExprPtr& f, const CandidateCurve& candidate,
                                  const ConstraintSpec& constraint, const Interval& domain,
                                  const Interval& carved);

// Chooses G from the Indefinite geometry: the sign-changing roots of T on one
// side of x0 determine a carve boundary, isolated to 1e-6 and rounded outward
// to a denominator <= 100 rational when that still certifies.
std::optional<Interval> auto_split(const ExprPtr& f, const CandidateCurve& candidate,
                                   const Interval& domain, std::string* why_not = nullptr);

// Cubic fast path: P = ax^3 + bx^2 + cx + d over nonnegative variables
// summing to n*x0 complies with Jensen at x0 when 2 a x0 + b >= 0 and
// (n + 2) a x0 + b >= 0. n = 1 is trivially an equality.
ProofCertificate theorem5_cubic(const BigRational& a, const BigRational& b, const BigRational& c,
                                const BigRational& d, int n, const BigRational& x0);

struct NonMonotoneSlope : std::runtime_error {
    explicit NonMonotoneSlope(const std::string& what) : std::runtime_error(what) {}
};
struct NoSolutionInDomain : std::runtime_error {
    explicit NoSolutionInDomain(const std::string& what) : std::runtime_error(what) {}
};

// Heterogeneous touch points: solve sum l(x_j) = B with equal slope ratios
// f_j'/l' by nested bisection, then attempt exact rational reconstruction
// (denominators <= 10^4) verified exactly.
TouchPointSolution solve_touchpoints(const std::vector<ExprPtr>& fs, const ExprPtr& l,
                                     const BigRational& budget, const Interval& domain);

// Case 2: per-function curves k l(x) + m_j sharing one slope k; conclusion
// sum f_j >= k B + sum m_j.
ProofCertificate prove_case2(const std::vector<ExprPtr>& fs, const ConstraintSpec& constraint,
                             const Interval& domain, const ProveOptions& options = {});

struct NotHomogeneous : std::runtime_error {
    explicit NotHomogeneous(const std::string& what) : std::runtime_error(what) {}
};

// Rewrites a degree-homogeneous problem to a fixed-budget constraint with the
// bound transformed accordingly. Homogeneity is validated numerically.
ProblemSpec normalize_homogeneous(const ProblemSpec& problem);

// The full decision tree: normalization, direction, Theorem 5 fast path,
// family candidates in method order with exact-first routing, numeric
// evidence for non-rational data, split rescue on Indefinite signs.
ProofCertificate prove(const ProblemSpec& problem, const ProveOptions& options = {});

// Random tuples satisfying the constraint (for the sampling oracles):
// sum via simplex sampling, power-sum via rescaling, product via recentered
// logs, custom means via sampled l-values inverted by bisection.
std::vector<std::vector<double>> sample_constraint_tuples(const ConstraintSpec& constraint,
                                                          const Interval& domain, int count,
                                                          unsigned long seed);

}  // namespace tangent
