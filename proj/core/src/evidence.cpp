#include "tangent/evidence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tangent {

std::string to_string(EvidenceReport::Verdict v) {
    return v == EvidenceReport::Verdict::HoldsNumerically ? "HOLDS_NUMERICALLY" : "VIOLATED";
}

EvidenceReport numeric_evidence(const ExprPtr& f, const ExprPtr& g, const Interval& iv,
                                int grid_points, double tol) {
    if (grid_points < 100)
        throw std::invalid_argument("numeric_evidence: grid_points must be >= 100");
    if (!iv.bounded())
        throw std::invalid_argument("numeric_evidence: interval must be bounded");
    validate(iv);
    double a = to_double(*iv.lo), b = to_double(*iv.hi);
    if (!(a < b)) throw std::invalid_argument("numeric_evidence: empty interval");

    EvidenceReport report;
    report.grid_points = grid_points;
    report.tol = tol;

    auto gap = [&f, &g](double x) { return eval_numeric(f, x) - eval_numeric(g, x); };

    double min_gap = std::numeric_limits<double>::infinity();
    double argmin = a;
    std::vector<double> dips;

    double step = (b - a) / (grid_points + 1);
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= grid_points; ++i) {
        double x = a + step * i;
        double d = gap(x);
        if (d < min_gap) {
            min_gap = d;
            argmin = x;
        }
        if (d < -tol && report.violations.size() < 1000) report.violations.emplace_back(x, d);
        // near-zero local dip: candidate for refinement
        if (std::fabs(d) < std::fabs(prev) && std::fabs(d) < 1e-4) dips.push_back(x);
        prev = d;
    }
    dips.push_back(argmin);

    for (double center : dips) {
        double lo = std::max(a + step * 0.01, center - step);
        double hi = std::min(b - step * 0.01, center + step);
        int refined = 10 * 2;  // 10x density over the two adjacent cells
        for (int i = 0; i <= refined; ++i) {
            double x = lo + (hi - lo) * i / refined;
            double d = gap(x);
            if (d < min_gap) {
                min_gap = d;
                argmin = x;
            }
        }
    }

    report.min_gap = min_gap;
    report.argmin = argmin;
    if (min_gap >= -tol) {
        report.verdict = EvidenceReport::Verdict::HoldsNumerically;
    } else {
        report.verdict = EvidenceReport::Verdict::Violated;
        report.witness = argmin;
        report.witness_value = min_gap;
    }
    return report;
}

}  // namespace tangent
