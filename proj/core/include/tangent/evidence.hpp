#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tangent/expr.hpp"
#include "tangent/interval.hpp"

namespace tangent {

// Adaptive-grid numeric check of f >= g on an interval. Explicitly weaker
// than a sign certificate; every report is flagged as evidence.
struct EvidenceReport {
    enum class Verdict { HoldsNumerically, Violated };
    Verdict verdict = Verdict::HoldsNumerically;
    double min_gap = 0.0;   // min of f - g over all samples
    double argmin = 0.0;
    std::optional<double> witness;  // the deepest sample with f - g < -tol
    double witness_value = 0.0;
    // every violating sample (x, gap), capped at 1000 entries
    std::vector<std::pair<double, double>> violations;
    int grid_points = 0;
    double tol = 0.0;
    std::string flag = "evidence, not certificate";

    bool holds() const { return verdict == Verdict::HoldsNumerically; }
};

std::string to_string(EvidenceReport::Verdict v);

// Samples f - g on a uniform interior grid plus 10x refinement around
// near-zero dips. Domain violations inside iv propagate as EvalDomainError.
// grid_points >= 100; the interval must be bounded.
EvidenceReport numeric_evidence(const ExprPtr& f, const ExprPtr& g, const Interval& iv,
                                int grid_points = 10000, double tol = 1e-9);

}  // namespace tangent
