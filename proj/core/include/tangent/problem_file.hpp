#pragma once

#include <stdexcept>

#include "tangent/jensen.hpp"

namespace tangent {

struct ProblemFileError : std::runtime_error {
    explicit ProblemFileError(const std::string& what) : std::runtime_error(what) {}
};

// Expected results for corpus entries, matched by `prover corpus`.
struct ExpectedBlock {
    std::optional<Route> route;
    std::optional<std::string> status;  // "exact" | "numeric"
    std::optional<BigRational> k, m;
    std::optional<Polynomial> cofactor;     // expected.T, degree-ascending
    std::optional<Polynomial> denominator;  // expected.Q
    std::optional<Interval> carved;         // expected.G
    std::optional<BigRational> bound_value;
    std::optional<std::vector<BigRational>> touch_points;

    bool empty() const {
        return !route && !status && !k && !m && !cofactor && !denominator && !carved &&
               !bound_value && !touch_points;
    }
};

struct ProblemFile {
    ProblemSpec problem;
    std::optional<ExpectedBlock> expected;
    std::string provenance;  // leading comment block
};

// Flat key-value format, one `key = value` per line, full-line # comments.
// docs/problem-format.md documents every key.
ProblemFile parse_problem_file(const std::string& text);

ProblemFile load_problem_file(const std::string& path);

// Mismatches between a certificate and an expected block; empty means pass.
std::vector<std::string> match_expected(const ProofCertificate& cert, const ExpectedBlock& expected,
                                        double numeric_tol);

}  // namespace tangent
