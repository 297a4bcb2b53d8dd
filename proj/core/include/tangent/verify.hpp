#pragma once

#include <nlohmann/json.hpp>

#include "tangent/jensen.hpp"

namespace tangent {

struct VerificationReport {
    bool valid = false;
    std::vector<std::string> checks;    // every re-derived fact, in order
    std::vector<std::string> failures;  // the first mismatch(es)
};

// Re-validates a serialized certificate from its own fields: tangency
// equalities, exact reconstruction of the (x - x0)^2 factorization, sign
// verdicts re-derived by fresh Sturm runs, extremum values and the split
// condition arithmetic, the Theorem 5 endpoint conditions, and the settled
// bound. The numeric-evidence route is re-sampled on the recorded grid.
VerificationReport verify_certificate(const nlohmann::json& cert_json);

}  // namespace tangent
