#pragma once

#include <nlohmann/json.hpp>

#include "tangent/jensen.hpp"

namespace tangent {

// JSON encoding of a proof certificate; the schema is documented bit-exactly
// in docs/certificate-schema.md. Rationals serialize as canonical exact
// strings, polynomials as degree-ascending coefficient arrays.
nlohmann::json certificate_to_json(const ProofCertificate& cert);
ProofCertificate certificate_from_json(const nlohmann::json& j);

// Plain-text proof narrative (curve, factorization, sign argument,
// conclusion).
std::string render_proof(const ProofCertificate& cert);

}  // namespace tangent
