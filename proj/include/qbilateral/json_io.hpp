#ifndef QBILATERAL_JSON_IO_HPP
#define QBILATERAL_JSON_IO_HPP

#include <json.hpp>

#include "qbilateral/harness.hpp"

// JSON serialization used by the harness, CLI and report files. Complex
// numbers always serialize as {"re": .., "im": ..}; parsing also accepts a
// bare number for a real value.

namespace qb {

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json to_json(const LemmaSpec& s);
Json to_json(const TheoremSpec& s);
Json to_json(const CorollarySpec& s);
Json to_json(const Psi2Spec& s);
Json to_json(const SpecVariant& s);

LemmaSpec lemma_spec_from_json(const Json& j);
TheoremSpec theorem_spec_from_json(const Json& j);
CorollarySpec corollary_spec_from_json(const Json& j);
Psi2Spec psi2_spec_from_json(const Json& j);

Json to_json(const VerificationRecord& r);
Json to_json(const SamplerConfig& c);
Json to_json(const TruncationConfig& c);
Json to_json(const SuiteReport& r, double tol);

/// Parse a run-config document (SamplerConfig + TruncationConfig + tol).
/// Unknown keys are rejected; absent optional keys take defaults.
struct RunConfig {
    SamplerConfig sampler;
    TruncationConfig trunc;
    double tol = 1e-8;
};
RunConfig run_config_from_json(const Json& j);  // throws DomainError on schema errors

}  // namespace qb

#endif
