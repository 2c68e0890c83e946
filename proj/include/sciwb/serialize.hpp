#pragma once

#include <string>

#include "json.hpp"
#include "sciwb/certificate.hpp"
#include "sciwb/reduction.hpp"

namespace sciwb {

using Json = nlohmann::ordered_json;

Json to_json(const Point& p);
Json to_json(const RuleSpec& r);
Json to_json(const VerificationReport& r);
Json to_json(const HeightCertificate& c);
Json to_json(const SharpnessVerdict& v);

/// {source, target, encoder, decoder, plan}; composites carry their parts.
Json reduction_to_json(const Reduction& r);

/// Rebuilds a reduction from named rules shipped with the family modules
/// (identity, interval_affine, stabilization_forward/backward, composite).
/// Throws CatalogError on unknown rules or inconsistent source/target ids.
Reduction reduction_from_json(const Json& j);

/// Problems addressed by id: "integrate[a,b]", "spectral-source[lo,hi]",
/// "spectral-stabilized[lo,hi]+<diagonal>", "singleton", "empty-query-0", "empty-query-1".
/// Throws UsageError on unknown ids.
ProblemPtr problem_from_id(const std::string& id);

}  // namespace sciwb
