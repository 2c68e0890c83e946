#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sciwb/reduction.hpp"

namespace sciwb {

/// Known bounds on a height; ub == nullopt means unbounded.
struct HeightInterval {
  int lb = 0;
  std::optional<int> ub;

  bool exact() const { return ub && *ub == lb; }
  std::string to_string() const;
};

enum class ProvenanceKind { TowerWitness, RecordedFact, TransferredLB, Derived };
std::string_view to_string(ProvenanceKind k);

/// One node of a derivation tree.
struct Provenance {
  ProvenanceKind kind = ProvenanceKind::RecordedFact;
  std::string detail;  // tower name, citation, reduction name or rule name
  std::vector<Provenance> premises;
};

struct HeightCertificate {
  std::string problem;
  HeightInterval interval;
  std::vector<Provenance> provenance;
};

/// Proved height entered as data, with a citation string.
HeightCertificate recorded_fact(std::string problem, int lb, std::optional<int> ub, std::string citation);
/// Upper bound ub = tower.height witnessed by a tower.
HeightCertificate tower_witness(std::string problem, const Tower& tower);
/// Intersection of two certificates for the same problem. Throws InvalidArgument on contradiction.
HeightCertificate merge(const HeightCertificate& a, const HeightCertificate& b);
/// Indented derivation tree.
std::string render(const HeightCertificate& cert);

/// Nonempty list of member certificates.
struct FamilyRecord {
  std::string name;
  std::vector<HeightCertificate> members;
};

enum class Tri { False, True, Unknown };
std::string_view to_string(Tri t);
Tri tri_and(Tri a, Tri b);
Tri tri_or(Tri a, Tri b);

struct SharpnessVerdict {
  int k = 0;
  Tri pointwise_exact = Tri::Unknown;
  Tri witness_sharp = Tri::Unknown;
  Tri worst_case_exact = Tri::Unknown;

  std::string to_string() const;  // e.g. "(F,T,T)"
};

/// Requires exact member heights; throws IndeterminateHeight otherwise and InvalidArgument on an empty record.
SharpnessVerdict classify_family(const FamilyRecord& record, int k);
SharpnessVerdict classify_heights(std::span<const int> heights, int k);

/// Gives every reduction target lb >= source lb with TransferredLB provenance.
/// Existing certificates are merged, so no lb is ever lowered.
/// Throws UnverifiedReduction or ProblemMismatch.
std::vector<HeightCertificate> transfer_lower_bound(const HeightCertificate& source,
                                                    std::span<const VerifiedReduction> reductions,
                                                    std::span<const HeightCertificate> existing = {});

struct PackageResult {
  std::vector<HeightCertificate> members;
  SharpnessVerdict verdict;
};

/// (C1) source exact k, (C2) a verified reduction per member, (C3) ub <= k per member.
/// Throws MissingClauseError naming the first failing clause.
PackageResult sufficiency_package(const HeightCertificate& source, int k, std::span<const std::string> members,
                                  std::span<const VerifiedReduction> reductions,
                                  std::span<const HeightCertificate> upper_bounds);

/// Same clauses over an exact level-k basis; assignment maps member -> basis problem id.
PackageResult transport_saturation(std::span<const HeightCertificate> basis, int k,
                                   std::span<const std::string> members,
                                   const std::map<std::string, std::string>& assignment,
                                   std::span<const VerifiedReduction> reductions,
                                   std::span<const HeightCertificate> upper_bounds);

/// For each subfamily: pointwise exact iff every member lies in the source's cone,
/// witness sharp (= worst-case exact) iff some member does. All flags are Unknown
/// when the ambient fails ub <= k or the source is not exact.
std::vector<SharpnessVerdict> principal_ambient_check(const FamilyRecord& ambient, const HeightCertificate& source,
                                                      const std::map<std::string, Tri>& cone_membership,
                                                      const std::vector<std::vector<std::string>>& subfamilies);

}  // namespace sciwb
