#include "sciwb/certificate.hpp"

#include <algorithm>
#include <sstream>

namespace sciwb {

std::string HeightInterval::to_string() const {
  if (exact()) return std::to_string(lb);
  return "[" + std::to_string(lb) + ", " + (ub ? std::to_string(*ub) : std::string("inf")) + "]";
}

std::string_view to_string(ProvenanceKind k) {
  switch (k) {
    case ProvenanceKind::TowerWitness: return "TowerWitness";
    case ProvenanceKind::RecordedFact: return "RecordedFact";
    case ProvenanceKind::TransferredLB: return "TransferredLB";
    case ProvenanceKind::Derived: return "Derived";
  }
  return "?";
}

HeightCertificate recorded_fact(std::string problem, int lb, std::optional<int> ub, std::string citation) {
  if (lb < 0 || (ub && *ub < lb)) throw Error(Errc::InvalidArgument, "invalid height interval for " + problem);
  return {std::move(problem), {lb, ub}, {{ProvenanceKind::RecordedFact, std::move(citation), {}}}};
}

HeightCertificate tower_witness(std::string problem, const Tower& tower) {
  return {std::move(problem),
          {0, tower.height},
          {{ProvenanceKind::TowerWitness, tower.name + " (height " + std::to_string(tower.height) + ")", {}}}};
}

HeightCertificate merge(const HeightCertificate& a, const HeightCertificate& b) {
  if (a.problem != b.problem) throw Error(Errc::ProblemMismatch, "merging certificates of " + a.problem + " and " + b.problem);
  HeightCertificate out{a.problem, a.interval, a.provenance};
  out.interval.lb = std::max(a.interval.lb, b.interval.lb);
  if (b.interval.ub) out.interval.ub = out.interval.ub ? std::min(*out.interval.ub, *b.interval.ub) : *b.interval.ub;
  if (out.interval.ub && *out.interval.ub < out.interval.lb)
    throw Error(Errc::InvalidArgument, "contradictory certificates for " + a.problem + ": " + a.interval.to_string() +
                                           " and " + b.interval.to_string());
  out.provenance.insert(out.provenance.end(), b.provenance.begin(), b.provenance.end());
  return out;
}

namespace {

void render_node(std::ostringstream& os, const Provenance& p, int depth) {
  os << std::string(2 * depth, ' ') << "- " << to_string(p.kind) << ": " << p.detail << '\n';
  for (const auto& q : p.premises) render_node(os, q, depth + 1);
}

}  // namespace

std::string render(const HeightCertificate& cert) {
  std::ostringstream os;
  os << cert.problem << " : SCI in " << cert.interval.to_string() << '\n';
  for (const auto& p : cert.provenance) render_node(os, p, 1);
  return os.str();
}

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::True: return "T";
    case Tri::False: return "F";
    case Tri::Unknown: return "?";
  }
  return "?";
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Unknown;
}

Tri tri_or(Tri a, Tri b) {
  if (a == Tri::True || b == Tri::True) return Tri::True;
  if (a == Tri::False && b == Tri::False) return Tri::False;
  return Tri::Unknown;
}

std::string SharpnessVerdict::to_string() const {
  return "(" + std::string(sciwb::to_string(pointwise_exact)) + "," + std::string(sciwb::to_string(witness_sharp)) +
         "," + std::string(sciwb::to_string(worst_case_exact)) + ")";
}

namespace {
Tri tri(bool b) { return b ? Tri::True : Tri::False; }
}  // namespace

SharpnessVerdict classify_heights(std::span<const int> heights, int k) {
  if (heights.empty()) throw Error(Errc::InvalidArgument, "families are nonempty");
  const auto [lo, hi] = std::minmax_element(heights.begin(), heights.end());
  // The heights form a finite well-ordered set, so the supremum is attained.
  return {k, tri(*lo == k && *hi == k), tri(*hi == k), tri(*hi == k)};
}

SharpnessVerdict classify_family(const FamilyRecord& record, int k) {
  std::vector<int> heights;
  for (const auto& m : record.members) {
    if (!m.interval.exact())
      throw Error(Errc::IndeterminateHeight, m.problem + " has height " + m.interval.to_string());
    heights.push_back(m.interval.lb);
  }
  return classify_heights(heights, k);
}

std::vector<HeightCertificate> transfer_lower_bound(const HeightCertificate& source,
                                                    std::span<const VerifiedReduction> reductions,
                                                    std::span<const HeightCertificate> existing) {
  std::vector<HeightCertificate> out;
  for (const auto& vr : reductions) {
    const auto& r = vr.reduction;
    if (r.source->id() != source.problem)
      throw Error(Errc::ProblemMismatch, r.name + " starts at " + r.source->id() + ", not " + source.problem);
    if (!vr.report.pass) throw Error(Errc::UnverifiedReduction, r.name + " failed verification");
    const Provenance source_node{ProvenanceKind::Derived, "source " + source.problem + " in " + source.interval.to_string(),
                                 source.provenance};
    HeightCertificate cert{r.target->id(),
                           {source.interval.lb, std::nullopt},
                           {{ProvenanceKind::TransferredLB,
                             "lb " + std::to_string(source.interval.lb) + " along " + r.name + " (verified on " +
                                 std::to_string(vr.report.samples) + " samples)",
                             {source_node}}}};
    for (const auto& e : existing)
      if (e.problem == cert.problem) cert = merge(e, cert);
    out.push_back(std::move(cert));
  }
  return out;
}

PackageResult transport_saturation(std::span<const HeightCertificate> basis, int k,
                                   std::span<const std::string> members,
                                   const std::map<std::string, std::string>& assignment,
                                   std::span<const VerifiedReduction> reductions,
                                   std::span<const HeightCertificate> upper_bounds) {
  if (members.empty()) throw Error(Errc::InvalidArgument, "families are nonempty");
  for (const auto& b : basis)
    if (!b.interval.exact() || b.interval.lb != k)
      throw MissingClauseError(Clause::C1, b.problem,
                               "basis element " + b.problem + " is " + b.interval.to_string() + ", not exact " +
                                   std::to_string(k));
  if (basis.empty()) throw MissingClauseError(Clause::C1, "", "no exact source");

  PackageResult result;
  std::vector<int> heights;
  for (const auto& member : members) {
    const auto assigned = assignment.find(member);
    if (assigned == assignment.end())
      throw MissingClauseError(Clause::C2, member, member + " is not assigned to a basis element");
    const auto src = std::find_if(basis.begin(), basis.end(), [&](const auto& b) { return b.problem == assigned->second; });
    if (src == basis.end())
      throw MissingClauseError(Clause::C1, member, member + " is assigned to " + assigned->second + ", not in the basis");
    const auto red = std::find_if(reductions.begin(), reductions.end(), [&](const VerifiedReduction& vr) {
      return vr.report.pass && vr.reduction.source->id() == src->problem && vr.reduction.target->id() == member;
    });
    if (red == reductions.end())
      throw MissingClauseError(Clause::C2, member, "no verified reduction from " + src->problem + " to " + member);
    const auto ub = std::find_if(upper_bounds.begin(), upper_bounds.end(), [&](const HeightCertificate& c) {
      return c.problem == member && c.interval.ub && *c.interval.ub <= k;
    });
    if (ub == upper_bounds.end())
      throw MissingClauseError(Clause::C3, member, "no upper bound <= " + std::to_string(k) + " for " + member);

    const auto lb = transfer_lower_bound(*src, std::span(&*red, 1)).front();
    HeightCertificate cert = merge(lb, *ub);
    cert.interval = {k, k};
    cert.provenance = {{ProvenanceKind::Derived, "exact " + std::to_string(k) + " by lower-bound transfer and upper bound",
                        {lb.provenance.front(), ub->provenance.empty() ? Provenance{} : ub->provenance.front()}}};
    heights.push_back(k);
    result.members.push_back(std::move(cert));
  }
  result.verdict = classify_heights(heights, k);
  return result;
}

PackageResult sufficiency_package(const HeightCertificate& source, int k, std::span<const std::string> members,
                                  std::span<const VerifiedReduction> reductions,
                                  std::span<const HeightCertificate> upper_bounds) {
  std::map<std::string, std::string> assignment;
  for (const auto& m : members) assignment[m] = source.problem;
  return transport_saturation(std::span(&source, 1), k, members, assignment, reductions, upper_bounds);
}

std::vector<SharpnessVerdict> principal_ambient_check(const FamilyRecord& ambient, const HeightCertificate& source,
                                                      const std::map<std::string, Tri>& cone_membership,
                                                      const std::vector<std::vector<std::string>>& subfamilies) {
  const int k = source.interval.lb;
  bool preconditions = source.interval.exact() && !ambient.members.empty();
  for (const auto& m : ambient.members) preconditions = preconditions && m.interval.ub && *m.interval.ub <= k;

  std::vector<SharpnessVerdict> out;
  for (const auto& family : subfamilies) {
    SharpnessVerdict v{k, Tri::Unknown, Tri::Unknown, Tri::Unknown};
    if (preconditions && !family.empty()) {
      Tri all = Tri::True;
      Tri some = Tri::False;
      for (const auto& member : family) {
        const bool in_ambient = std::any_of(ambient.members.begin(), ambient.members.end(),
                                            [&](const auto& c) { return c.problem == member; });
        const auto it = cone_membership.find(member);
        const Tri reduced = (!in_ambient || it == cone_membership.end()) ? Tri::Unknown : it->second;
        all = tri_and(all, reduced);
        some = tri_or(some, reduced);
      }
      v.pointwise_exact = all;
      v.witness_sharp = some;
      v.worst_case_exact = some;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace sciwb
