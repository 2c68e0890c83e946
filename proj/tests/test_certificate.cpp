#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "sciwb/integration.hpp"
#include "sciwb/spectral.hpp"

namespace sciwb {
namespace {

using integration::Interval;

TEST(Classifier, Examples) {
  EXPECT_EQ(classify_heights(std::vector<int>{2, 2, 2}, 2).to_string(), "(T,T,T)");
  EXPECT_EQ(classify_heights(std::vector<int>{0, 2}, 2).to_string(), "(F,T,T)");
  EXPECT_EQ(classify_heights(std::vector<int>{1, 3}, 2).to_string(), "(F,F,F)");
}

TEST(Classifier, ExhaustiveTruthTable) {
  std::vector<std::vector<int>> sets;
  std::vector<int> cur;
  oracle::multisets(cur, 0, sets);
  EXPECT_EQ(sets.size(), 69u);  // multisets of size 1..4 over 4 values: 4 + 10 + 20 + 35
  for (const auto& h : sets) {
    for (int k = 0; k <= 3; ++k) {
      const auto got = classify_heights(h, k);
      const auto want = oracle::sharpness(h, k);
      EXPECT_EQ(got.pointwise_exact, want.pointwise_exact);
      EXPECT_EQ(got.witness_sharp, want.witness_sharp);
      EXPECT_EQ(got.worst_case_exact, want.worst_case_exact);
      EXPECT_EQ(got.witness_sharp, got.worst_case_exact);
    }
  }
}

TEST(Classifier, FamilyRequiresExactHeights) {
  FamilyRecord r{"f", {recorded_fact("a", 1, 1, "c"), recorded_fact("b", 0, 2, "c")}};
  try {
    classify_family(r, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IndeterminateHeight);
  }
  EXPECT_THROW(classify_family(FamilyRecord{"empty", {}}, 1), Error);
}

TEST(Tri, KleeneTables) {
  EXPECT_EQ(tri_and(Tri::False, Tri::Unknown), Tri::False);
  EXPECT_EQ(tri_and(Tri::True, Tri::Unknown), Tri::Unknown);
  EXPECT_EQ(tri_or(Tri::True, Tri::Unknown), Tri::True);
  EXPECT_EQ(tri_or(Tri::False, Tri::Unknown), Tri::Unknown);
}

TEST(Certificate, MergeIntersects) {
  const auto a = recorded_fact("p", 1, std::nullopt, "lb");
  const auto b = tower_witness("p", integration::rectangle_tower(Interval(0, 1)));
  const auto m = merge(a, b);
  EXPECT_TRUE(m.interval.exact());
  EXPECT_EQ(m.interval.lb, 1);
  EXPECT_EQ(m.provenance.size(), 2u);
  EXPECT_THROW(merge(recorded_fact("p", 3, std::nullopt, "x"), b), Error);
  EXPECT_THROW(merge(a, recorded_fact("q", 1, 1, "x")), Error);
  EXPECT_NE(render(m).find("TowerWitness"), std::string::npos);
}

std::vector<VerifiedReduction> interval_reductions(const std::vector<Interval>& is) {
  std::vector<VerifiedReduction> out;
  for (const auto& i : is) out.push_back(verified(integration::affine_reduction(i), {.samples = 30}));
  return out;
}

TEST(Transfer, IntervalLowerBounds) {
  const auto src = integration::unit_interval_certificate();
  const auto rs = interval_reductions({Interval(0, 2), Interval(-1, 3)});
  const auto certs = transfer_lower_bound(src, rs);
  ASSERT_EQ(certs.size(), 2u);
  for (const auto& c : certs) {
    EXPECT_EQ(c.interval.lb, 1);
    EXPECT_EQ(c.provenance.front().kind, ProvenanceKind::TransferredLB);
  }
  EXPECT_TRUE(transfer_lower_bound(src, std::span<const VerifiedReduction>{}).empty());
}

TEST(Transfer, NeverLowersExisting) {
  const auto src = integration::unit_interval_certificate();
  const auto rs = interval_reductions({Interval(0, 2)});
  const std::vector<HeightCertificate> existing{recorded_fact(rs[0].reduction.target->id(), 3, std::nullopt, "x")};
  const auto certs = transfer_lower_bound(src, rs, existing);
  ASSERT_EQ(certs.size(), 1u);
  EXPECT_EQ(certs[0].interval.lb, 3);
}

TEST(Transfer, RejectsUnverifiedOrForeign) {
  const auto src = integration::unit_interval_certificate();
  auto rs = interval_reductions({Interval(0, 2)});
  rs[0].report.pass = false;
  try {
    transfer_lower_bound(src, rs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnverifiedReduction);
  }
  const auto other = recorded_fact("elsewhere", 1, 1, "x");
  try {
    transfer_lower_bound(other, interval_reductions({Interval(0, 2)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ProblemMismatch);
  }
}

struct IntervalData {
  std::vector<std::string> members;
  std::vector<VerifiedReduction> reductions;
  std::vector<HeightCertificate> ubs;
};

IntervalData interval_data(const std::vector<Interval>& is) {
  IntervalData d;
  d.reductions = interval_reductions(is);
  for (const auto& i : is) {
    const auto id = integration::make_problem(i)->id();
    d.members.push_back(id);
    d.ubs.push_back(tower_witness(id, integration::rectangle_tower(i)));
  }
  return d;
}

Clause clause_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const MissingClauseError& e) {
    return e.clause();
  }
  ADD_FAILURE() << "no MissingClause raised";
  return Clause::C1;
}

TEST(Package, IntervalFamilyExactOne) {
  const auto d = interval_data({Interval(0, 2), Interval(-1, 3), Interval(Rational(1, 2), Rational(3, 4))});
  const auto src = integration::unit_interval_certificate();
  const auto res = sufficiency_package(src, 1, d.members, d.reductions, d.ubs);
  ASSERT_EQ(res.members.size(), 3u);
  for (const auto& m : res.members) {
    EXPECT_TRUE(m.interval.exact());
    EXPECT_EQ(m.interval.lb, 1);
  }
  EXPECT_EQ(res.verdict.to_string(), "(T,T,T)");
  EXPECT_EQ(classify_family(FamilyRecord{"i", res.members}, 1).to_string(), "(T,T,T)");
}

TEST(Package, MissingClauses) {
  const auto d = interval_data({Interval(0, 2), Interval(-1, 3)});
  const auto src = integration::unit_interval_certificate();
  EXPECT_EQ(clause_of([&] { sufficiency_package(recorded_fact(src.problem, 1, std::nullopt, "x"), 1, d.members, d.reductions, d.ubs); }),
            Clause::C1);
  const std::vector<VerifiedReduction> one{d.reductions[0]};
  EXPECT_EQ(clause_of([&] { sufficiency_package(src, 1, d.members, one, d.ubs); }), Clause::C2);
  const std::vector<HeightCertificate> ub_one{d.ubs[0]};
  EXPECT_EQ(clause_of([&] { sufficiency_package(src, 1, d.members, d.reductions, ub_one); }), Clause::C3);
}

TEST(Package, SpectralFamilyExactTwo) {
  const spectral::Domain j(0, 1);
  const auto src = spectral::source_problem(j);
  const auto cert = spectral::source_certificate(j);
  std::vector<std::string> members;
  std::vector<VerifiedReduction> rs;
  std::vector<HeightCertificate> ubs;
  for (const auto& b : {spectral::DiagonalSpec::finite_then_constant({}, 5), spectral::DiagonalSpec::linear(3, 1)}) {
    const auto stab = spectral::stabilized_problem(j, spectral::certify_stabilizer(b, j));
    const auto [fwd, bwd] = spectral::stabilization_reductions(src, stab);
    members.push_back(stab->id());
    rs.push_back(verified(fwd, {.samples = 30}));
    ubs.push_back(tower_witness(stab->id(), pullback_tower(bwd, spectral::decision_tower(j))));
  }
  const auto res = sufficiency_package(cert, 2, members, rs, ubs);
  for (const auto& m : res.members) {
    EXPECT_TRUE(m.interval.exact());
    EXPECT_EQ(m.interval.lb, 2);
  }
}

TEST(Saturation, TwoElementBasisAndSingleton) {
  const auto d = interval_data({Interval(0, 2), Interval(-1, 3)});
  const auto unit = integration::unit_interval_certificate();
  // Second basis element: [0,2] itself, exact by the first package.
  const auto first = sufficiency_package(unit, 1, std::vector<std::string>{d.members[0]},
                                         std::vector<VerifiedReduction>{d.reductions[0]},
                                         std::vector<HeightCertificate>{d.ubs[0]});
  const auto second_basis = first.members[0];
  const auto r = verified(integration::interval_affine_reduction(Interval(0, 2), Interval(5, 7)), {.samples = 20});
  const auto target = integration::make_problem(Interval(5, 7))->id();
  const std::vector<HeightCertificate> basis{unit, second_basis};
  const std::vector<std::string> members{d.members[1], target};
  const std::map<std::string, std::string> assign{{d.members[1], unit.problem}, {target, second_basis.problem}};
  const std::vector<VerifiedReduction> rs{d.reductions[1], r};
  const std::vector<HeightCertificate> ubs{d.ubs[1], tower_witness(target, integration::rectangle_tower(Interval(5, 7)))};
  const auto res = transport_saturation(basis, 1, members, assign, rs, ubs);
  EXPECT_EQ(res.verdict.to_string(), "(T,T,T)");
  EXPECT_EQ(res.members.size(), 2u);

  const std::map<std::string, std::string> partial{{d.members[1], unit.problem}};
  EXPECT_EQ(clause_of([&] { transport_saturation(basis, 1, members, partial, rs, ubs); }), Clause::C2);

  const std::vector<HeightCertificate> single{unit};
  std::map<std::string, std::string> all_unit;
  for (const auto& m : d.members) all_unit[m] = unit.problem;
  const auto sat = transport_saturation(single, 1, d.members, all_unit, d.reductions, d.ubs);
  const auto pkg = sufficiency_package(unit, 1, d.members, d.reductions, d.ubs);
  ASSERT_EQ(sat.members.size(), pkg.members.size());
  for (std::size_t i = 0; i < sat.members.size(); ++i) {
    EXPECT_EQ(sat.members[i].problem, pkg.members[i].problem);
    EXPECT_EQ(sat.members[i].interval.to_string(), pkg.members[i].interval.to_string());
  }
}

TEST(PrincipalAmbient, IntervalAmbient) {
  const auto unit = integration::unit_interval_certificate();
  FamilyRecord ambient{"intervals",
                       {recorded_fact("[0,2]", 1, 1, "x"), recorded_fact("[1,3]", 1, 1, "x"),
                        recorded_fact("[2,2]", 0, 0, "x"), recorded_fact("[5,5]", 0, 0, "x")}};
  const std::map<std::string, Tri> cone{
      {"[0,2]", Tri::True}, {"[1,3]", Tri::True}, {"[2,2]", Tri::False}, {"[5,5]", Tri::False}};
  const auto v = principal_ambient_check(ambient, unit, cone, {{"[0,2]", "[1,3]"}, {"[0,2]", "[2,2]"}, {"[2,2]", "[5,5]"}});
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0].to_string(), "(T,T,T)");
  EXPECT_EQ(v[1].to_string(), "(F,T,T)");
  EXPECT_EQ(v[2].to_string(), "(F,F,F)");

  const std::map<std::string, Tri> unsure{{"[0,2]", Tri::Unknown}, {"[1,3]", Tri::True}};
  const auto u = principal_ambient_check(ambient, unit, unsure, {{"[0,2]", "[1,3]"}});
  EXPECT_EQ(u[0].pointwise_exact, Tri::Unknown);
  EXPECT_EQ(u[0].witness_sharp, Tri::True);

  FamilyRecord too_high{"x", {recorded_fact("a", 2, 2, "x")}};
  const auto w = principal_ambient_check(too_high, unit, {{"a", Tri::True}}, {{"a"}});
  EXPECT_EQ(w[0].to_string(), "(?,?,?)");
}

}  // namespace
}  // namespace sciwb
