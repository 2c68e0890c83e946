#include <gtest/gtest.h>

#include "sciwb/integration.hpp"
#include "sciwb/lattice.hpp"
#include "sciwb/spectral.hpp"

namespace sciwb::lattice {
namespace {

TEST(Join, VerifiesOnIntegrationAndSpectral) {
  const auto p0 = integration::make_problem(integration::Interval(0, 1));
  const auto p1 = spectral::source_problem(spectral::Domain(0, 1));
  const auto j = upper_bound_join(p0, p1);
  EXPECT_EQ(j.upper->id(), "join(" + p0->id() + "|" + p1->id() + ")");
  const auto a = verify_reduction(j.from0, {.samples = 30});
  const auto b = verify_reduction(j.from1, {.samples = 30});
  EXPECT_TRUE(a.pass) << (a.failures.empty() ? "" : a.failures[0]);
  EXPECT_TRUE(b.pass) << (b.failures.empty() ? "" : b.failures[0]);
  EXPECT_EQ(j.from0.decoder.tag, DecoderClass::Cont);
}

TEST(Join, TaggedMetric) {
  const auto p0 = integration::make_problem(integration::Interval(0, 1));
  const auto j = upper_bound_join(p0, p0);
  const auto& m = j.upper->output_space();
  EXPECT_EQ(m.distance(Point::tagged(0, Point(0)), Point::tagged(1, Point(0))), 2.0);
  EXPECT_EQ(m.distance(Point::tagged(0, Point(0)), Point::tagged(0, Point(5))), 1.0);
  EXPECT_EQ(m.distance(Point::tagged(1, Point(0)), Point::tagged(1, Point(Rational(1, 4)))), 0.25);
}

TEST(Join, RejectsQueryFreeComponent) {
  const auto [q0, q1] = empty_query_pair();
  try {
    upper_bound_join(q0, q1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptyQueryFamily);
  }
}

TEST(Meet, VerifiesAndIsConstant) {
  const auto p0 = integration::make_problem(integration::Interval(-1, 1));
  const auto p1 = spectral::source_problem(spectral::Domain(0, 1));
  const auto m = lower_bound_meet(p0, p1);
  EXPECT_EQ(m.lower->catalog().size(), 1u);
  EXPECT_TRUE(verify_reduction(m.to0, {.samples = 10}).pass);
  EXPECT_TRUE(verify_reduction(m.to1, {.samples = 10}).pass);
  EXPECT_TRUE(check_consistency(*m.lower).ok());
}

TEST(Counterexample, ContAndBorInfeasible) {
  for (const auto c : {DecoderClass::Cont, DecoderClass::Bor}) {
    const auto r = counterexample_demo(c);
    EXPECT_EQ(r.verdict, "Infeasible");
    EXPECT_TRUE(r.all_checks_hold());
    EXPECT_FALSE(r.recorded_argument.empty());
    const auto again = counterexample_demo(c);
    ASSERT_EQ(again.steps.size(), r.steps.size());
    for (std::size_t i = 0; i < r.steps.size(); ++i) EXPECT_EQ(again.steps[i].detail, r.steps[i].detail);
  }
}

TEST(Counterexample, IdentityCarrierClash) {
  const auto r = counterexample_demo(DecoderClass::Id);
  EXPECT_EQ(r.verdict.rfind("carrier clash", 0), 0u);
  EXPECT_TRUE(r.all_checks_hold());
}

TEST(FiniteProblem, PairsBehave) {
  const auto [p0, p1] = empty_query_pair();
  EXPECT_FALSE(p0->first_query().has_value());
  EXPECT_EQ(p1->catalog().size(), 2u);
  EXPECT_EQ(structural_feasibility(*p0, *p1), Feasibility::Infeasible);
  EXPECT_EQ(structural_feasibility(*p1, *p0), Feasibility::Unknown);
  EXPECT_TRUE(check_consistency(*p1).ok());
}

}  // namespace
}  // namespace sciwb::lattice
