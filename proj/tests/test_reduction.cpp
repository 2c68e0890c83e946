#include <gtest/gtest.h>

#include "sciwb/integration.hpp"
#include "sciwb/spectral.hpp"

namespace sciwb {
namespace {

using integration::Interval;

TEST(DecoderClass, CompositionTable) {
  using D = DecoderClass;
  EXPECT_EQ(decoder_compose_class(D::Cont, D::Cont, false), D::Cont);
  EXPECT_EQ(decoder_compose_class(D::Cont, D::Bor, false), D::Bor);
  EXPECT_EQ(decoder_compose_class(D::Bor, D::Cont, false), D::Bor);
  EXPECT_EQ(decoder_compose_class(D::Cont, D::Id, false), D::Cont);
  EXPECT_EQ(decoder_compose_class(D::Id, D::Bor, false), D::Bor);
  EXPECT_EQ(decoder_compose_class(D::Id, D::Id, true), D::Id);
  try {
    decoder_compose_class(D::Id, D::Id, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TagIncompatible);
  }
  EXPECT_EQ(parse_decoder_class("bor"), D::Bor);
  EXPECT_EQ(parse_decoder_class("id"), D::Id);
  EXPECT_THROW(parse_decoder_class("smooth"), Error);
}

TEST(Identity, VerifiesExactly) {
  const auto p = integration::make_problem(Interval(0, 1));
  const auto r = identity_reduction(p);
  const auto rep = verify_reduction(r);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.samples, 100u);
  EXPECT_EQ(rep.max_discrepancy, 0.0);
  EXPECT_EQ(r.decoder.tag, DecoderClass::Cont);
}

TEST(Compose, AffineChainWidthsAndVerification) {
  const Interval unit(0, 1), mid(0, 2), far(-1, 5);
  const auto first = integration::interval_affine_reduction(unit, mid);
  const auto second = integration::interval_affine_reduction(mid, far);
  const auto c = compose(first, second);
  EXPECT_EQ(c.source->id(), first.source->id());
  EXPECT_EQ(c.target->id(), second.target->id());
  EXPECT_EQ(c.decoder.tag, DecoderClass::Cont);
  const auto rep = verify_reduction(c, {.samples = 50});
  EXPECT_TRUE(rep.pass) << (rep.failures.empty() ? "" : rep.failures[0]);

  std::mt19937_64 rng(3);
  for (const auto& q : c.target->sample_queries(rng, 40)) {
    const auto block = second.plan.rule(q);
    ASSERT_TRUE(block);
    std::size_t expected = 0;
    for (const auto& mid_q : block->sources) expected += first.width(mid_q);
    EXPECT_EQ(c.width(q), expected);
  }
}

TEST(Compose, WithIdentityKeepsBehaviour) {
  const auto r = integration::affine_reduction(Interval(2, 3));
  const auto left = compose(identity_reduction(r.source), r);
  const auto right = compose(r, identity_reduction(r.target));
  EXPECT_TRUE(verify_reduction(left, {.samples = 20}).pass);
  EXPECT_TRUE(verify_reduction(right, {.samples = 20}).pass);
  EXPECT_EQ(left.decoder.tag, DecoderClass::Cont);
}

TEST(Compose, ProblemMismatch) {
  const auto a = integration::affine_reduction(Interval(0, 2));
  const auto b = integration::affine_reduction(Interval(0, 3));
  try {
    compose(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ProblemMismatch);
  }
}

TEST(Verify, CatchesWrongCombiner) {
  auto r = integration::affine_reduction(Interval(0, 2));
  auto rule = r.plan.rule;
  r.plan.rule = [rule](const QueryId& q) -> std::optional<QueryBlock> {
    auto b = rule(q);
    if (b) b->combiner = [](std::span<const Value> v) { return Value(v[0].re + Real(1)); };
    return b;
  };
  const auto rep = verify_reduction(r, {.samples = 10, .queries_per_sample = 5});
  EXPECT_FALSE(rep.pass);
  EXPECT_GT(rep.query_failures, 0u);
}

TEST(Verify, CatchesWrongDecoder) {
  auto r = integration::affine_reduction(Interval(0, 2));
  r.decoder.map = [](const Point& p) { return Point(p.real() + Real(1)); };
  const auto rep = verify_reduction(r, {.samples = 10, .queries_per_sample = 2});
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.target_failures, 10u);
}

TEST(Verify, SerialAndParallelAgree) {
  const auto r = integration::affine_reduction(Interval(-2, 1));
  const auto a = verify_reduction(r, {.samples = 30, .exec = Execution::Serial});
  const auto b = verify_reduction(r, {.samples = 30, .exec = Execution::Parallel});
  EXPECT_EQ(a.pass, b.pass);
  EXPECT_EQ(a.queries_checked, b.queries_checked);
  EXPECT_EQ(a.max_discrepancy, b.max_discrepancy);
}

TEST(Pullback, PlanGapOnUncoveredQuery) {
  auto r = integration::affine_reduction(Interval(0, 2));
  r.plan.rule = [](const QueryId&) -> std::optional<QueryBlock> { return std::nullopt; };
  const auto alg = integration::rectangle_tower(Interval(0, 2)).stage({4});
  const auto pulled = pullback_algorithm(r, alg);
  try {
    run_algorithm(pulled, *r.source, *r.source->catalog().front());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PlanGap);
  }
}

TEST(Pullback, QueryCountScalesWithWidth) {
  const auto r = integration::affine_reduction(Interval(0, 2));
  const auto alg = integration::rectangle_tower(Interval(0, 2)).stage({12});
  const auto res = run_algorithm(pullback_algorithm(r, alg), *r.source, *r.source->catalog().front());
  EXPECT_EQ(res.trace.size(), 12u);
}

TEST(Feasibility, StructuralCheck) {
  const auto p = integration::make_problem(Interval(0, 1));
  EXPECT_EQ(structural_feasibility(*p, *p), Feasibility::Unknown);
}

}  // namespace
}  // namespace sciwb
