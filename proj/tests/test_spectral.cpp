#include <gtest/gtest.h>

#include <random>

#include "sciwb/spectral.hpp"

namespace sciwb::spectral {
namespace {

// min over the first `count` entries, plus any supplied accumulation points.
Rational brute_distance(const DiagonalSpec& a, const Rational& z, int count, std::vector<Rational> limits = {}) {
  Rational best = abs_of(a.entry(1) - z);
  for (int j = 2; j <= count; ++j) best = std::min(best, abs_of(a.entry(j) - z));
  for (const auto& l : limits) best = std::min(best, abs_of(l - z));
  return best;
}

TEST(Window, ApproximantExamples) {
  EXPECT_EQ(window_approximant(Rational(1, 3), 1).r, Rational(1, 4));
  EXPECT_EQ(window_approximant(Rational(1, 2), 1).r, Rational(1, 2));
  EXPECT_EQ(window_approximant(Rational(3, 4), 2).r, Rational(3, 4));
}

TEST(Window, DyadicBoundRandom) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-1000, 1000), den(1, 997);
  for (int t = 0; t < 300; ++t) {
    const Rational z(num(rng), den(rng));
    for (int n = 1; n <= 20; ++n) {
      const Rational r = window_approximant(z, n).r;
      const Rational scaled = r * pow2(n + 2);
      EXPECT_EQ(boost::multiprecision::denominator(scaled), 1);
      EXPECT_LE(r, z);
      EXPECT_LT(z - r, pow2(-(n + 2)));
    }
  }
}

TEST(Window, OutsideDomain) {
  try {
    Window(2, Domain(0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WindowOutsideDomain);
  }
}

TEST(Diagonal, EntriesAndParse) {
  const auto f = DiagonalSpec::finite_then_constant({1, 2, 3}, 3);
  EXPECT_EQ(f.entry(2), 2);
  EXPECT_EQ(f.entry(100), 3);
  EXPECT_EQ(DiagonalSpec::linear(Rational(1, 2), 2).entry(3), Rational(9, 2));
  EXPECT_EQ(DiagonalSpec::harmonic(1, 1).entry(4), Rational(5, 4));
  EXPECT_EQ(f.matrix_entry(1, 2), 0);
  for (const auto& s : {f, DiagonalSpec::linear(0, 1), DiagonalSpec::harmonic(Rational(1, 3), -1),
                        DiagonalSpec::rational_enumeration(0, 2), DiagonalSpec::opaque(DiagonalSpec::linear(1, 1))})
    EXPECT_EQ(parse_diagonal(s.describe()), s);
  EXPECT_THROW(parse_diagonal("fourier:1"), Error);
}

TEST(Diagonal, EnumerationCoversSmallRationals) {
  const auto e = DiagonalSpec::rational_enumeration(0, 1);
  for (int q = 1; q <= 12; ++q)
    for (int p = 0; p <= q; ++p) EXPECT_TRUE(e.first_index_within(Rational(p, q), 0, 5000)) << p << "/" << q;
  for (int j = 1; j <= 5000; ++j) {
    const Rational d = e.entry(j);
    ASSERT_TRUE(d >= 0 && d <= 1);
  }
  // Beyond the cached prefix the entries stay in range.
  for (std::int64_t j : {5000, 100000, 1000000}) {
    const Rational d = e.entry(j);
    EXPECT_TRUE(d >= 0 && d <= 1);
  }
}

TEST(Diagonal, DistanceAgainstBruteForce) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> num(-40, 80);
  for (int t = 0; t < 60; ++t) {
    const Rational z(num(rng), 16);
    const auto f = DiagonalSpec::finite_then_constant({Rational(1, 3), 2, -1}, Rational(7, 4));
    EXPECT_EQ(f.distance_to(z), brute_distance(f, z, 4));
    const auto lin = DiagonalSpec::linear(Rational(1, 2), Rational(3, 4));
    EXPECT_EQ(lin.distance_to(z), brute_distance(lin, z, 200));
    const auto h = DiagonalSpec::harmonic(1, Rational(1, 2));
    EXPECT_EQ(h.distance_to(z), brute_distance(h, z, 4000, {1}));
    const auto e = DiagonalSpec::rational_enumeration(0, 2);
    const Rational outside = z < 0 ? -z : (z > 2 ? z - 2 : Rational(0));
    EXPECT_EQ(e.distance_to(z), outside);
  }
  EXPECT_THROW(DiagonalSpec::opaque(DiagonalSpec::linear(0, 1)).distance_to(0), Error);
}

TEST(Oracle, Examples) {
  const Domain big(0, 3), j(0, 1);
  EXPECT_EQ(exact_decision_oracle(DiagonalSpec::finite_then_constant({1, 2, 3}, 3), Window(2, big)), 0);
  EXPECT_EQ(exact_decision_oracle(DiagonalSpec::finite_then_constant({1, 2, 3}, 3), Window(Rational(5, 2), big)), 1);
  EXPECT_EQ(exact_decision_oracle(DiagonalSpec::rational_enumeration(0, 1), Window(2, big)), 1);
  const auto p = source_problem(j);
  EXPECT_TRUE(identical(p->target(SourceInput(DiagonalSpec::finite_then_constant({}, 2), Window(1, j))), Point(1)));
  EXPECT_TRUE(identical(p->target(SourceInput(DiagonalSpec::rational_enumeration(0, 1), Window(Rational(1, 3), j))),
                        Point(0)));
  const SourceInput any(DiagonalSpec::linear(0, 1), Window(0, j));
  EXPECT_TRUE(identical(p->evaluate(mu(1, 2), any), Value(0)));
}

TEST(DecisionTower, Examples) {
  const Domain j(0, 1);
  const auto p = source_problem(j);
  const SourceInput in(DiagonalSpec::finite_then_constant({}, 2), Window(1, j));
  const auto r = run_algorithm(decision_tower(j).stage({1, 1}), *p, in);
  EXPECT_TRUE(identical(r.output, Point(1)));
  EXPECT_EQ(r.trace.size(), 2u);
}

TEST(DecisionTower, StabilizationStagesMatchOracle) {
  const Domain j(0, 1);
  const auto pairs = builtin_pairs(j);
  ASSERT_GE(pairs.size(), 30u);
  const auto p = source_problem(j, pairs);
  const auto t = decision_tower(j);
  for (const auto& [a, z] : pairs) {
    const SourceInput in(a, Window(z, j));
    const int truth = exact_decision_oracle(a, in.window());
    const MultiIndex stage = stabilization_stage(a, z);
    EXPECT_TRUE(identical(evaluate_tower(t, stage, *p, in), Point(truth))) << in.describe();
    // The inner index is monotone past the stage.
    const MultiIndex later{stage[0], stage[1] + 50};
    EXPECT_TRUE(identical(evaluate_tower(t, later, *p, in), Point(truth))) << in.describe();
  }
}

TEST(Stabilizer, Certification) {
  const Domain j(0, 1);
  EXPECT_EQ(certify_stabilizer(DiagonalSpec::finite_then_constant({}, 5), j).margin, 4);
  EXPECT_EQ(certify_stabilizer(DiagonalSpec::harmonic(3, 1), j).margin, 2);
  EXPECT_EQ(certify_stabilizer(DiagonalSpec::linear(-2, -1), j).margin, 2);
  try {
    certify_stabilizer(DiagonalSpec::harmonic(1, 1), j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UncertifiedStabilizer);
  }
  EXPECT_THROW(certify_stabilizer(DiagonalSpec::opaque(DiagonalSpec::linear(5, 1)), j), Error);
}

TEST(Stabilized, Examples) {
  const Domain j(0, 1);
  const auto b = certify_stabilizer(DiagonalSpec::finite_then_constant({}, 5), j);
  const auto p = stabilized_problem(j, b);
  const StabilizedInput one(DiagonalSpec::finite_then_constant({}, 2), b.b, Window(1, j));
  EXPECT_TRUE(identical(p->target(one), Point(1)));
  const StabilizedInput half(DiagonalSpec::rational_enumeration(0, 1), b.b, Window(Rational(1, 2), j));
  EXPECT_TRUE(identical(p->target(half), Point(0)));
  EXPECT_TRUE(identical(p->evaluate(nu(1, 1, 1, 2), one), Value(0)));
  EXPECT_TRUE(identical(p->evaluate(nu(3, 2, 3, 2), one), Value(5)));
  EXPECT_TRUE(identical(p->evaluate(nu(3, 1, 3, 1), one), Value(2)));
}

TEST(Stabilized, ReductionsVerifyAndRoundTrip) {
  const Domain j(0, 1);
  const auto src = source_problem(j);
  for (const auto& b : {DiagonalSpec::finite_then_constant({}, 5), DiagonalSpec::harmonic(-2, -1)}) {
    const auto stab = stabilized_problem(j, certify_stabilizer(b, j));
    const auto [fwd, bwd] = stabilization_reductions(src, stab);
    const auto rf = verify_reduction(fwd, {.samples = 40});
    const auto rb = verify_reduction(bwd, {.samples = 40});
    EXPECT_TRUE(rf.pass) << (rf.failures.empty() ? "" : rf.failures[0]);
    EXPECT_TRUE(rb.pass) << (rb.failures.empty() ? "" : rb.failures[0]);
    EXPECT_EQ(rf.max_discrepancy, 0.0);
    for (const auto& in : src->catalog()) {
      const auto back = bwd.encoder(fwd.encoder(in));
      EXPECT_EQ(back->describe(), in->describe());
    }
  }
}

}  // namespace
}  // namespace sciwb::spectral
