#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sciwb/koopman.hpp"

namespace sciwb::koopman {
namespace {

using oracle::char_poly;
using oracle::cyclotomic;
using oracle::Poly;

std::vector<std::complex<double>> spectrum_oracle(const MapTable& f) {
  const auto s = oracle::spectrum(f);
  EXPECT_EQ(s.degree_accounted, static_cast<int>(f.size()));
  return s.roots;
}

TEST(KoopmanOracle, CyclotomicSanity) {
  EXPECT_EQ(cyclotomic(1), (Poly{-1, 1}));
  EXPECT_EQ(cyclotomic(4), (Poly{1, 0, 1}));
  EXPECT_EQ(char_poly({2, 1}), (Poly{-1, 0, 1}));
  EXPECT_EQ(char_poly({1, 1, 1}), (Poly{0, 0, -1, 1}));
}

TEST(Koopman, MatrixRowsSelect) {
  const auto m = koopman_matrix({2, 3, 3});
  EXPECT_EQ(m(0, 1), std::complex<double>(1));
  EXPECT_EQ(m(1, 2), std::complex<double>(1));
  EXPECT_EQ(m(2, 2), std::complex<double>(1));
  EXPECT_EQ(m.cwiseAbs().sum(), 3.0);
  EXPECT_THROW(check_table({0, 1}, 2), Error);
  EXPECT_THROW(check_table({1, 3}, 2), Error);
  EXPECT_THROW(FiniteSpace(2, {1, 0}), Error);
}

TEST(Koopman, SigmaApExamples) {
  const auto id = sigma_ap({1});
  ASSERT_EQ(id.points.size(), 1u);
  EXPECT_EQ(id.points[0], std::complex<double>(1));
  const auto swap = sigma_ap({2, 1});
  ASSERT_EQ(swap.points.size(), 2u);
  EXPECT_EQ(hausdorff(swap, PointSet{{{1, 0}, {-1, 0}}, 0}), 0.0);
  const auto collapse = sigma_ap({1, 1});
  EXPECT_EQ(hausdorff(collapse, PointSet{{{0, 0}, {1, 0}}, 0}), 0.0);
}

TEST(Koopman, ExhaustiveAgainstCharPoly) {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& f : all_maps(n)) {
      const auto oracle = spectrum_oracle(f);
      const auto got = sigma_ap(f);
      EXPECT_EQ(hausdorff(got, PointSet{oracle, 0}), 0.0);
    }
  }
}

TEST(Koopman, SigmaInfVanishesOnSpectrum) {
  for (const auto& f : all_maps(3)) {
    const auto m = koopman_matrix(f);
    for (const auto& z : sigma_ap(f).points) EXPECT_LT(sigma_inf(m, z, {1, 2, 5}), 1e-12);
    EXPECT_GT(sigma_inf(m, {0.5, 0.5}, {1, 1, 1}), 0.05);
  }
}

TEST(Koopman, WeightedSimilarityMatchesDirectSvd) {
  const MapTable f{2, 3, 1};
  const std::vector<Rational> w{1, 4, Rational(1, 4)};
  const auto m = koopman_matrix(f);
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(3, 3), si = s;
  for (int i = 0; i < 3; ++i) {
    s(i, i) = std::sqrt(to_double(w[i]));
    si(i, i) = 1.0 / s(i, i);
  }
  const std::complex<double> z(0.3, -0.2);
  const Eigen::MatrixXcd a = s * (m - z * Eigen::MatrixXcd::Identity(3, 3)) * si;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  EXPECT_NEAR(sigma_inf(m, z, w), svd.singularValues()(2), 1e-12);
}

TEST(Koopman, GridEpsilonSetForSwap) {
  const double eps = 0.1;
  const Grid g{-1.2, 1.2, -1.2, 1.2, 0.025};
  const auto got = sigma_ap_eps({2, 1}, {1, 1}, eps, g, Execution::Parallel);
  // Uniform weights: M is unitary, so the eps-set is the union of closed disks around +-1.
  std::vector<std::complex<double>> disks;
  for (const double c : {-1.0, 1.0})
    for (int r = 0; r <= 40; ++r)
      for (int k = 0; k < 256; ++k)
        disks.push_back(c + std::polar(eps * r / 40, 2 * 3.14159265358979323846 * k / 256));
  EXPECT_LE(hausdorff(got, PointSet{disks, 0}), g.spacing);
  const auto serial = sigma_ap_eps({2, 1}, {1, 1}, eps, g, Execution::Serial);
  EXPECT_EQ(serial.points, got.points);
}

TEST(Koopman, GridTooCoarse) {
  try {
    sigma_ap_eps({2, 1}, {1, 1}, 0.1, Grid{-2, 2, -2, 2, 0.05});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::GridTooCoarse);
  }
  try {
    sigma_ap_eps({2, 1}, {1, 1}, 0.1, Grid{-1, 1, -1, 1, 0.025});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::GridTooCoarse);
  }
}

TEST(Koopman, HeightZeroUsesExactlyNQueries) {
  for (int n = 1; n <= 3; ++n) {
    auto p = std::make_shared<const KoopmanProblem>(FiniteSpace(n), Target{});
    const auto t = height0_algorithm(p);
    for (const auto& in : p->catalog()) {
      const auto r = run_algorithm(t.stage({}), *p, *in);
      EXPECT_EQ(r.trace.size(), static_cast<std::size_t>(n));
      EXPECT_EQ(p->output_space().distance(r.output, p->target(*in)), 0.0);
    }
  }
}

TEST(Koopman, RecordedHeights) {
  const auto rec = recorded_family_heights();
  auto find = [&](const std::string& fam, const std::string& tgt) {
    for (const auto& r : rec)
      if (r.family == fam && r.target == tgt) return r.height;
    return -1;
  };
  EXPECT_EQ(find("finite", "ap"), 0);
  EXPECT_EQ(find("alpha", "ap_eps"), 1);
  EXPECT_EQ(find("ns", "ap"), 3);
}

}  // namespace
}  // namespace sciwb::koopman
