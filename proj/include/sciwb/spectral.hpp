#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sciwb/certificate.hpp"
#include "sciwb/reduction.hpp"

namespace sciwb::spectral {

/// Compact rational interval J = [lo, hi].
struct Domain {
  Rational lo;
  Rational hi;

  Domain(Rational l, Rational h);
  bool contains(const Rational& z) const { return lo <= z && z <= hi; }
  std::string to_string() const;
};

/// Diagonal operator diag(d_1, d_2, ...) with rational entries; sigma = closure{d_j}.
class DiagonalSpec {
 public:
  enum class Kind { FiniteThenConstant, Linear, Harmonic, RationalEnumeration, Opaque };

  /// head..., then tail forever.
  static DiagonalSpec finite_then_constant(std::vector<Rational> head, Rational tail);
  /// d_j = offset + step (j - 1).
  static DiagonalSpec linear(Rational offset, Rational step);
  /// d_j = limit + scale / j.
  static DiagonalSpec harmonic(Rational limit, Rational scale);
  /// Enumeration of the rationals of [lo, hi] by increasing denominator of the affine coordinate.
  static DiagonalSpec rational_enumeration(Rational lo, Rational hi);
  /// Same entries as inner, but no membership oracle.
  static DiagonalSpec opaque(DiagonalSpec inner);

  Kind kind() const;
  /// d_j for j >= 1.
  Rational entry(std::int64_t j) const;
  /// <A e_j, e_i>.
  Rational matrix_entry(std::int64_t i, std::int64_t j) const { return i == j ? entry(i) : Rational(0); }
  /// Exact dist(z, closure{d_j}). Throws UnsupportedKind for opaque specs.
  Rational distance_to(const Rational& z) const;
  /// Whether closure{d_j} meets [lo, hi]. Throws UnsupportedKind for opaque specs.
  bool meets(const Rational& lo, const Rational& hi) const;
  /// Smallest j <= limit with |d_j - z| <= eps.
  std::optional<std::int64_t> first_index_within(const Rational& z, const Rational& eps,
                                                 std::int64_t limit = 10'000'000) const;
  std::string describe() const;

  friend bool operator==(const DiagonalSpec& a, const DiagonalSpec& b) { return a.describe() == b.describe(); }

 private:
  struct Node;
  explicit DiagonalSpec(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// "finite:1,2,3|3", "linear:0,1", "harmonic:0,1", "enum:0,1", "opaque:<spec>".
DiagonalSpec parse_diagonal(const std::string& text);

/// Singleton window {z} inside a domain J.
struct Window {
  Rational z;
  Domain domain;

  /// Throws WindowOutsideDomain.
  Window(Rational point, Domain j);
  std::string to_string() const;
};

struct WindowApproximant {
  int n = 0;
  Rational r;
};

/// r_n = 2^{-(n+2)} floor(2^{n+2} z); checks |r_n - z| < 2^{-(n+2)}.
WindowApproximant window_approximant(const Rational& z, int n);

class SourceInput final : public Input {
 public:
  SourceInput(DiagonalSpec a, Window k) : a_(std::move(a)), k_(std::move(k)) {}
  const DiagonalSpec& op() const { return a_; }
  const Window& window() const { return k_; }
  std::string describe() const override { return "(" + a_.describe() + ", " + k_.to_string() + ")"; }

 private:
  DiagonalSpec a_;
  Window k_;
};

/// B with a certified rational margin dist(sigma(B), J) > 0.
struct StabilizerSpec {
  DiagonalSpec b;
  Rational margin;
};

/// Computes the margin analytically; throws UncertifiedStabilizer when it is 0 or cannot be decided.
StabilizerSpec certify_stabilizer(const DiagonalSpec& b, const Domain& j);

class StabilizedInput final : public Input {
 public:
  StabilizedInput(DiagonalSpec a, DiagonalSpec b, Window k) : a_(std::move(a)), b_(std::move(b)), k_(std::move(k)) {}
  const DiagonalSpec& first() const { return a_; }
  const DiagonalSpec& second() const { return b_; }
  const Window& window() const { return k_; }
  /// <(A+B) u_(j,s), u_(i,r)>: diagonal within blocks, 0 across blocks.
  Rational entry(std::int64_t i, int r, std::int64_t j, int s) const;
  std::string describe() const override {
    return "(" + a_.describe() + " (+) " + b_.describe() + ", " + k_.to_string() + ")";
  }

 private:
  DiagonalSpec a_;
  DiagonalSpec b_;
  Window k_;
};

QueryId mu(std::int64_t i, std::int64_t j);
QueryId rho(std::int64_t n);
QueryId nu(std::int64_t i, int r, std::int64_t j, int s);
QueryId rho_b(std::int64_t n);

using Pair = std::pair<DiagonalSpec, Rational>;  // operator and window point

/// 1 iff dist(z, sigma(A)) > 0, decided exactly. Throws UnsupportedKind.
int exact_decision_oracle(const DiagonalSpec& a, const Window& w);

/// Decide sigma(A) n {z} = {} from mu_{i,j} and rho_n.
class SourceProblem final : public Problem {
 public:
  SourceProblem(Domain j, const std::vector<Pair>& pairs);

  const Domain& domain() const { return domain_; }

  std::string id() const override;
  const OutputSpace& output_space() const override { return space_; }
  std::vector<InputPtr> catalog() const override { return catalog_; }
  Point target(const Input& in) const override;
  bool has_query(const QueryId& q) const override;
  Value evaluate(const QueryId& q, const Input& in) const override;
  std::vector<QueryId> sample_queries(std::mt19937_64& rng, std::size_t count) const override;
  std::optional<QueryId> first_query() const override { return rho(1); }
  std::vector<QueryId> probe_queries(const Input& a, const Input& b) const override;

 private:
  Domain domain_;
  OutputSpace space_;
  std::vector<InputPtr> catalog_;
};

/// Same decision for A (+) B with nu and rho^B queries.
class StabilizedProblem final : public Problem {
 public:
  StabilizedProblem(Domain j, StabilizerSpec b, const std::vector<Pair>& pairs);

  const StabilizerSpec& stabilizer() const { return b_; }

  std::string id() const override;
  const OutputSpace& output_space() const override { return space_; }
  std::vector<InputPtr> catalog() const override { return catalog_; }
  Point target(const Input& in) const override;
  bool has_query(const QueryId& q) const override;
  Value evaluate(const QueryId& q, const Input& in) const override;
  std::vector<QueryId> sample_queries(std::mt19937_64& rng, std::size_t count) const override;
  std::optional<QueryId> first_query() const override { return rho_b(1); }
  std::vector<QueryId> probe_queries(const Input& a, const Input& b) const override;

 private:
  Domain domain_;
  StabilizerSpec b_;
  OutputSpace space_;
  std::vector<InputPtr> catalog_;
};

/// Small built-in catalog of (operator, window) pairs for J.
std::vector<Pair> builtin_pairs(const Domain& j);

std::shared_ptr<const SourceProblem> source_problem(const Domain& j, const std::vector<Pair>& pairs = {});
std::shared_ptr<const StabilizedProblem> stabilized_problem(const Domain& j, const StabilizerSpec& b,
                                                            const std::vector<Pair>& pairs = {});

/// Height-2 tower: stage (n2, n1) outputs 1 iff min_{j<=n1} |d_j - r_{n2}| > 2^{-n2}.
/// An upper-bound witness validated against the exact oracle on the catalog.
Tower decision_tower(const Domain& j);

/// (n2, n1) from which the tower output equals the oracle: when delta = dist > 0 the
/// smallest n2 with 5 * 2^{-(n2+2)} < delta and n1 = 1; otherwise n2 = 4 and the first
/// n1 with |d_{n1} - z| <= 3 * 2^{-(n2+2)}.
MultiIndex stabilization_stage(const DiagonalSpec& a, const Rational& z);

struct StabilizationReductions {
  Reduction forward;   // source <= stabilized
  Reduction backward;  // stabilized <= source
};

StabilizationReductions stabilization_reductions(const std::shared_ptr<const SourceProblem>& source,
                                                 const std::shared_ptr<const StabilizedProblem>& stabilized);

/// Recorded exact height 2 of the singleton-window source.
HeightCertificate source_certificate(const Domain& j);

}  // namespace sciwb::spectral
