#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sciwb/certificate.hpp"
#include "sciwb/reduction.hpp"

namespace sciwb::integration {

struct Interval {
  Rational a;
  Rational b;

  Interval(Rational lo, Rational hi);
  bool degenerate() const { return a == b; }
  Rational length() const { return b - a; }
  bool contains(const Rational& x) const { return a <= x && x <= b; }
  std::string to_string() const;
};

/// Continuous function R -> R given symbolically, with an exact integral rule.
class Function {
 public:
  enum class Kind { Polynomial, Sine, Bump, Affine };

  /// c[0] + c[1] x + c[2] x^2 + ...
  static Function polynomial(std::vector<Rational> coeffs);
  /// scale * sin(freq * x); values and integrals are doubles.
  static Function sine(Rational scale, Rational freq);
  /// max{1 - (2/(v-u)) |x - (u+v)/2|, 0}; requires u < v.
  static Function bump(Rational u, Rational v);
  /// x -> outer * base(slope * x + shift).
  static Function affine(Rational outer, Rational slope, Rational shift, Function base);
  static Function zero() { return polynomial({}); }

  Kind kind() const;
  Real operator()(const Rational& x) const;
  /// Oriented integral from lo to hi.
  Real integral(const Rational& lo, const Rational& hi) const;
  /// A Lipschitz constant valid on [lo, hi].
  Rational lipschitz(const Rational& lo, const Rational& hi) const;
  bool exact() const;
  std::string describe() const;

 private:
  struct Node;
  explicit Function(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses "poly:0,1", "sin:2,3", "bump:1/4,3/4" and "affine:outer,slope,shift;<base>".
Function parse_function(const std::string& text);

class FunctionInput final : public Input {
 public:
  explicit FunctionInput(Function f) : f_(std::move(f)) {}
  const Function& function() const { return f_; }
  std::string describe() const override { return f_.describe(); }

 private:
  Function f_;
};

InputPtr make_input(Function f);

QueryId ev(const Rational& x);

/// Point-evaluation integration on a compact interval.
class IntegrationProblem final : public Problem {
 public:
  explicit IntegrationProblem(Interval i, std::vector<Function> catalog = {});

  const Interval& interval() const { return interval_; }

  std::string id() const override;
  const OutputSpace& output_space() const override { return space_; }
  std::vector<InputPtr> catalog() const override { return catalog_; }
  InputPtr sample_input(std::mt19937_64& rng) const override;
  Point target(const Input& in) const override;
  bool has_query(const QueryId& q) const override;
  Value evaluate(const QueryId& q, const Input& in) const override;
  std::vector<QueryId> sample_queries(std::mt19937_64& rng, std::size_t count) const override;
  std::optional<QueryId> first_query() const override { return ev(interval_.a); }

 private:
  Interval interval_;
  OutputSpace space_;
  std::vector<InputPtr> catalog_;
};

/// Shipped Lipschitz catalog functions.
std::vector<Function> default_functions();
/// Random function whose interesting features sit inside i.
Function random_function(std::mt19937_64& rng, const Interval& i);

std::shared_ptr<const IntegrationProblem> make_problem(const Interval& i);

/// Height-1 left-endpoint rule: stage (n) outputs ((b-a)/n) sum_{j<n} f(a + j(b-a)/n).
Tower rectangle_tower(const Interval& i);

struct BumpGadget {
  Rational u;
  Rational v;

  Function function() const { return Function::bump(u, v); }
  Rational integral() const { return (v - u) / 2; }
};

/// Bump supported in the widest gap of {0} u points u {1} (leftmost on ties),
/// shrunk by a quarter of the gap on each side. Points outside [0,1] are ignored.
BumpGadget adversary_bump(const std::vector<Rational>& query_points);

struct AdversaryOutcome {
  std::vector<Rational> queried;
  BumpGadget gadget;
  Point output_on_zero;
  Point output_on_bump;
  bool identical_runs = false;  // same trace and same output on 0 and on h
  Rational target_gap;          // |Xi(h) - Xi(0)|
};

/// Runs alg on the zero function over [0,1], builds the bump avoiding its
/// queries, and replays alg on the bump.
AdversaryOutcome adversary_demo(const GeneralAlgorithm& alg);

/// S_I <= S_J: f on I=[a,b] is sent to x -> ((b-a)/(d-c)) f(a + (x-c)(b-a)/(d-c)) on J=[c,d].
Reduction interval_affine_reduction(const Interval& from, const Interval& to);
/// From the unit interval: ev_x -> [ev_{(x-a)/(b-a)}], theta(z) = z/(b-a).
Reduction affine_reduction(const Interval& i);

/// Height-0 tower on [a,a]: one query ev_a, output 0.
Tower degenerate_algorithm(const Rational& a);

struct IntervalClass {
  int height = 0;
  bool reduction_available = false;
};

IntervalClass classify_interval(const Interval& i);

/// Recorded exact height 1 of the unit-interval problem.
HeightCertificate unit_interval_certificate();

}  // namespace sciwb::integration
