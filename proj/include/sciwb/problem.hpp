#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sciwb/errors.hpp"
#include "sciwb/numeric.hpp"

namespace sciwb {

/// Structured identifier of one evaluation map. Countable or uncountable
/// query families are addressed by a head plus exact parameters, e.g.
/// ev(1/3), mu(2,2), pad(0; ev(1/2)).
struct QueryId {
  std::string head;
  std::vector<Rational> params;
  std::vector<QueryId> args;

  QueryId() = default;
  QueryId(std::string h, std::vector<Rational> p = {}, std::vector<QueryId> a = {})
      : head(std::move(h)), params(std::move(p)), args(std::move(a)) {}

  /// params[i] as a machine integer; throws UnknownQuery when it is not integral.
  std::int64_t int_param(std::size_t i) const;
  std::string to_string() const;
  friend bool operator==(const QueryId& a, const QueryId& b) {
    return a.head == b.head && a.params == b.params && a.args == b.args;
  }
};

/// Finite symbolic description of an element of an input class.
class Input {
 public:
  virtual ~Input() = default;
  virtual std::string describe() const = 0;
};

using InputPtr = std::shared_ptr<const Input>;

template <class T>
const T& input_as(const Input& in) {
  if (const auto* p = dynamic_cast<const T*>(&in)) return *p;
  throw Error(Errc::InvalidArgument, "input of unexpected kind: " + in.describe());
}

/// Metric output space (M, d). Two spaces are the same space iff their ids match.
class OutputSpace {
 public:
  using Metric = std::function<double(const Point&, const Point&)>;

  OutputSpace(std::string id, Metric metric) : id_(std::move(id)), metric_(std::move(metric)) {}

  const std::string& id() const { return id_; }
  double distance(const Point& a, const Point& b) const { return metric_(a, b); }
  bool same_as(const OutputSpace& other) const { return id_ == other.id_; }

  /// R with |x - y|.
  static OutputSpace real_line();
  /// Finite label carrier such as {0} or {0,1} with the discrete metric.
  static OutputSpace discrete(std::vector<int> labels);
  /// Nonempty compact subsets of C with the Hausdorff metric.
  static OutputSpace hyperspace();
  /// ({0} x M0) u ({1} x M1) with min{1, d_i} inside a component and 2 across.
  static OutputSpace tagged_union(const OutputSpace& m0, const OutputSpace& m1);

 private:
  std::string id_;
  Metric metric_;
};

/// A computational problem (target, input class, metric output space, evaluation family).
/// Algorithms never see Input objects; they only receive evaluate() answers.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string id() const = 0;
  virtual const OutputSpace& output_space() const = 0;

  /// Finite catalog of inputs, in canonical order.
  virtual std::vector<InputPtr> catalog() const = 0;
  /// Draws an input; defaults to a uniform catalog draw.
  virtual InputPtr sample_input(std::mt19937_64& rng) const;

  /// Reference oracle for the target map.
  virtual Point target(const Input& in) const = 0;

  virtual bool has_query(const QueryId& q) const = 0;
  /// Throws UnknownQuery when q is not in the evaluation family.
  virtual Value evaluate(const QueryId& q, const Input& in) const = 0;

  /// Representative members of the evaluation family (empty iff the family is empty).
  virtual std::vector<QueryId> sample_queries(std::mt19937_64& rng, std::size_t count) const = 0;
  /// First member of the family under the canonical ordering.
  virtual std::optional<QueryId> first_query() const = 0;
  bool has_queries() const { return first_query().has_value(); }

  /// Finite list of queries tried when checking that two inputs are separated.
  virtual std::vector<QueryId> probe_queries(const Input& a, const Input& b) const;
};

using ProblemPtr = std::shared_ptr<const Problem>;

struct ConsistencyReport {
  std::size_t pairs_checked = 0;
  std::size_t pairs_needing_separation = 0;
  std::vector<std::string> unseparated;  // descriptions of failing pairs
  bool ok() const { return unseparated.empty(); }
};

/// Checks Xi(A) != Xi(B) => some probe query separates A and B, over all catalog pairs.
ConsistencyReport check_consistency(const Problem& problem);

}  // namespace sciwb
