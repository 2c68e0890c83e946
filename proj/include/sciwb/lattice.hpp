#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sciwb/reduction.hpp"

namespace sciwb::lattice {

/// Problem over a finite labelled input set with discrete output labels and
/// named queries given by value tables.
class FiniteProblem final : public Problem {
 public:
  struct Entry {
    std::string name;
    int target;
  };

  FiniteProblem(std::string id, std::vector<int> labels, std::vector<Entry> inputs,
                std::vector<std::pair<std::string, std::vector<Value>>> queries);

  std::string id() const override { return id_; }
  const OutputSpace& output_space() const override { return space_; }
  std::vector<InputPtr> catalog() const override { return catalog_; }
  Point target(const Input& in) const override;
  bool has_query(const QueryId& q) const override;
  Value evaluate(const QueryId& q, const Input& in) const override;
  std::vector<QueryId> sample_queries(std::mt19937_64& rng, std::size_t count) const override;
  std::optional<QueryId> first_query() const override;
  std::vector<QueryId> probe_queries(const Input& a, const Input& b) const override;

 private:
  std::string id_;
  OutputSpace space_;
  std::vector<Entry> entries_;
  std::vector<std::pair<std::string, std::vector<Value>>> queries_;
  std::vector<InputPtr> catalog_;
};

class TaggedInput final : public Input {
 public:
  TaggedInput(int tag, InputPtr inner) : tag_(tag), inner_(std::move(inner)) {}
  int tag() const { return tag_; }
  const Input& inner() const { return *inner_; }
  std::string describe() const override { return "(" + std::to_string(tag_) + ", " + inner_->describe() + ")"; }

 private:
  int tag_;
  InputPtr inner_;
};

QueryId pad(int tag, const QueryId& inner);
QueryId tag_query();

/// Tagged disjoint union {0} x Omega_0 u {1} x Omega_1 with padded queries and the tag query.
class TaggedProblem final : public Problem {
 public:
  TaggedProblem(ProblemPtr p0, ProblemPtr p1);

  const Problem& component(int tag) const { return tag == 0 ? *p0_ : *p1_; }

  std::string id() const override;
  const OutputSpace& output_space() const override { return space_; }
  std::vector<InputPtr> catalog() const override;
  InputPtr sample_input(std::mt19937_64& rng) const override;
  Point target(const Input& in) const override;
  bool has_query(const QueryId& q) const override;
  Value evaluate(const QueryId& q, const Input& in) const override;
  std::vector<QueryId> sample_queries(std::mt19937_64& rng, std::size_t count) const override;
  std::optional<QueryId> first_query() const override { return tag_query(); }
  std::vector<QueryId> probe_queries(const Input& a, const Input& b) const override;

 private:
  ProblemPtr p0_;
  ProblemPtr p1_;
  OutputSpace space_;
};

struct Join {
  std::shared_ptr<const TaggedProblem> upper;
  Reduction from0;  // p0 <= U
  Reduction from1;  // p1 <= U
};

/// Throws EmptyInputClass or EmptyQueryFamily outside the nonempty-query class.
Join upper_bound_join(ProblemPtr p0, ProblemPtr p1);

/// One input *, output {0}, one query c(*) = 0.
std::shared_ptr<const FiniteProblem> singleton_problem();

struct Meet {
  std::shared_ptr<const FiniteProblem> lower;
  Reduction to0;  // L <= p0
  Reduction to1;  // L <= p1
};

/// Throws EmptyInputClass.
Meet lower_bound_meet(ProblemPtr p0, ProblemPtr p1);

/// P0: one input, output {0}, no queries. P1: inputs {a, b}, outputs {0, 1}, e(a) = 0, e(b) = 1.
std::pair<std::shared_ptr<const FiniteProblem>, std::shared_ptr<const FiniteProblem>> empty_query_pair();
/// One-point problems with output carriers {0} and {1}.
std::pair<std::shared_ptr<const FiniteProblem>, std::shared_ptr<const FiniteProblem>> identity_class_pair();

struct CheckedStep {
  std::string claim;
  bool holds = false;
  std::string detail;
};

struct CounterexampleReport {
  DecoderClass decoder_class = DecoderClass::Cont;
  std::vector<CheckedStep> steps;
  std::vector<std::string> recorded_argument;  // universally quantified steps, not machine-checked
  std::string verdict;                          // "Infeasible" or "carrier clash: ..."
  bool all_checks_hold() const;
};

CounterexampleReport counterexample_demo(DecoderClass c);

}  // namespace sciwb::lattice
