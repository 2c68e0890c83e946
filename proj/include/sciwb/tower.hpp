#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sciwb/algorithm.hpp"

namespace sciwb {

/// Stage index (n_k, ..., n_1), outermost first. Empty for height 0.
using MultiIndex = std::vector<std::int64_t>;

struct Tower {
  std::string name;
  int height = 0;
  std::function<GeneralAlgorithm(const MultiIndex&)> stage;
};

std::string to_string(const MultiIndex& idx);

/// Output of the stage algorithm at idx. Throws IndexArityMismatch.
Point evaluate_tower(const Tower& tower, const MultiIndex& idx, const Problem& problem, const Input& input);

struct ConvergenceReport {
  std::vector<std::int64_t> stages;  // outermost level
  std::vector<Point> values;         // one per outer stage
  std::vector<double> distances;     // between successive values
  bool inner_stabilized = true;      // every nested probe stabilized
  bool stabilized = false;
  Point final_value;
};

/// Finite-stage surrogate for the iterated limits. schedule[0] holds the
/// stages of n_k, schedule.back() those of n_1. Inner levels are probed first
/// and their last value stands in for the limit. Stabilized iff the last
/// `tail` successive distances are < tol (and every inner probe stabilized).
ConvergenceReport probe_convergence(const Tower& tower, const Problem& problem, const Input& input,
                                    const std::vector<std::vector<std::int64_t>>& schedule, double tol,
                                    std::size_t tail = 1);

/// Height-0 tower asking `queries` in order and answering table(values).
/// Checks target(A) == table(...) on the whole catalog first; throws FactorizationMismatch.
Tower finite_query_factorization(const Problem& problem, std::vector<QueryId> queries,
                                 std::function<Point(std::span<const Value>)> table, std::string name = "factorization");

}  // namespace sciwb
