#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sciwb/problem.hpp"

namespace sciwb {

inline constexpr std::size_t kDefaultBudget = 1'000'000;

struct TraceStep {
  QueryId query;
  Value value;
};

/// Ordered (query, answer) pairs of one run.
using QueryTrace = std::vector<TraceStep>;

/// What a protocol does next: ask a query or stop with an output point.
using Decision = std::variant<QueryId, Point>;

/// One run of an adaptive protocol. It is fed only the answer to its previous
/// query (nullopt on the first call), so it cannot observe the input in any
/// other way.
class Session {
 public:
  virtual ~Session() = default;
  virtual Decision next(const std::optional<Value>& answer) = 0;
};

/// A general algorithm: a factory of protocol sessions plus a hard query budget.
struct GeneralAlgorithm {
  std::string name;
  std::function<std::unique_ptr<Session>()> start;
  std::size_t budget = kDefaultBudget;
};

/// Protocol given as a function of the trace so far.
using TraceRule = std::function<Decision(const QueryTrace&)>;
GeneralAlgorithm make_algorithm(std::string name, TraceRule rule, std::size_t budget = kDefaultBudget);

/// Asks the given queries in order, then outputs combine(answers).
GeneralAlgorithm fixed_query_algorithm(std::string name, std::vector<QueryId> queries,
                                       std::function<Point(std::span<const Value>)> combine);

/// Constant output after asking one query.
GeneralAlgorithm constant_algorithm(std::string name, QueryId query, Point output);

struct RunResult {
  Point output;
  QueryTrace trace;
};

/// Runs alg against input through problem's query interface.
/// Throws BudgetExceeded, UnknownQuery, or EmptyTrace (a run must ask at least one query).
RunResult run_algorithm(const GeneralAlgorithm& alg, const Problem& problem, const Input& input);

struct LocalityVerdict {
  bool pass = true;
  bool answers_agree = false;  // whether input_b answers input_a's trace identically
  std::string detail;
};

/// If input_b answers every query of input_a's trace identically, the two runs
/// must produce identical outputs and traces.
LocalityVerdict check_locality(const GeneralAlgorithm& alg, const Problem& problem, const Input& input_a,
                               const Input& input_b);

bool identical(const QueryTrace& a, const QueryTrace& b);

}  // namespace sciwb
