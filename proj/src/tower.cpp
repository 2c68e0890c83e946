#include "sciwb/tower.hpp"

#include <sstream>

namespace sciwb {

std::string to_string(const MultiIndex& idx) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
  os << ')';
  return os.str();
}

Point evaluate_tower(const Tower& tower, const MultiIndex& idx, const Problem& problem, const Input& input) {
  if (static_cast<int>(idx.size()) != tower.height)
    throw Error(Errc::IndexArityMismatch, tower.name + " has height " + std::to_string(tower.height) +
                                              " but index " + to_string(idx) + " has length " +
                                              std::to_string(idx.size()));
  return run_algorithm(tower.stage(idx), problem, input).output;
}

namespace {

struct LevelProbe {
  Point value;
  bool stabilized = true;
};

ConvergenceReport probe_level(const Tower& tower, const Problem& problem, const Input& input,
                              const std::vector<std::vector<std::int64_t>>& schedule, MultiIndex& prefix,
                              double tol, std::size_t tail) {
  ConvergenceReport report;
  const std::size_t level = prefix.size();
  const auto& space = problem.output_space();
  for (const auto n : schedule[level]) {
    prefix.push_back(n);
    Point value;
    if (level + 1 == schedule.size()) {
      value = evaluate_tower(tower, prefix, problem, input);
    } else {
      const auto inner = probe_level(tower, problem, input, schedule, prefix, tol, tail);
      report.inner_stabilized = report.inner_stabilized && inner.stabilized;
      value = inner.final_value;
    }
    prefix.pop_back();
    if (!report.values.empty()) report.distances.push_back(space.distance(report.values.back(), value));
    report.stages.push_back(n);
    report.values.push_back(std::move(value));
  }
  bool tail_ok = report.distances.size() >= tail;
  for (std::size_t i = 0; tail_ok && i < tail; ++i)
    tail_ok = report.distances[report.distances.size() - 1 - i] < tol;
  report.stabilized = tail_ok && report.inner_stabilized;
  report.final_value = report.values.back();
  return report;
}

}  // namespace

ConvergenceReport probe_convergence(const Tower& tower, const Problem& problem, const Input& input,
                                    const std::vector<std::vector<std::int64_t>>& schedule, double tol,
                                    std::size_t tail) {
  if (!(tol > 0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
  if (tower.height == 0) {
    ConvergenceReport report;
    report.values.push_back(evaluate_tower(tower, {}, problem, input));
    report.final_value = report.values.back();
    report.stabilized = true;
    return report;
  }
  if (static_cast<int>(schedule.size()) != tower.height)
    throw Error(Errc::IndexArityMismatch, "schedule needs one stage list per level of " + tower.name);
  for (const auto& level : schedule)
    if (level.empty()) throw Error(Errc::InvalidArgument, "empty stage list in schedule");
  MultiIndex prefix;
  return probe_level(tower, problem, input, schedule, prefix, tol, tail);
}

Tower finite_query_factorization(const Problem& problem, std::vector<QueryId> queries,
                                 std::function<Point(std::span<const Value>)> table, std::string name) {
  if (queries.empty()) throw Error(Errc::InvalidArgument, "a factorization needs at least one query");
  for (const auto& q : queries)
    if (!problem.has_query(q)) throw Error(Errc::UnknownQuery, q.to_string() + " is not a query of " + problem.id());
  const auto& space = problem.output_space();
  for (const auto& input : problem.catalog()) {
    std::vector<Value> values;
    values.reserve(queries.size());
    for (const auto& q : queries) values.push_back(problem.evaluate(q, *input));
    const Point got = table(values);
    const Point want = problem.target(*input);
    if (space.distance(got, want) != 0.0)
      throw Error(Errc::FactorizationMismatch, "table gives " + got.to_string() + " but target is " +
                                                   want.to_string() + " on " + input->describe());
  }
  auto alg = fixed_query_algorithm(name, std::move(queries), std::move(table));
  return Tower{std::move(name), 0, [alg](const MultiIndex&) { return alg; }};
}

}  // namespace sciwb
