#include "sciwb/algorithm.hpp"

#include <utility>

namespace sciwb {

namespace {

class TraceRuleSession final : public Session {
 public:
  explicit TraceRuleSession(const TraceRule& rule) : rule_(rule) {}

  Decision next(const std::optional<Value>& answer) override {
    if (pending_) {
      if (!answer) throw Error(Errc::InvalidArgument, "protocol resumed without an answer");
      trace_.push_back({std::move(*pending_), *answer});
      pending_.reset();
    }
    Decision d = rule_(trace_);
    if (const auto* q = std::get_if<QueryId>(&d)) pending_ = *q;
    return d;
  }

 private:
  const TraceRule& rule_;
  QueryTrace trace_;
  std::optional<QueryId> pending_;
};

}  // namespace

GeneralAlgorithm make_algorithm(std::string name, TraceRule rule, std::size_t budget) {
  auto shared = std::make_shared<const TraceRule>(std::move(rule));
  return GeneralAlgorithm{std::move(name),
                          [shared]() -> std::unique_ptr<Session> {
                            // The session keeps the rule alive through the captured pointer.
                            struct Owning final : Session {
                              std::shared_ptr<const TraceRule> keep;
                              TraceRuleSession inner;
                              explicit Owning(std::shared_ptr<const TraceRule> r) : keep(std::move(r)), inner(*keep) {}
                              Decision next(const std::optional<Value>& a) override { return inner.next(a); }
                            };
                            return std::make_unique<Owning>(shared);
                          },
                          budget};
}

GeneralAlgorithm fixed_query_algorithm(std::string name, std::vector<QueryId> queries,
                                       std::function<Point(std::span<const Value>)> combine) {
  const std::size_t budget = std::max<std::size_t>(queries.size(), 1);
  return make_algorithm(
      std::move(name),
      [queries = std::move(queries), combine = std::move(combine)](const QueryTrace& trace) -> Decision {
        if (trace.size() < queries.size()) return queries[trace.size()];
        std::vector<Value> answers;
        answers.reserve(trace.size());
        for (const auto& step : trace) answers.push_back(step.value);
        return combine(answers);
      },
      budget);
}

GeneralAlgorithm constant_algorithm(std::string name, QueryId query, Point output) {
  return fixed_query_algorithm(std::move(name), {std::move(query)},
                               [output = std::move(output)](std::span<const Value>) { return output; });
}

RunResult run_algorithm(const GeneralAlgorithm& alg, const Problem& problem, const Input& input) {
  auto session = alg.start();
  RunResult result;
  std::optional<Value> answer;
  for (;;) {
    Decision d = session->next(answer);
    if (auto* out = std::get_if<Point>(&d)) {
      if (result.trace.empty())
        throw Error(Errc::EmptyTrace, alg.name + " stopped without asking a query");
      result.output = std::move(*out);
      return result;
    }
    auto& q = std::get<QueryId>(d);
    if (result.trace.size() >= alg.budget)
      throw Error(Errc::BudgetExceeded, alg.name + " exceeded its budget of " + std::to_string(alg.budget) + " queries");
    if (!problem.has_query(q))
      throw Error(Errc::UnknownQuery, q.to_string() + " is not an evaluation of " + problem.id());
    Value v = problem.evaluate(q, input);
    answer = v;
    result.trace.push_back({std::move(q), std::move(v)});
  }
}

bool identical(const QueryTrace& a, const QueryTrace& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i].query == b[i].query) || !identical(a[i].value, b[i].value)) return false;
  return true;
}

LocalityVerdict check_locality(const GeneralAlgorithm& alg, const Problem& problem, const Input& input_a,
                               const Input& input_b) {
  LocalityVerdict verdict;
  const RunResult ra = run_algorithm(alg, problem, input_a);
  for (const auto& step : ra.trace) {
    if (!identical(problem.evaluate(step.query, input_b), step.value)) {
      verdict.detail = "inputs differ on " + step.query.to_string();
      return verdict;  // antecedent false: nothing to check
    }
  }
  verdict.answers_agree = true;
  const RunResult rb = run_algorithm(alg, problem, input_b);
  if (!identical(ra.output, rb.output)) {
    verdict.pass = false;
    verdict.detail = "outputs differ: " + ra.output.to_string() + " vs " + rb.output.to_string();
  } else if (!identical(ra.trace, rb.trace)) {
    verdict.pass = false;
    verdict.detail = "query traces differ";
  } else {
    verdict.detail = "identical answers, identical output " + ra.output.to_string();
  }
  return verdict;
}

}  // namespace sciwb
