#include "sciwb/problem.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "sciwb/kernels.hpp"

namespace sciwb {

std::int64_t QueryId::int_param(std::size_t i) const {
  if (i >= params.size()) throw Error(Errc::UnknownQuery, "missing parameter " + std::to_string(i) + " in " + to_string());
  const Rational& q = params[i];
  if (boost::multiprecision::denominator(q) != 1)
    throw Error(Errc::UnknownQuery, "non-integral index in " + to_string());
  const Integer n = boost::multiprecision::numerator(q);
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
    throw Error(Errc::UnknownQuery, "index out of range in " + to_string());
  return n.convert_to<std::int64_t>();
}

std::string QueryId::to_string() const {
  std::ostringstream os;
  os << head;
  if (params.empty() && args.empty()) return os.str();
  os << '(';
  for (std::size_t i = 0; i < params.size(); ++i) os << (i ? "," : "") << sciwb::to_string(params[i]);
  if (!args.empty()) {
    os << (params.empty() ? "" : "; ");
    for (std::size_t i = 0; i < args.size(); ++i) os << (i ? "," : "") << args[i].to_string();
  }
  os << ')';
  return os.str();
}

// --- OutputSpace ------------------------------------------------------------

OutputSpace OutputSpace::real_line() {
  return OutputSpace("R", [](const Point& a, const Point& b) { return abs_diff(a.real(), b.real()); });
}

OutputSpace OutputSpace::discrete(std::vector<int> labels) {
  std::sort(labels.begin(), labels.end());
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i];
  os << '}';
  return OutputSpace(os.str(), [](const Point& a, const Point& b) { return identical(a, b) ? 0.0 : 1.0; });
}

OutputSpace OutputSpace::hyperspace() {
  return OutputSpace("H(C)", [](const Point& a, const Point& b) {
    return kernels::hausdorff(a.set().points, b.set().points, Execution::Serial);
  });
}

OutputSpace OutputSpace::tagged_union(const OutputSpace& m0, const OutputSpace& m1) {
  return OutputSpace("tagged(" + m0.id() + "|" + m1.id() + ")",
                     [m0, m1](const Point& a, const Point& b) {
                       const auto& x = a.tagged_point();
                       const auto& y = b.tagged_point();
                       if (x.tag != y.tag) return 2.0;
                       const OutputSpace& m = x.tag == 0 ? m0 : m1;
                       return std::min(1.0, m.distance(*x.inner, *y.inner));
                     });
}

// --- Problem ----------------------------------------------------------------

InputPtr Problem::sample_input(std::mt19937_64& rng) const {
  const auto cat = catalog();
  if (cat.empty()) throw Error(Errc::EmptyInputClass, "problem " + id() + " has an empty catalog");
  std::uniform_int_distribution<std::size_t> pick(0, cat.size() - 1);
  return cat[pick(rng)];
}

std::vector<QueryId> Problem::probe_queries(const Input&, const Input&) const {
  std::mt19937_64 rng(0x5eed);
  auto qs = sample_queries(rng, 256);
  if (auto first = first_query()) qs.insert(qs.begin(), *first);
  return qs;
}

ConsistencyReport check_consistency(const Problem& problem) {
  ConsistencyReport report;
  const auto cat = problem.catalog();
  const auto& space = problem.output_space();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const Point ti = problem.target(*cat[i]);
    for (std::size_t j = i + 1; j < cat.size(); ++j) {
      ++report.pairs_checked;
      const Point tj = problem.target(*cat[j]);
      if (space.distance(ti, tj) == 0.0) continue;
      ++report.pairs_needing_separation;
      bool separated = false;
      for (const auto& q : problem.probe_queries(*cat[i], *cat[j])) {
        if (!identical(problem.evaluate(q, *cat[i]), problem.evaluate(q, *cat[j]))) {
          separated = true;
          break;
        }
      }
      if (!separated) report.unseparated.push_back(cat[i]->describe() + " vs " + cat[j]->describe());
    }
  }
  return report;
}

}  // namespace sciwb
