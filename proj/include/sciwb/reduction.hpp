#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sciwb/kernels.hpp"
#include "sciwb/tower.hpp"

namespace sciwb {

/// Declared regularity of a decoder. Membership is recorded, never checked.
enum class DecoderClass { Cont, Bor, Id };

std::string_view to_string(DecoderClass c);
DecoderClass parse_decoder_class(std::string_view text);

/// Class of outer∘inner. Id composes with Id only when same_space holds; the
/// identity map is continuous and Borel, so Id with Cont or Bor yields the other class.
DecoderClass decoder_compose_class(DecoderClass outer, DecoderClass inner, bool same_space);

/// Named rule plus parameters, used to serialize reductions.
struct RuleSpec {
  std::string rule;
  std::vector<std::pair<std::string, std::string>> params;
};

struct Decoder {
  std::function<Point(const Point&)> map;
  DecoderClass tag = DecoderClass::Cont;
  RuleSpec spec;
};

/// Simulation of one target query by m >= 1 source queries and a combiner.
struct QueryBlock {
  std::vector<QueryId> sources;
  std::function<Value(std::span<const Value>)> combiner;
};

struct QueryPlan {
  /// nullopt when the query is not covered.
  std::function<std::optional<QueryBlock>(const QueryId&)> rule;
  RuleSpec spec;
};

/// Finite-query evaluation reduction of source to target.
struct Reduction {
  std::string name;
  ProblemPtr source;
  ProblemPtr target;
  std::function<InputPtr(const InputPtr&)> encoder;
  RuleSpec encoder_spec;
  Decoder decoder;
  QueryPlan plan;
  std::vector<Reduction> parts;  // {first, second} for composites

  /// Block size for a target query; throws PlanGap when uncovered.
  std::size_t width(const QueryId& target_query) const;
};

Reduction identity_reduction(ProblemPtr p);

/// first: R <= Q, second: Q <= P. Returns R <= P with blockwise-substituted plans.
/// Throws ProblemMismatch or TagIncompatible.
Reduction compose(const Reduction& first, const Reduction& second);

struct VerificationReport {
  std::size_t samples = 0;
  std::size_t queries_checked = 0;
  std::size_t target_failures = 0;
  std::size_t query_failures = 0;
  double max_discrepancy = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::string> failures;  // first few failure descriptions
};

struct VerifyOptions {
  std::size_t samples = 100;
  std::size_t queries_per_sample = 20;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  Execution exec = Execution::Parallel;
};

/// Checks Psi(A) = D(Xi(E A)) and f(E A) = theta_f(gamma_f(A)) on sampled inputs
/// and plan-covered queries. Exact data are compared exactly, the rest within tol.
VerificationReport verify_reduction(const Reduction& r, const VerifyOptions& options = {});

struct VerifiedReduction {
  Reduction reduction;
  VerificationReport report;
};

VerifiedReduction verified(Reduction r, const VerifyOptions& options = {});

/// Algorithm on the source simulating alg on the target. Throws PlanGap when
/// alg emits an uncovered query.
GeneralAlgorithm pullback_algorithm(const Reduction& r, const GeneralAlgorithm& alg);
Tower pullback_tower(const Reduction& r, const Tower& t);

enum class Feasibility { Infeasible, Unknown };
std::string_view to_string(Feasibility f);

/// Infeasible when target has queries and source has none; never claims feasibility.
Feasibility structural_feasibility(const Problem& source, const Problem& target);

}  // namespace sciwb
