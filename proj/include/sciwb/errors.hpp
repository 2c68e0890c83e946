#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sciwb {

enum class Errc {
  InvalidArgument,
  BudgetExceeded,
  UnknownQuery,
  EmptyTrace,
  IndexArityMismatch,
  FactorizationMismatch,
  ProblemMismatch,
  TagIncompatible,
  PlanGap,
  IndeterminateHeight,
  UnverifiedReduction,
  MissingClause,
  DegenerateInterval,
  WindowOutsideDomain,
  UnsupportedKind,
  UncertifiedStabilizer,
  GridTooCoarse,
  EmptySet,
  EmptyInputClass,
  EmptyQueryFamily,
  UsageError,
  CatalogError,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Clauses of the sufficiency package: exact source, reduction coverage, uniform upper bound.
enum class Clause { C1, C2, C3 };
std::string_view to_string(Clause c);

class MissingClauseError : public Error {
 public:
  MissingClauseError(Clause clause, std::string member, const std::string& what)
      : Error(Errc::MissingClause, what), clause_(clause), member_(std::move(member)) {}
  Clause clause() const noexcept { return clause_; }
  const std::string& member() const noexcept { return member_; }

 private:
  Clause clause_;
  std::string member_;
};

}  // namespace sciwb
