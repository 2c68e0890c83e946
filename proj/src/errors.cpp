#include "sciwb/errors.hpp"

namespace sciwb {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::UnknownQuery: return "UnknownQuery";
    case Errc::EmptyTrace: return "EmptyTrace";
    case Errc::IndexArityMismatch: return "IndexArityMismatch";
    case Errc::FactorizationMismatch: return "FactorizationMismatch";
    case Errc::ProblemMismatch: return "ProblemMismatch";
    case Errc::TagIncompatible: return "TagIncompatible";
    case Errc::PlanGap: return "PlanGap";
    case Errc::IndeterminateHeight: return "IndeterminateHeight";
    case Errc::UnverifiedReduction: return "UnverifiedReduction";
    case Errc::MissingClause: return "MissingClause";
    case Errc::DegenerateInterval: return "DegenerateInterval";
    case Errc::WindowOutsideDomain: return "WindowOutsideDomain";
    case Errc::UnsupportedKind: return "UnsupportedKind";
    case Errc::UncertifiedStabilizer: return "UncertifiedStabilizer";
    case Errc::GridTooCoarse: return "GridTooCoarse";
    case Errc::EmptySet: return "EmptySet";
    case Errc::EmptyInputClass: return "EmptyInputClass";
    case Errc::EmptyQueryFamily: return "EmptyQueryFamily";
    case Errc::UsageError: return "UsageError";
    case Errc::CatalogError: return "CatalogError";
  }
  return "Unknown";
}

std::string_view to_string(Clause c) {
  switch (c) {
    case Clause::C1: return "C1";
    case Clause::C2: return "C2";
    case Clause::C3: return "C3";
  }
  return "?";
}

}  // namespace sciwb
