#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sciwb/serialize.hpp"

namespace sciwb {

inline constexpr const char* kReportSchema = "sci-workbench/report/v1";

struct Check {
  std::string name;
  bool pass = false;
  Json measured;
  Json tolerance;
};

struct RunReport {
  std::string command;
  Json parameters = Json::object();
  Json result = Json::object();
  std::vector<Check> checks;
  std::uint64_t seed = 0;
  std::string text;  // human-readable body
  bool json = false;

  bool ok() const;
  Json to_json() const;
  /// JSON document in --json mode, otherwise the text body followed by check lines.
  std::string render() const;
};

/// SCI_WORKBENCH_SEED, default 0. Throws UsageError when it is not an unsigned integer.
std::uint64_t seed_from_env();

/// Runs one subcommand. args excludes the program name.
/// Throws UsageError (with the grammar) and CatalogError.
RunReport dispatch(const std::vector<std::string>& args);

/// The documented subcommand grammar.
std::string grammar();

}  // namespace sciwb
