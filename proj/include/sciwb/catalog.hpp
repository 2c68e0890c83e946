#pragma once

#include <string>
#include <vector>

#include "sciwb/integration.hpp"
#include "sciwb/koopman.hpp"
#include "sciwb/spectral.hpp"

namespace sciwb {

inline constexpr const char* kCatalogSchema = "sci-workbench/catalog/v1";

struct IntegrationEntry {
  integration::Interval interval;
  std::vector<integration::Function> functions;
  bool degenerate = false;
};

struct SpectralEntry {
  spectral::Domain domain;
  std::vector<spectral::Pair> pairs;
  std::vector<spectral::DiagonalSpec> stabilizers;
};

struct KoopmanEntry {
  koopman::FiniteSpace space;
  std::vector<koopman::MapTable> maps;  // empty: every map on N points
};

struct Catalog {
  std::vector<IntegrationEntry> integration;
  std::vector<SpectralEntry> spectral;
  std::vector<KoopmanEntry> koopman;

  std::size_t spectral_pair_count() const;
};

/// Throws CatalogError naming the JSON location of the first problem.
Catalog load_catalog(const std::string& path);
Catalog parse_catalog(const std::string& json_text, const std::string& origin = "<string>");

/// The catalog shipped in data/, falling back to the built-in problem catalogs.
Catalog default_catalog();
std::string default_catalog_path();

}  // namespace sciwb
