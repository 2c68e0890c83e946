#include "sciwb/catalog.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#ifndef SCIWB_DATA_DIR
#define SCIWB_DATA_DIR "data"
#endif

namespace sciwb {

namespace {

using nlohmann::json;

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::string& where, const std::string& what) const {
    throw Error(Errc::CatalogError, origin_ + ":" + (where.empty() ? "/" : where) + ": " + what);
  }

  const json& field(const json& obj, const std::string& where, const std::string& key) const {
    if (!obj.is_object()) fail(where, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(where, "missing field '" + key + "'");
    return *it;
  }

  Rational rational(const json& v, const std::string& where) const {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_string()) {
      try {
        return parse_rational(v.get<std::string>());
      } catch (const Error& e) {
        fail(where, e.what());
      }
    }
    fail(where, "expected an integer or a rational string");
  }

  std::vector<Rational> rationals(const json& v, const std::string& where) const {
    if (!v.is_array()) fail(where, "expected an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational(v[i], where + "/" + std::to_string(i)));
    return out;
  }

  std::pair<Rational, Rational> bounds(const json& v, const std::string& where) const {
    const auto r = rationals(v, where);
    if (r.size() != 2) fail(where, "expected [lo, hi]");
    if (r[0] > r[1]) fail(where, "lower end exceeds upper end");
    return {r[0], r[1]};
  }

  integration::Function function(const json& v, const std::string& where) const {
    using integration::Function;
    const std::string kind = field(v, where, "kind").get<std::string>();
    const auto p = rationals(field(v, where, "params"), where + "/params");
    auto need = [&](std::size_t n) {
      if (p.size() != n) fail(where + "/params", "kind '" + kind + "' takes " + std::to_string(n) + " parameters");
    };
    try {
      if (kind == "poly") return Function::polynomial(p);
      if (kind == "sin") {
        need(2);
        return Function::sine(p[0], p[1]);
      }
      if (kind == "bump") {
        need(2);
        return Function::bump(p[0], p[1]);
      }
      if (kind == "affine") {
        need(3);
        return Function::affine(p[0], p[1], p[2], function(field(v, where, "base"), where + "/base"));
      }
    } catch (const Error& e) {
      if (e.code() == Errc::CatalogError) throw;
      fail(where, e.what());
    }
    fail(where + "/kind", "unknown function kind '" + kind + "'");
  }

  spectral::DiagonalSpec diagonal(const json& v, const std::string& where) const {
    using spectral::DiagonalSpec;
    const std::string kind = field(v, where, "kind").get<std::string>();
    auto r = [&](const char* key) { return rational(field(v, where, key), where + "/" + key); };
    if (kind == "finite")
      return DiagonalSpec::finite_then_constant(rationals(field(v, where, "head"), where + "/head"), r("tail"));
    if (kind == "linear") return DiagonalSpec::linear(r("offset"), r("step"));
    if (kind == "harmonic") return DiagonalSpec::harmonic(r("limit"), r("scale"));
    if (kind == "enum") {
      const Rational lo = r("lo"), hi = r("hi");
      if (lo >= hi) fail(where, "enumeration needs lo < hi");
      return DiagonalSpec::rational_enumeration(lo, hi);
    }
    if (kind == "opaque") return DiagonalSpec::opaque(diagonal(field(v, where, "inner"), where + "/inner"));
    fail(where + "/kind", "unknown operator kind '" + kind + "'");
  }

  IntegrationEntry integration_entry(const json& params, const std::string& where) const {
    const auto [a, b] = bounds(field(params, where, "interval"), where + "/interval");
    IntegrationEntry e{integration::Interval(a, b), {}, a == b};
    if (params.contains("functions")) {
      const auto& fs = params["functions"];
      if (!fs.is_array()) fail(where + "/functions", "expected an array");
      for (std::size_t i = 0; i < fs.size(); ++i) e.functions.push_back(function(fs[i], where + "/functions/" + std::to_string(i)));
    }
    return e;
  }

  SpectralEntry spectral_entry(const json& params, const std::string& where) const {
    const auto [lo, hi] = bounds(field(params, where, "domain"), where + "/domain");
    SpectralEntry e{spectral::Domain(lo, hi), {}, {}};
    const auto& pairs = field(params, where, "pairs");
    if (!pairs.is_array()) fail(where + "/pairs", "expected an array");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string at = where + "/pairs/" + std::to_string(i);
      auto op = diagonal(field(pairs[i], at, "operator"), at + "/operator");
      const Rational z = rational(field(pairs[i], at, "window"), at + "/window");
      if (!e.domain.contains(z)) fail(at + "/window", "window point outside the domain");
      e.pairs.emplace_back(std::move(op), z);
    }
    if (params.contains("stabilizers")) {
      const auto& bs = params["stabilizers"];
      if (!bs.is_array()) fail(where + "/stabilizers", "expected an array");
      for (std::size_t i = 0; i < bs.size(); ++i)
        e.stabilizers.push_back(diagonal(bs[i], where + "/stabilizers/" + std::to_string(i)));
    }
    return e;
  }

  KoopmanEntry koopman_entry(const json& params, const std::string& where) const {
    const json& nv = field(params, where, "N");
    if (!nv.is_number_integer() || nv.get<int>() < 1) fail(where + "/N", "expected a positive integer");
    const int n = nv.get<int>();
    std::vector<Rational> w;
    if (params.contains("weights")) w = rationals(params["weights"], where + "/weights");
    if (!w.empty() && static_cast<int>(w.size()) != n) fail(where + "/weights", "expected N weights");
    KoopmanEntry e{[&] {
                     try {
                       return koopman::FiniteSpace(n, w);
                     } catch (const Error& err) {
                       fail(where + "/weights", err.what());
                     }
                   }(),
                   {}};
    auto table = [&](const json& m, const std::string& at) {
      if (!m.is_array()) fail(at, "expected an array");
      koopman::MapTable t;
      for (const auto& x : m) {
        if (!x.is_number_integer()) fail(at, "map entries are integers");
        t.push_back(x.get<int>());
      }
      try {
        koopman::check_table(t, n);
      } catch (const Error& err) {
        fail(at, err.what());
      }
      return t;
    };
    if (params.contains("map")) e.maps.push_back(table(params["map"], where + "/map"));
    if (params.contains("maps")) {
      const auto& ms = params["maps"];
      if (!ms.is_array()) fail(where + "/maps", "expected an array");
      for (std::size_t i = 0; i < ms.size(); ++i) e.maps.push_back(table(ms[i], where + "/maps/" + std::to_string(i)));
    }
    return e;
  }

  Catalog catalog(const json& doc) const {
    if (!doc.is_object()) fail("", "expected an object");
    if (doc.contains("schema") && doc["schema"] != kCatalogSchema)
      fail("/schema", "unsupported schema " + doc["schema"].dump());
    const auto& entries = field(doc, "", "entries");
    if (!entries.is_array()) fail("/entries", "expected an array");
    Catalog c;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string at = "/entries/" + std::to_string(i);
      const json& kind = field(entries[i], at, "problem");
      if (!kind.is_string()) fail(at + "/problem", "expected a string");
      const json& params = field(entries[i], at, "params");
      const std::string k = kind.get<std::string>();
      if (k == "integration")
        c.integration.push_back(integration_entry(params, at + "/params"));
      else if (k == "spectral")
        c.spectral.push_back(spectral_entry(params, at + "/params"));
      else if (k == "koopman")
        c.koopman.push_back(koopman_entry(params, at + "/params"));
      else
        fail(at + "/problem", "unknown problem kind '" + k + "'");
    }
    return c;
  }

 private:
  std::string origin_;
};

}  // namespace

std::size_t Catalog::spectral_pair_count() const {
  std::size_t n = 0;
  for (const auto& e : spectral) n += e.pairs.size();
  return n;
}

Catalog parse_catalog(const std::string& json_text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::CatalogError, origin + ": malformed JSON at byte " + std::to_string(e.byte));
  }
  try {
    return Reader(origin).catalog(doc);
  } catch (const json::exception& e) {
    throw Error(Errc::CatalogError, origin + ": " + e.what());
  }
}

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::CatalogError, path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str(), path);
}

std::string default_catalog_path() { return std::string(SCIWB_DATA_DIR) + "/catalog.json"; }

Catalog default_catalog() {
  if (std::filesystem::exists(default_catalog_path())) return load_catalog(default_catalog_path());
  Catalog c;
  for (const auto& [a, b] : std::vector<std::pair<Rational, Rational>>{{0, 1}, {0, 2}, {-1, 3}, {2, 2}})
    c.integration.push_back({integration::Interval(a, b), integration::default_functions(), a == b});
  const spectral::Domain j(0, 1);
  c.spectral.push_back({j, spectral::builtin_pairs(j),
                        {spectral::DiagonalSpec::finite_then_constant({}, 5), spectral::DiagonalSpec::harmonic(3, 1)}});
  c.koopman.push_back({koopman::FiniteSpace(2), {{2, 1}}});
  return c;
}

}  // namespace sciwb
