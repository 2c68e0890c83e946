#include "sciwb/serialize.hpp"

#include "sciwb/integration.hpp"
#include "sciwb/lattice.hpp"
#include "sciwb/spectral.hpp"

namespace sciwb {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::CatalogError, "reduction spec: " + what); }

std::pair<Rational, Rational> parse_bracket(const std::string& text) {
  if (text.size() < 5 || text.front() != '[' || text.back() != ']') throw Error(Errc::InvalidArgument, "expected [lo,hi], got '" + text + "'");
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(Errc::InvalidArgument, "expected [lo,hi], got '" + text + "'");
  return {parse_rational(text.substr(1, comma - 1)), parse_rational(text.substr(comma + 1, text.size() - comma - 2))};
}

std::string param(const Json& rule, const std::string& key) {
  if (!rule.contains("params") || !rule["params"].contains(key) || !rule["params"][key].is_string())
    bad("rule '" + rule.value("rule", std::string("?")) + "' needs string parameter '" + key + "'");
  return rule["params"][key].get<std::string>();
}

}  // namespace

Json to_json(const Point& p) {
  if (p.is_real()) {
    const Real& r = p.real();
    Json j;
    if (r.is_exact()) j["exact"] = to_string(r.exact());
    j["approx"] = r.to_double();
    return j;
  }
  if (p.is_tagged()) {
    const auto& t = p.tagged_point();
    return Json{{"tag", t.tag}, {"inner", to_json(*t.inner)}};
  }
  Json pts = Json::array();
  for (const auto& z : p.set().points) pts.push_back(Json::array({z.real(), z.imag()}));
  return Json{{"points", pts}, {"resolution", p.set().resolution}};
}

Json to_json(const RuleSpec& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  return Json{{"rule", r.rule}, {"params", params}};
}

Json to_json(const VerificationReport& r) {
  return Json{{"samples", r.samples},
              {"queries_checked", r.queries_checked},
              {"target_failures", r.target_failures},
              {"query_failures", r.query_failures},
              {"max_discrepancy", r.max_discrepancy},
              {"tolerance", r.tolerance},
              {"pass", r.pass},
              {"failures", r.failures}};
}

namespace {

Json provenance_json(const Provenance& p) {
  Json premises = Json::array();
  for (const auto& q : p.premises) premises.push_back(provenance_json(q));
  return Json{{"kind", std::string(to_string(p.kind))}, {"detail", p.detail}, {"premises", premises}};
}

}  // namespace

Json to_json(const HeightCertificate& c) {
  Json prov = Json::array();
  for (const auto& p : c.provenance) prov.push_back(provenance_json(p));
  Json ub = c.interval.ub ? Json(*c.interval.ub) : Json("inf");
  return Json{{"problem", c.problem}, {"lb", c.interval.lb}, {"ub", ub}, {"provenance", prov}};
}

Json to_json(const SharpnessVerdict& v) {
  return Json{{"k", v.k},
              {"pointwise_exact", std::string(to_string(v.pointwise_exact))},
              {"witness_sharp", std::string(to_string(v.witness_sharp))},
              {"worst_case_exact", std::string(to_string(v.worst_case_exact))},
              {"verdict", v.to_string()}};
}

Json reduction_to_json(const Reduction& r) {
  Json dec = to_json(r.decoder.spec);
  dec["tag"] = std::string(to_string(r.decoder.tag));
  Json j{{"name", r.name},
         {"source", r.source->id()},
         {"target", r.target->id()},
         {"encoder", to_json(r.encoder_spec)},
         {"decoder", dec},
         {"plan", to_json(r.plan.spec)}};
  if (!r.parts.empty()) {
    j["parts"] = Json::array();
    for (const auto& part : r.parts) j["parts"].push_back(reduction_to_json(part));
  }
  return j;
}

ProblemPtr problem_from_id(const std::string& id) {
  try {
    if (id.rfind("integrate[", 0) == 0) {
      const auto [a, b] = parse_bracket(id.substr(9));
      return integration::make_problem(integration::Interval(a, b));
    }
    if (id.rfind("spectral-source[", 0) == 0) {
      const auto [lo, hi] = parse_bracket(id.substr(15));
      return spectral::source_problem(spectral::Domain(lo, hi));
    }
    if (id.rfind("spectral-stabilized[", 0) == 0) {
      const auto close = id.find("]+");
      if (close == std::string::npos) throw Error(Errc::InvalidArgument, "missing stabilizer");
      const auto [lo, hi] = parse_bracket(id.substr(19, close - 18));
      const spectral::Domain j(lo, hi);
      return spectral::stabilized_problem(j, spectral::certify_stabilizer(spectral::parse_diagonal(id.substr(close + 2)), j));
    }
    if (id == "singleton") return lattice::singleton_problem();
    if (id == "empty-query-0") return lattice::empty_query_pair().first;
    if (id == "empty-query-1") return lattice::empty_query_pair().second;
  } catch (const Error& e) {
    throw Error(Errc::UsageError, "bad problem id '" + id + "': " + e.what());
  }
  throw Error(Errc::UsageError, "unknown problem id '" + id + "'");
}

Reduction reduction_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("plan") || !j["plan"].contains("rule")) bad("missing plan rule");
  const Json& plan = j["plan"];
  const std::string rule = plan["rule"].get<std::string>();
  Reduction r;
  try {
    if (rule == "identity") {
      if (!j.contains("source")) bad("identity needs a source id");
      r = identity_reduction(problem_from_id(j["source"].get<std::string>()));
    } else if (rule == "interval_affine") {
      const auto [a, b] = parse_bracket(param(plan, "from"));
      const auto [c, d] = parse_bracket(param(plan, "to"));
      r = integration::interval_affine_reduction(integration::Interval(a, b), integration::Interval(c, d));
    } else if (rule == "stabilization_forward" || rule == "stabilization_backward") {
      const auto [lo, hi] = parse_bracket(param(plan, "domain"));
      const spectral::Domain dom(lo, hi);
      const auto b = spectral::certify_stabilizer(spectral::parse_diagonal(param(plan, "stabilizer")), dom);
      auto pair = spectral::stabilization_reductions(spectral::source_problem(dom), spectral::stabilized_problem(dom, b));
      r = rule == "stabilization_forward" ? std::move(pair.forward) : std::move(pair.backward);
    } else if (rule == "composite") {
      if (!j.contains("parts") || !j["parts"].is_array() || j["parts"].size() != 2) bad("composite needs two parts");
      r = compose(reduction_from_json(j["parts"][0]), reduction_from_json(j["parts"][1]));
    } else {
      bad("unknown or non-serializable rule '" + rule + "'");
    }
  } catch (const Error& e) {
    if (e.code() == Errc::CatalogError) throw;
    bad(e.what());
  }
  for (const char* side : {"source", "target"}) {
    if (!j.contains(side)) continue;
    const std::string want = j[side].get<std::string>();
    const std::string got = std::string(side) == "source" ? r.source->id() : r.target->id();
    if (want != got) bad(std::string(side) + " is " + got + ", spec says " + want);
  }
  if (j.contains("decoder") && j["decoder"].contains("tag")) {
    const auto tag = parse_decoder_class(j["decoder"]["tag"].get<std::string>());
    if (tag != r.decoder.tag) bad("decoder tag " + std::string(to_string(tag)) + " does not match the rule");
  }
  return r;
}

}  // namespace sciwb
