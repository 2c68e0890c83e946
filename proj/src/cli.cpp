#include "sciwb/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "sciwb/catalog.hpp"
#include "sciwb/integration.hpp"
#include "sciwb/koopman.hpp"
#include "sciwb/lattice.hpp"
#include "sciwb/spectral.hpp"

namespace sciwb {

bool RunReport::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Json RunReport::to_json() const {
  Json cs = Json::array();
  for (const auto& c : checks)
    cs.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}, {"tolerance", c.tolerance}});
  return Json{{"schema", kReportSchema}, {"command", command}, {"parameters", parameters}, {"result", result},
              {"checks", cs},        {"seed", seed},       {"ok", ok()}};
}

std::string RunReport::render() const {
  if (json) return to_json().dump(2) + "\n";
  std::ostringstream os;
  os << text;
  if (!text.empty() && text.back() != '\n') os << '\n';
  std::size_t passed = 0;
  for (const auto& c : checks) {
    passed += c.pass;
    if (!c.pass || checks.size() <= 40) os << (c.pass ? "PASS " : "FAIL ") << c.name << '\n';
  }
  if (!checks.empty()) os << passed << "/" << checks.size() << " checks passed\n";
  return os.str();
}

std::uint64_t seed_from_env() {
  const char* s = std::getenv("SCI_WORKBENCH_SEED");
  if (!s || !*s) return 0;
  const std::string v(s);
  if (v.find_first_not_of("0123456789") != std::string::npos || v.size() > 19)
    throw Error(Errc::UsageError, "SCI_WORKBENCH_SEED must be an unsigned integer, got '" + v + "'");
  return std::stoull(v);
}

std::string grammar() {
  return R"(usage: sci_workbench [--json] [--catalog PATH] <command> <subcommand> [options]

  integrate tower     --interval A B [--function F] [--n N[,N...]]
  integrate adversary [--points X[,X...] | --n N]
  integrate reduce    --to C D [--from A B] [--samples S] [--queries Q] [--stages N[,N...]]
  spectral decide     [--domain LO HI] [--operator D --window Z] [--stage N2,N1]
  spectral stabilize  [--domain LO HI] [--stabilizer D]
  spectral reduce     [--domain LO HI] [--stabilizer D] [--samples S] [--queries Q]
  koopman finite      [--map F1,...,FN] [--weights W1,...,WN] [--n N] [--target ap|apeps]
                      [--epsilon E] [--grid H]
  family classify     --heights H[,H...] --k K
  certify package     [--family interval|spectral] [--drop none|C1|C2|C3] [--samples S]
  certify saturate    [--samples S]
  degrees join        [--left ID] [--right ID] [--samples S]
  degrees meet        [--left ID] [--right ID] [--samples S]
  degrees counterexample --class cont|bor|id
  reduce verify       --spec FILE|JSON [--samples S] [--queries Q] [--tol T]
  reduce compose      --first FILE|JSON --second FILE|JSON [--samples S]
  reduce pullback     --spec FILE|JSON [--stages N[,N...] | N2:N1[,...]]

  F: poly:c0,c1,...  sin:scale,freq  bump:u,v  affine:outer,slope,shift;<F>
  D: finite:d1,d2,...|tail  linear:offset,step  harmonic:limit,scale  enum:lo,hi
  ID: integrate[a,b]  spectral-source[lo,hi]  spectral-stabilized[lo,hi]+<D>  singleton
  Environment: SCI_WORKBENCH_SEED (default 0)
)";
}

namespace {

[[noreturn]] void usage(const std::string& what) { throw Error(Errc::UsageError, what + "\n\n" + grammar()); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

Rational rat(const std::string& s, const std::string& what) {
  try {
    return parse_rational(s);
  } catch (const Error&) {
    usage("bad " + what + " '" + s + "'");
  }
}

std::vector<Rational> rats(const std::string& s, const std::string& what) {
  std::vector<Rational> out;
  if (s.empty()) return out;
  for (const auto& t : split(s, ',')) out.push_back(rat(t, what));
  return out;
}

std::vector<std::int64_t> ints(const std::string& s, const std::string& what) {
  std::vector<std::int64_t> out;
  for (const auto& t : split(s, ',')) {
    const Rational q = rat(t, what);
    if (boost::multiprecision::denominator(q) != 1) usage(what + " must be integers");
    out.push_back(boost::multiprecision::numerator(q).convert_to<std::int64_t>());
  }
  return out;
}

Json read_spec(const std::string& arg) {
  std::string text = arg;
  if (arg.empty() || arg.front() != '{') {
    std::ifstream in(arg);
    if (!in) usage("cannot open reduction spec '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::CatalogError, "reduction spec: malformed JSON at byte " + std::to_string(e.byte));
  }
}

Json exact_json(const Rational& q) { return to_string(q); }

void check(RunReport& r, std::string name, bool pass, Json measured = nullptr, Json tolerance = nullptr) {
  r.checks.push_back({std::move(name), pass, std::move(measured), std::move(tolerance)});
}

// Within tol, or exactly when both sides are exact.
bool close(const Real& a, const Real& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  return abs_diff(a, b) <= tol;
}

struct Context {
  std::uint64_t seed = 0;
  std::string catalog_path;
  std::optional<Catalog> cat;

  const Catalog& catalog() {
    if (!cat) cat = catalog_path.empty() ? default_catalog() : load_catalog(catalog_path);
    return *cat;
  }
};

std::vector<integration::Function> functions_for(Context& ctx, const integration::Interval& i) {
  for (const auto& e : ctx.catalog().integration)
    if (e.interval.a == i.a && e.interval.b == i.b && !e.functions.empty()) return e.functions;
  for (const auto& e : ctx.catalog().integration)
    if (!e.functions.empty()) return e.functions;
  return integration::default_functions();
}

const SpectralEntry& spectral_entry(Context& ctx, const std::optional<spectral::Domain>& d) {
  const auto& all = ctx.catalog().spectral;
  if (all.empty()) throw Error(Errc::CatalogError, "catalog has no spectral entries");
  if (!d) return all.front();
  for (const auto& e : all)
    if (e.domain.lo == d->lo && e.domain.hi == d->hi) return e;
  throw Error(Errc::CatalogError, "catalog has no spectral entry for " + d->to_string());
}

VerifyOptions verify_options(const Context& ctx, std::size_t samples, std::size_t queries, double tol = 1e-9) {
  return VerifyOptions{samples, queries, tol, ctx.seed, Execution::Parallel};
}

void add_verification(RunReport& r, const std::string& name, const VerificationReport& v, std::ostringstream& os) {
  check(r, name, v.pass, Json{{"target_failures", v.target_failures}, {"query_failures", v.query_failures},
                                {"max_discrepancy", v.max_discrepancy}},
        v.tolerance);
  os << name << ": " << (v.pass ? "pass" : "FAIL") << " (" << v.samples << " samples, " << v.queries_checked
     << " queries, " << v.target_failures << " target / " << v.query_failures << " query failures, max discrepancy "
     << v.max_discrepancy << ")\n";
  for (const auto& f : v.failures) os << "  " << f << '\n';
}

// --- integrate --------------------------------------------------------------------

struct IntegrateOpts {
  std::vector<std::string> interval, from{"0", "1"}, to;
  std::string function, n = "1024", points, stages = "1,2,3,8,64";
  std::int64_t adversary_n = 8;
  std::size_t samples = 100, queries = 20;
};

RunReport integrate_tower(Context&, const IntegrateOpts& o, std::vector<integration::Function> fs) {
  using namespace integration;
  RunReport r;
  const Interval i(rat(o.interval.at(0), "interval"), rat(o.interval.at(1), "interval"));
  const auto ns = ints(o.n, "--n");
  r.parameters = Json{{"interval", i.to_string()}, {"n", ns}};
  if (!o.function.empty()) r.parameters["function"] = o.function;
  const IntegrationProblem p(i, fs);
  std::ostringstream os;
  os << "rectangle tower on " << i.to_string() << '\n';
  Json rows = Json::array();
  for (const auto& f : fs) {
    const Real exact = f.integral(i.a, i.b);
    const auto in = make_input(f);
    for (const auto n : ns) {
      if (n < 1) usage("--n must be positive");
      const Tower t = i.degenerate() ? degenerate_algorithm(i.a) : rectangle_tower(i);
      const Point v = evaluate_tower(t, i.degenerate() ? MultiIndex{} : MultiIndex{n}, p, *in);
      const double err = abs_diff(v.real(), exact);
      const Rational bound = f.lipschitz(i.a, i.b) * i.length() * i.length() / (2 * n);
      const bool pass = v.real().is_exact() && exact.is_exact()
                            ? abs_of(v.real().exact() - exact.exact()) <= bound
                            : err <= to_double(bound) + 1e-12;
      rows.push_back(Json{{"function", f.describe()}, {"n", n}, {"value", to_json(v)},
                          {"exact", to_json(Point(exact))}, {"error", err}, {"bound", exact_json(bound)}});
      check(r, "error_bound " + f.describe() + " n=" + std::to_string(n), pass, err, to_double(bound));
      os << "  " << f.describe() << "  n=" << n << "  value=" << v.to_string() << "  exact=" << exact.to_string()
         << "  |err|=" << err << "  bound=" << to_string(bound) << '\n';
    }
  }
  r.result["stages"] = rows;
  r.text = os.str();
  return r;
}

RunReport integrate_adversary(Context&, const IntegrateOpts& o) {
  using namespace integration;
  RunReport r;
  GeneralAlgorithm alg;
  if (!o.points.empty()) {
    std::vector<QueryId> qs;
    for (const auto& x : rats(o.points, "--points")) {
      if (x < 0 || x > 1) usage("--points must lie in [0,1]");
      qs.push_back(ev(x));
    }
    alg = fixed_query_algorithm("points", qs, [](std::span<const Value> v) {
      Real s = 0;
      for (const auto& z : v) s = s + z.re;
      return Point(s * Real(Rational(1, static_cast<long>(v.size()))));
    });
    r.parameters["points"] = o.points;
  } else {
    if (o.adversary_n < 1) usage("--n must be positive");
    alg = rectangle_tower(Interval(0, 1)).stage({o.adversary_n});
    r.parameters["n"] = o.adversary_n;
  }
  const auto out = adversary_demo(alg);
  const Function h = out.gadget.function();
  bool vanishes = true;
  Json qs = Json::array();
  for (const auto& x : out.queried) {
    qs.push_back(to_string(x));
    vanishes = vanishes && identical(h(x), Real(0));
  }
  const Real area = h.integral(0, 1);
  r.result = Json{{"queried", qs},
                  {"bump", Json{{"u", to_string(out.gadget.u)}, {"v", to_string(out.gadget.v)}}},
                  {"integral", to_string(out.gadget.integral())},
                  {"output_on_zero", to_json(out.output_on_zero)},
                  {"output_on_bump", to_json(out.output_on_bump)},
                  {"identical_runs", out.identical_runs},
                  {"target_gap", to_string(out.target_gap)}};
  check(r, "bump vanishes at every query", vanishes);
  check(r, "bump integral is (v-u)/2 > 0", area.is_exact() && area.exact() == out.gadget.integral() && area.exact() > 0,
        area.to_string());
  check(r, "identical runs on 0 and h", out.identical_runs);
  check(r, "targets differ", out.target_gap > 0, to_string(out.target_gap));
  std::ostringstream os;
  os << "protocol " << alg.name << " asked " << out.queried.size() << " queries\n"
     << "bump on [" << to_string(out.gadget.u) << ", " << to_string(out.gadget.v) << "], integral "
     << to_string(out.gadget.integral()) << '\n'
     << "output on 0: " << out.output_on_zero.to_string() << ", output on h: " << out.output_on_bump.to_string()
     << '\n';
  r.text = os.str();
  return r;
}

RunReport integrate_reduce(Context& ctx, const IntegrateOpts& o) {
  using namespace integration;
  RunReport r;
  const Interval from(rat(o.from.at(0), "--from"), rat(o.from.at(1), "--from"));
  const Interval to(rat(o.to.at(0), "--to"), rat(o.to.at(1), "--to"));
  const auto red = interval_affine_reduction(from, to);
  r.parameters = Json{{"from", from.to_string()}, {"to", to.to_string()}, {"samples", o.samples}, {"queries", o.queries}};
  std::ostringstream os;
  const auto v = verify_reduction(red, verify_options(ctx, o.samples, o.queries));
  add_verification(r, "verify " + red.name, v, os);
  const auto pulled = pullback_tower(red, rectangle_tower(to));
  const auto native = rectangle_tower(from);
  const IntegrationProblem p(from, functions_for(ctx, from));
  double worst = 0;
  bool identical_all = true;
  for (const auto n : ints(o.stages, "--stages")) {
    for (const auto& in : p.catalog()) {
      const Point a = evaluate_tower(pulled, {n}, p, *in);
      const Point b = evaluate_tower(native, {n}, p, *in);
      worst = std::max(worst, abs_diff(a.real(), b.real()));
      identical_all = identical_all && close(a.real(), b.real(), 1e-12);
    }
  }
  check(r, "pullback equals native tower", identical_all, worst, 1e-12);
  os << "pulled-back tower vs native tower on " << from.to_string() << ": max difference " << worst << '\n';
  r.result = Json{{"verification", to_json(v)}, {"reduction", reduction_to_json(red)}, {"pullback_max_difference", worst}};
  r.text = os.str();
  return r;
}

// --- spectral ---------------------------------------------------------------------

struct SpectralOpts {
  std::vector<std::string> domain;
  std::string op, window, stage, stabilizer;
  std::size_t samples = 100, queries = 20;
};

std::optional<spectral::Domain> domain_of(const SpectralOpts& o) {
  if (o.domain.empty()) return std::nullopt;
  return spectral::Domain(rat(o.domain.at(0), "--domain"), rat(o.domain.at(1), "--domain"));
}

spectral::DiagonalSpec diagonal_arg(const std::string& s) {
  try {
    return spectral::parse_diagonal(s);
  } catch (const Error& e) {
    usage(std::string("bad operator: ") + e.what());
  }
}

RunReport spectral_decide(Context& ctx, const SpectralOpts& o) {
  using namespace spectral;
  RunReport r;
  std::vector<Pair> pairs;
  Domain dom(0, 1);
  if (!o.op.empty()) {
    if (o.window.empty()) usage("--operator needs --window");
    dom = domain_of(o).value_or(Domain(0, 1));
    pairs.emplace_back(diagonal_arg(o.op), rat(o.window, "--window"));
  } else {
    const auto& e = spectral_entry(ctx, domain_of(o));
    dom = e.domain;
    pairs = e.pairs;
  }
  r.parameters = Json{{"domain", dom.to_string()}, {"pairs", pairs.size()}};
  if (!o.stage.empty()) r.parameters["stage"] = o.stage;
  const auto p = source_problem(dom, pairs);
  const auto t = decision_tower(dom);
  std::ostringstream os;
  Json rows = Json::array();
  std::size_t agree = 0, dyadic_ok = 0, dyadic_total = 0;
  for (const auto& [a, z] : pairs) {
    const SourceInput in(a, Window(z, dom));
    MultiIndex stage;
    if (!o.stage.empty()) {
      const auto s = ints(o.stage, "--stage");
      if (s.size() != 2) usage("--stage takes N2,N1");
      stage = {s[0], s[1]};
    } else {
      stage = stabilization_stage(a, z);
    }
    const int truth = exact_decision_oracle(a, in.window());
    const Point v = evaluate_tower(t, stage, *p, in);
    const bool ok = identical(v, Point(truth));
    agree += ok;
    for (int n = 1; n <= 20; ++n) {
      ++dyadic_total;
      dyadic_ok += abs_of(window_approximant(z, n).r - z) < pow2(-(n + 2));
    }
    rows.push_back(Json{{"operator", a.describe()}, {"window", to_string(z)}, {"stage", stage},
                        {"tower", to_json(v)}, {"oracle", truth}});
    os << "  " << in.describe() << "  stage=" << to_string(stage) << "  tower=" << v.to_string()
       << "  oracle=" << truth << (ok ? "" : "  MISMATCH") << '\n';
  }
  check(r, "tower agrees with oracle", agree == pairs.size(), Json{{"agree", agree}, {"total", pairs.size()}});
  check(r, "dyadic bound |r_n - z| < 2^-(n+2), n <= 20", dyadic_ok == dyadic_total,
        Json{{"holds", dyadic_ok}, {"total", dyadic_total}});
  r.result["pairs"] = rows;
  r.text = "decision tower on " + dom.to_string() + "\n" + os.str();
  return r;
}

std::vector<spectral::DiagonalSpec> stabilizers_for(Context& ctx, const SpectralOpts& o, const SpectralEntry& e) {
  if (!o.stabilizer.empty()) return {diagonal_arg(o.stabilizer)};
  if (e.stabilizers.empty()) throw Error(Errc::CatalogError, "catalog spectral entry has no stabilizers");
  (void)ctx;
  return e.stabilizers;
}

RunReport spectral_stabilize(Context& ctx, const SpectralOpts& o) {
  using namespace spectral;
  RunReport r;
  const auto& e = spectral_entry(ctx, domain_of(o));
  const auto bs = stabilizers_for(ctx, o, e);
  r.parameters = Json{{"domain", e.domain.to_string()}, {"pairs", e.pairs.size()}, {"stabilizers", bs.size()}};
  const auto src = source_problem(e.domain, e.pairs);
  std::ostringstream os;
  Json rows = Json::array();
  std::size_t combos = 0, agree = 0;
  for (const auto& b : bs) {
    const auto cert = certify_stabilizer(b, e.domain);
    const auto stab = stabilized_problem(e.domain, cert, e.pairs);
    std::size_t local = 0;
    for (const auto& [a, z] : e.pairs) {
      const Window w(z, e.domain);
      const bool same = identical(stab->target(StabilizedInput(a, b, w)), src->target(SourceInput(a, w)));
      local += same;
      ++combos;
    }
    agree += local;
    rows.push_back(Json{{"stabilizer", b.describe()}, {"margin", to_string(cert.margin)}, {"agree", local},
                        {"total", e.pairs.size()}});
    os << "  B=" << b.describe() << "  margin=" << to_string(cert.margin) << "  agree " << local << "/"
       << e.pairs.size() << '\n';
  }
  check(r, "stabilized target equals source target", agree == combos, Json{{"agree", agree}, {"total", combos}});
  r.result["stabilizers"] = rows;
  r.text = "block-diagonal stabilization on " + e.domain.to_string() + "\n" + os.str();
  return r;
}

RunReport spectral_reduce(Context& ctx, const SpectralOpts& o) {
  using namespace spectral;
  RunReport r;
  const auto& e = spectral_entry(ctx, domain_of(o));
  const auto bs = stabilizers_for(ctx, o, e);
  r.parameters = Json{{"domain", e.domain.to_string()}, {"samples", o.samples}, {"queries", o.queries}};
  const auto src = source_problem(e.domain, e.pairs);
  std::ostringstream os;
  Json rows = Json::array();
  for (const auto& b : bs) {
    const auto stab = stabilized_problem(e.domain, certify_stabilizer(b, e.domain), e.pairs);
    const auto [fwd, bwd] = stabilization_reductions(src, stab);
    const auto vf = verify_reduction(fwd, verify_options(ctx, o.samples, o.queries));
    const auto vb = verify_reduction(bwd, verify_options(ctx, o.samples, o.queries));
    add_verification(r, "verify " + fwd.name, vf, os);
    add_verification(r, "verify " + bwd.name, vb, os);
    bool round_trip = true;
    for (const auto& in : src->catalog()) round_trip = round_trip && bwd.encoder(fwd.encoder(in))->describe() == in->describe();
    check(r, "encoder round trip " + b.describe(), round_trip);
    const auto pulled = pullback_tower(bwd, decision_tower(e.domain));
    std::size_t decided = 0;
    for (const auto& [a, z] : e.pairs) {
      const StabilizedInput in(a, b, Window(z, e.domain));
      decided += identical(evaluate_tower(pulled, stabilization_stage(a, z), *stab, in), stab->target(in));
    }
    check(r, "pulled-back tower decides " + stab->id(), decided == e.pairs.size(),
          Json{{"agree", decided}, {"total", e.pairs.size()}});
    os << "pulled-back decision tower on " << stab->id() << ": " << decided << "/" << e.pairs.size() << '\n';
    rows.push_back(Json{{"stabilizer", b.describe()},
                        {"forward", Json{{"spec", reduction_to_json(fwd)}, {"verification", to_json(vf)}}},
                        {"backward", Json{{"spec", reduction_to_json(bwd)}, {"verification", to_json(vb)}}}});
  }
  r.result["reductions"] = rows;
  r.text = os.str();
  return r;
}

// --- koopman ----------------------------------------------------------------------

struct KoopmanOpts {
  std::string map, weights, target = "ap";
  int n = 0;
  double epsilon = 0.1, grid = 0.025;
};

RunReport koopman_finite(Context&, const KoopmanOpts& o) {
  using namespace koopman;
  RunReport r;
  Target target;
  if (o.target == "ap") {
    target.kind = Target::Kind::Ap;
  } else if (o.target == "apeps") {
    target.kind = Target::Kind::ApEps;
    target.eps = o.epsilon;
    const double extent = std::ceil((1 + o.epsilon) / o.grid + 2) * o.grid;
    target.grid = Grid{-extent, extent, -extent, extent, o.grid};
  } else {
    usage("--target must be ap or apeps");
  }
  std::vector<MapTable> maps;
  int n = o.n;
  if (!o.map.empty()) {
    MapTable t;
    for (const auto v : ints(o.map, "--map")) t.push_back(static_cast<int>(v));
    n = static_cast<int>(t.size());
    maps.push_back(t);
  } else {
    if (n < 1) n = 3;
    if (n > 5) usage("exhaustive mode supports N <= 5");
    maps = all_maps(n);
  }
  std::vector<Rational> w = rats(o.weights, "--weights");
  FiniteSpace space = [&] {
    try {
      return FiniteSpace(n, w);
    } catch (const Error& e) {
      usage(e.what());
    }
  }();
  r.parameters = Json{{"N", n}, {"target", target.to_string()}, {"maps", maps.size()}};
  if (!o.weights.empty()) r.parameters["weights"] = o.weights;
  auto p = std::make_shared<const KoopmanProblem>(space, target, maps);
  const auto t = height0_algorithm(p);
  std::ostringstream os;
  std::size_t matched = 0, exact_count = 0;
  double worst = 0;
  Json rows = Json::array();
  for (const auto& in : p->catalog()) {
    const auto run = run_algorithm(t.stage({}), *p, *in);
    const double d = hausdorff(run.output.set(), p->target(*in).set());
    worst = std::max(worst, d);
    matched += d == 0.0;
    exact_count += run.trace.size() == static_cast<std::size_t>(n);
    if (maps.size() <= 16) {
      rows.push_back(Json{{"map", input_as<MapInput>(*in).table()}, {"output", to_json(run.output)},
                          {"queries", run.trace.size()}});
      os << "  " << in->describe() << "  queries=" << run.trace.size() << "  " << run.output.to_string() << '\n';
    }
  }
  check(r, "height-0 algorithm reproduces the target", matched == maps.size(), worst, 0.0);
  check(r, "exactly N queries per run", exact_count == maps.size(), Json{{"runs", exact_count}, {"total", maps.size()}});
  r.result = Json{{"runs", rows}, {"max_hausdorff", worst}};
  r.text = "Koopman " + target.to_string() + " on N=" + std::to_string(n) + ", " + std::to_string(maps.size()) +
           " maps\n" + os.str();
  return r;
}

// --- family / certify -------------------------------------------------------------

RunReport family_classify(const std::string& heights, int k) {
  RunReport r;
  std::vector<int> hs;
  for (const auto h : ints(heights, "--heights")) {
    if (h < 0) usage("heights are nonnegative");
    hs.push_back(static_cast<int>(h));
  }
  if (k < 0) usage("--k is nonnegative");
  const auto v = classify_heights(hs, k);
  r.parameters = Json{{"heights", hs}, {"k", k}};
  r.result = to_json(v);
  check(r, "witness-sharp iff worst-case exact", v.witness_sharp == v.worst_case_exact);
  r.text = "k=" + std::to_string(k) + "  (pointwise, witness, worst-case) = " + v.to_string() + "\n";
  return r;
}

struct PackageData {
  HeightCertificate source;
  int k = 0;
  std::vector<std::string> members;
  std::vector<VerifiedReduction> reductions;
  std::vector<HeightCertificate> upper_bounds;
};

PackageData interval_package(Context& ctx, std::size_t samples) {
  PackageData d{integration::unit_interval_certificate(), 1, {}, {}, {}};
  for (const auto& e : ctx.catalog().integration) {
    if (e.degenerate) continue;
    const auto p = integration::make_problem(e.interval);
    d.members.push_back(p->id());
    d.reductions.push_back(verified(integration::affine_reduction(e.interval), verify_options(ctx, samples, 20)));
    d.upper_bounds.push_back(tower_witness(p->id(), integration::rectangle_tower(e.interval)));
  }
  return d;
}

PackageData spectral_package(Context& ctx, std::size_t samples) {
  const auto& e = spectral_entry(ctx, std::nullopt);
  PackageData d{spectral::source_certificate(e.domain), 2, {}, {}, {}};
  const auto src = spectral::source_problem(e.domain, e.pairs);
  for (const auto& b : e.stabilizers) {
    const auto stab = spectral::stabilized_problem(e.domain, spectral::certify_stabilizer(b, e.domain), e.pairs);
    const auto [fwd, bwd] = spectral::stabilization_reductions(src, stab);
    d.members.push_back(stab->id());
    d.reductions.push_back(verified(fwd, verify_options(ctx, samples, 20)));
    d.upper_bounds.push_back(tower_witness(stab->id(), pullback_tower(bwd, spectral::decision_tower(e.domain))));
  }
  return d;
}

void report_package(RunReport& r, const PackageResult& res, int k, std::ostringstream& os) {
  Json members = Json::array();
  for (const auto& m : res.members) {
    members.push_back(to_json(m));
    check(r, "exact height " + std::to_string(k) + " for " + m.problem, m.interval.exact() && m.interval.lb == k,
          m.interval.to_string(), k);
    os << render(m);
  }
  r.result["members"] = members;
  r.result["verdict"] = to_json(res.verdict);
  os << "verdict at k=" << k << ": " << res.verdict.to_string() << '\n';
}

RunReport certify_package(Context& ctx, const std::string& family, const std::string& drop, std::size_t samples) {
  RunReport r;
  PackageData d;
  if (family == "interval")
    d = interval_package(ctx, samples);
  else if (family == "spectral")
    d = spectral_package(ctx, samples);
  else
    usage("--family must be interval or spectral");
  if (d.members.empty()) throw Error(Errc::CatalogError, "catalog has no members for family " + family);
  r.parameters = Json{{"family", family}, {"drop", drop}, {"samples", samples}};
  std::optional<Clause> dropped;
  if (drop == "C1") {
    d.source = recorded_fact(d.source.problem, d.k, std::nullopt, "lower bound only");
    dropped = Clause::C1;
  } else if (drop == "C2") {
    d.reductions.pop_back();
    dropped = Clause::C2;
  } else if (drop == "C3") {
    d.upper_bounds.pop_back();
    dropped = Clause::C3;
  } else if (drop != "none") {
    usage("--drop must be none, C1, C2 or C3");
  }
  std::ostringstream os;
  try {
    const auto res = sufficiency_package(d.source, d.k, d.members, d.reductions, d.upper_bounds);
    report_package(r, res, d.k, os);
    if (dropped) check(r, "dropped clause is reported", false, "no error");
  } catch (const MissingClauseError& e) {
    r.result["missing_clause"] = std::string(to_string(e.clause()));
    r.result["message"] = e.what();
    check(r, "dropped clause is reported", dropped && *dropped == e.clause(), std::string(to_string(e.clause())),
          dropped ? Json(std::string(to_string(*dropped))) : Json(nullptr));
    os << "MissingClause " << to_string(e.clause()) << ": " << e.what() << '\n';
  }
  r.text = os.str();
  return r;
}

RunReport certify_saturate(Context& ctx, std::size_t samples) {
  using integration::Interval;
  RunReport r;
  const auto unit = integration::unit_interval_certificate();
  // A second exact basis element: [0,2], certified by the package itself.
  const Interval two(0, 2);
  const auto two_id = integration::make_problem(two)->id();
  const auto pkg = sufficiency_package(
      unit, 1, std::vector<std::string>{two_id},
      std::vector<VerifiedReduction>{verified(integration::affine_reduction(two), verify_options(ctx, samples, 20))},
      std::vector<HeightCertificate>{tower_witness(two_id, integration::rectangle_tower(two))});
  const std::vector<HeightCertificate> basis{unit, pkg.members.front()};
  std::vector<std::string> members;
  std::map<std::string, std::string> assignment;
  std::vector<VerifiedReduction> reductions;
  std::vector<HeightCertificate> ubs;
  std::size_t idx = 0;
  for (const auto& e : ctx.catalog().integration) {
    if (e.degenerate) continue;
    const auto id = integration::make_problem(e.interval)->id();
    const bool via_two = idx++ % 2 == 1;
    members.push_back(id);
    assignment[id] = via_two ? two_id : unit.problem;
    reductions.push_back(verified(via_two ? integration::interval_affine_reduction(two, e.interval)
                                          : integration::affine_reduction(e.interval),
                                  verify_options(ctx, samples, 20)));
    ubs.push_back(tower_witness(id, integration::rectangle_tower(e.interval)));
  }
  r.parameters = Json{{"basis", Json::array({unit.problem, two_id})}, {"samples", samples}};
  std::ostringstream os;
  const auto res = transport_saturation(basis, 1, members, assignment, reductions, ubs);
  Json assign = Json::object();
  for (const auto& [m, b] : assignment) assign[m] = b;
  r.result["assignment"] = assign;
  report_package(r, res, 1, os);
  r.text = os.str();
  return r;
}

// --- degrees ----------------------------------------------------------------------

RunReport degrees_join_meet(Context& ctx, bool join, const std::string& left, const std::string& right,
                            std::size_t samples) {
  RunReport r;
  const auto p0 = problem_from_id(left);
  const auto p1 = problem_from_id(right);
  r.parameters = Json{{"left", p0->id()}, {"right", p1->id()}, {"samples", samples}};
  std::ostringstream os;
  const auto opts = verify_options(ctx, samples, 20);
  if (join) {
    const auto j = lattice::upper_bound_join(p0, p1);
    os << "upper bound " << j.upper->id() << '\n';
    const auto v0 = verify_reduction(j.from0, opts);
    const auto v1 = verify_reduction(j.from1, opts);
    add_verification(r, "verify " + j.from0.name, v0, os);
    add_verification(r, "verify " + j.from1.name, v1, os);
    r.result = Json{{"upper", j.upper->id()},
                    {"from0", Json{{"spec", reduction_to_json(j.from0)}, {"verification", to_json(v0)}}},
                    {"from1", Json{{"spec", reduction_to_json(j.from1)}, {"verification", to_json(v1)}}}};
  } else {
    const auto m = lattice::lower_bound_meet(p0, p1);
    os << "lower bound " << m.lower->id() << '\n';
    const auto v0 = verify_reduction(m.to0, opts);
    const auto v1 = verify_reduction(m.to1, opts);
    add_verification(r, "verify " + m.to0.name, v0, os);
    add_verification(r, "verify " + m.to1.name, v1, os);
    r.result = Json{{"lower", m.lower->id()},
                    {"to0", Json{{"spec", reduction_to_json(m.to0)}, {"verification", to_json(v0)}}},
                    {"to1", Json{{"spec", reduction_to_json(m.to1)}, {"verification", to_json(v1)}}}};
  }
  r.text = os.str();
  return r;
}

RunReport degrees_counterexample(const std::string& cls) {
  RunReport r;
  DecoderClass c;
  try {
    c = parse_decoder_class(cls);
  } catch (const Error&) {
    usage("--class must be cont, bor or id");
  }
  const auto rep = lattice::counterexample_demo(c);
  r.parameters = Json{{"class", std::string(to_string(c))}};
  std::ostringstream os;
  os << "decoder class " << to_string(c) << ": " << rep.verdict << '\n';
  Json steps = Json::array();
  for (const auto& s : rep.steps) {
    steps.push_back(Json{{"claim", s.claim}, {"holds", s.holds}, {"detail", s.detail}});
    check(r, s.claim, s.holds, s.detail);
    os << "  [checked] " << s.claim << ": " << s.detail << '\n';
  }
  for (const auto& a : rep.recorded_argument) os << "  [recorded] " << a << '\n';
  r.result = Json{{"verdict", rep.verdict}, {"steps", steps}, {"recorded_argument", rep.recorded_argument}};
  r.text = os.str();
  return r;
}

// --- reduce -----------------------------------------------------------------------

std::optional<Tower> native_tower(const ProblemPtr& p) {
  if (const auto* ip = dynamic_cast<const integration::IntegrationProblem*>(p.get())) {
    const auto& i = ip->interval();
    return i.degenerate() ? integration::degenerate_algorithm(i.a) : integration::rectangle_tower(i);
  }
  if (const auto* sp = dynamic_cast<const spectral::SourceProblem*>(p.get()))
    return spectral::decision_tower(sp->domain());
  return std::nullopt;
}

RunReport reduce_verify(Context& ctx, const std::string& spec, std::size_t samples, std::size_t queries, double tol) {
  RunReport r;
  const auto red = reduction_from_json(read_spec(spec));
  r.parameters = Json{{"reduction", red.name}, {"samples", samples}, {"queries", queries}, {"tol", tol}};
  std::ostringstream os;
  const auto v = verify_reduction(red, verify_options(ctx, samples, queries, tol));
  add_verification(r, "verify " + red.name, v, os);
  r.result = Json{{"spec", reduction_to_json(red)}, {"verification", to_json(v)}};
  r.text = os.str();
  return r;
}

RunReport reduce_compose(Context& ctx, const std::string& first, const std::string& second, std::size_t samples) {
  RunReport r;
  const auto a = reduction_from_json(read_spec(first));
  const auto b = reduction_from_json(read_spec(second));
  const auto c = compose(a, b);
  r.parameters = Json{{"first", a.name}, {"second", b.name}, {"samples", samples}};
  std::ostringstream os;
  const auto opts = verify_options(ctx, samples, 20);
  add_verification(r, "verify " + a.name, verify_reduction(a, opts), os);
  add_verification(r, "verify " + b.name, verify_reduction(b, opts), os);
  const auto v = verify_reduction(c, opts);
  add_verification(r, "verify " + c.name, v, os);
  std::mt19937_64 rng(ctx.seed);
  std::size_t width_ok = 0, width_total = 0;
  for (const auto& q : c.target->sample_queries(rng, 50)) {
    const auto outer = b.plan.rule(q);
    if (!outer) continue;
    std::size_t sum = 0;
    for (const auto& g : outer->sources) sum += a.width(g);
    ++width_total;
    width_ok += c.width(q) == sum;
  }
  check(r, "composed width is the sum of inner widths", width_ok == width_total,
        Json{{"agree", width_ok}, {"total", width_total}});
  os << "composed plan widths: " << width_ok << "/" << width_total << " match\n";
  r.result = Json{{"spec", reduction_to_json(c)}, {"verification", to_json(v)}};
  r.text = os.str();
  return r;
}

RunReport reduce_pullback(Context&, const std::string& spec, const std::string& stages) {
  RunReport r;
  const auto red = reduction_from_json(read_spec(spec));
  const auto t = native_tower(red.target);
  if (!t) usage("no native tower for " + red.target->id());
  std::vector<MultiIndex> idx;
  if (!stages.empty()) {
    for (const auto& s : split(stages, ',')) {
      MultiIndex m;
      for (const auto& part : split(s, ':')) m.push_back(ints(part, "--stages").front());
      idx.push_back(m);
    }
  } else if (t->height == 0) {
    idx.push_back({});
  } else if (t->height == 1) {
    idx = {{1}, {4}, {16}, {64}};
  } else {
    idx = {{4, 16}, {8, 64}, {12, 256}};
  }
  r.parameters = Json{{"reduction", red.name}, {"tower", t->name}, {"stages", idx}};
  const auto pulled = pullback_tower(red, *t);
  std::ostringstream os;
  Json rows = Json::array();
  std::size_t same = 0, total = 0;
  for (const auto& m : idx) {
    if (static_cast<int>(m.size()) != t->height) usage("stage arity must be " + std::to_string(t->height));
    double worst = 0;
    for (const auto& in : red.source->catalog()) {
      const Point a = evaluate_tower(pulled, m, *red.source, *in);
      const Point b = red.decoder.map(evaluate_tower(*t, m, *red.target, *red.encoder(in)));
      ++total;
      const bool eq = identical(a, b) || red.source->output_space().distance(a, b) <= 1e-12;
      same += eq;
      worst = std::max(worst, red.source->output_space().distance(a, red.source->target(*in)));
    }
    rows.push_back(Json{{"stage", m}, {"max_distance_to_target", worst}});
    os << "  stage " << to_string(m) << ": max distance to source target " << worst << '\n';
  }
  check(r, "pulled-back tower simulates the target tower", same == total, Json{{"agree", same}, {"total", total}});
  r.result = Json{{"stages", rows}};
  r.text = "pullback of " + t->name + " along " + red.name + "\n" + os.str();
  return r;
}

}  // namespace

RunReport dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Finite-query reductions and SCI height certificates", "sci_workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  std::string catalog_path;
  app.add_flag("--json", json, "Emit a versioned JSON report");
  app.add_option("--catalog", catalog_path, "Catalog JSON (default: shipped catalog)");

  Context ctx;
  std::string command;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* sub = parent->add_subcommand(name, help);
    sub->callback([&command, parent, name] { command = parent->get_name() + " " + name; });
    return sub;
  };

  // integrate
  IntegrateOpts io;
  auto* integrate = app.add_subcommand("integrate", "Quadrature on compact intervals")->require_subcommand(1);
  auto* it = leaf(integrate, "tower", "Rectangle tower stages with the error bound");
  it->add_option("--interval", io.interval)->expected(2)->required();
  it->add_option("--function", io.function);
  it->add_option("--n", io.n);
  auto* ia = leaf(integrate, "adversary", "Bump adversary against a finite-query protocol");
  ia->add_option("--points", io.points);
  ia->add_option("--n", io.adversary_n);
  auto* ir = leaf(integrate, "reduce", "Affine interval reduction");
  ir->add_option("--from", io.from)->expected(2);
  ir->add_option("--to", io.to)->expected(2)->required();
  ir->add_option("--samples", io.samples);
  ir->add_option("--queries", io.queries);
  ir->add_option("--stages", io.stages);

  // spectral
  SpectralOpts so;
  auto* spec = app.add_subcommand("spectral", "Singleton-window spectral decision")->require_subcommand(1);
  auto* sd = leaf(spec, "decide", "Decision tower against the exact oracle");
  auto* ss = leaf(spec, "stabilize", "Target invariance under block-diagonal stabilization");
  auto* sr = leaf(spec, "reduce", "Stabilization reductions both ways");
  for (auto* s : {sd, ss, sr}) s->add_option("--domain", so.domain)->expected(2);
  sd->add_option("--operator", so.op);
  sd->add_option("--window", so.window);
  sd->add_option("--stage", so.stage);
  for (auto* s : {ss, sr}) s->add_option("--stabilizer", so.stabilizer);
  sr->add_option("--samples", so.samples);
  sr->add_option("--queries", so.queries);

  // koopman
  KoopmanOpts ko;
  auto* koop = app.add_subcommand("koopman", "Koopman operators on finite spaces")->require_subcommand(1);
  auto* kf = leaf(koop, "finite", "Height-0 computation of sigma_ap or sigma_ap,eps");
  kf->add_option("--map", ko.map);
  kf->add_option("--weights", ko.weights);
  kf->add_option("--n", ko.n);
  kf->add_option("--target", ko.target);
  kf->add_option("--epsilon", ko.epsilon);
  kf->add_option("--grid", ko.grid);

  // family
  std::string heights;
  int k = 0;
  auto* fam = app.add_subcommand("family", "Family-level sharpness")->require_subcommand(1);
  auto* fc = leaf(fam, "classify", "Three sharpness notions from exact heights");
  fc->add_option("--heights", heights)->required();
  fc->add_option("--k", k)->required();

  // certify
  std::string family = "interval", drop = "none";
  std::size_t cert_samples = 30;
  auto* cert = app.add_subcommand("certify", "Certificate inference")->require_subcommand(1);
  auto* cp = leaf(cert, "package", "Sufficiency package (C1)-(C3)");
  cp->add_option("--family", family);
  cp->add_option("--drop", drop);
  auto* cs = leaf(cert, "saturate", "Transport saturation over a two-element basis");
  for (auto* s : {cp, cs}) s->add_option("--samples", cert_samples);

  // degrees
  std::string left = "integrate[0,1]", right = "spectral-source[0,1]", cls;
  std::size_t deg_samples = 30;
  auto* deg = app.add_subcommand("degrees", "Transport-degree constructions")->require_subcommand(1);
  auto* dj = leaf(deg, "join", "Tagged-union upper bound");
  auto* dm = leaf(deg, "meet", "Singleton lower bound");
  for (auto* s : {dj, dm}) {
    s->add_option("--left", left);
    s->add_option("--right", right);
    s->add_option("--samples", deg_samples);
  }
  auto* dc = leaf(deg, "counterexample", "Non-lattice counterexample");
  dc->add_option("--class", cls)->required();

  // reduce
  std::string spec_a, spec_b, stages;
  std::size_t red_samples = 100, red_queries = 20;
  double tol = 1e-9;
  auto* red = app.add_subcommand("reduce", "Reduction specifications")->require_subcommand(1);
  auto* rv = leaf(red, "verify", "Verify a reduction spec");
  rv->add_option("--spec", spec_a)->required();
  rv->add_option("--samples", red_samples);
  rv->add_option("--queries", red_queries);
  rv->add_option("--tol", tol);
  auto* rc = leaf(red, "compose", "Compose two reduction specs");
  rc->add_option("--first", spec_a)->required();
  rc->add_option("--second", spec_b)->required();
  rc->add_option("--samples", red_samples);
  auto* rp = leaf(red, "pullback", "Pull back the target's tower");
  rp->add_option("--spec", spec_a)->required();
  rp->add_option("--stages", stages);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    RunReport h;
    h.command = "help";
    h.text = grammar();
    return h;
  } catch (const CLI::ParseError& e) {
    usage(e.what());
  }

  ctx.seed = seed_from_env();
  ctx.catalog_path = catalog_path;
  RunReport report;
  if (command == "integrate tower") {
    std::vector<integration::Function> fs;
    if (!io.function.empty()) {
      try {
        fs.push_back(integration::parse_function(io.function));
      } catch (const Error& e) {
        usage(std::string("bad function: ") + e.what());
      }
    } else {
      fs = functions_for(ctx, integration::Interval(rat(io.interval.at(0), "interval"), rat(io.interval.at(1), "interval")));
    }
    report = integrate_tower(ctx, io, fs);
  } else if (command == "integrate adversary") {
    report = integrate_adversary(ctx, io);
  } else if (command == "integrate reduce") {
    report = integrate_reduce(ctx, io);
  } else if (command == "spectral decide") {
    report = spectral_decide(ctx, so);
  } else if (command == "spectral stabilize") {
    report = spectral_stabilize(ctx, so);
  } else if (command == "spectral reduce") {
    report = spectral_reduce(ctx, so);
  } else if (command == "koopman finite") {
    report = koopman_finite(ctx, ko);
  } else if (command == "family classify") {
    report = family_classify(heights, k);
  } else if (command == "certify package") {
    report = certify_package(ctx, family, drop, cert_samples);
  } else if (command == "certify saturate") {
    report = certify_saturate(ctx, cert_samples);
  } else if (command == "degrees join" || command == "degrees meet") {
    report = degrees_join_meet(ctx, command == "degrees join", left, right, deg_samples);
  } else if (command == "degrees counterexample") {
    report = degrees_counterexample(cls);
  } else if (command == "reduce verify") {
    report = reduce_verify(ctx, spec_a, red_samples, red_queries, tol);
  } else if (command == "reduce compose") {
    report = reduce_compose(ctx, spec_a, spec_b, red_samples);
  } else if (command == "reduce pullback") {
    report = reduce_pullback(ctx, spec_a, stages);
  } else {
    usage("unknown command");
  }
  report.command = command;
  report.seed = ctx.seed;
  report.json = json;
  if (!catalog_path.empty()) report.parameters["catalog"] = catalog_path;
  return report;
}

}  // namespace sciwb
