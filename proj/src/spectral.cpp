#include "sciwb/spectral.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <variant>

namespace sciwb::spectral {

Domain::Domain(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) throw Error(Errc::InvalidArgument, "domain [" + sciwb::to_string(lo) + "," + sciwb::to_string(hi) + "] has lo > hi");
}

std::string Domain::to_string() const { return "[" + sciwb::to_string(lo) + "," + sciwb::to_string(hi) + "]"; }

// --- DiagonalSpec -------------------------------------------------------------

namespace {

struct Finite {
  std::vector<Rational> head;
  Rational tail;
};
struct Linear {
  Rational offset, step;
};
struct Harmonic {
  Rational limit, scale;
};
struct Enumeration {
  Rational lo, hi;
  std::shared_ptr<const std::vector<Rational>> prefix;
};

constexpr std::size_t kEnumerationCache = 4096;

std::int64_t euler_phi(std::int64_t q) {
  std::int64_t count = 0;
  for (std::int64_t p = 1; p < q; ++p) count += std::gcd(p, q) == 1;
  return count;
}

// Affine coordinate p/q of the idx-th (0-based) enumerated rational.
Rational enumeration_coordinate(std::int64_t idx) {
  if (idx < 2) return idx;
  idx -= 2;
  for (std::int64_t q = 2;; ++q) {
    const std::int64_t count = euler_phi(q);
    if (idx >= count) {
      idx -= count;
      continue;
    }
    for (std::int64_t p = 1; p < q; ++p)
      if (std::gcd(p, q) == 1 && idx-- == 0) return Rational(p, q);
  }
}

std::shared_ptr<const std::vector<Rational>> enumeration_prefix(const Rational& lo, const Rational& hi) {
  auto out = std::make_shared<std::vector<Rational>>();
  out->reserve(kEnumerationCache);
  out->push_back(lo);
  out->push_back(hi);
  for (std::int64_t q = 2; out->size() < kEnumerationCache; ++q)
    for (std::int64_t p = 1; p < q && out->size() < kEnumerationCache; ++p)
      if (std::gcd(p, q) == 1) out->push_back(lo + (hi - lo) * Rational(p, q));
  return out;
}

std::string join(const std::vector<Rational>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + sciwb::to_string(xs[i]);
  return out;
}

Rational min_distance(const Rational& z, std::initializer_list<Rational> candidates) {
  Rational best = abs_of(Rational(*candidates.begin() - z));
  for (const auto& c : candidates) best = std::min(best, abs_of(Rational(c - z)));
  return best;
}

}  // namespace

struct DiagonalSpec::Node {
  std::variant<Finite, Linear, Harmonic, Enumeration, DiagonalSpec> body;
};

DiagonalSpec DiagonalSpec::finite_then_constant(std::vector<Rational> head, Rational tail) {
  return DiagonalSpec(std::make_shared<const Node>(Node{Finite{std::move(head), std::move(tail)}}));
}

DiagonalSpec DiagonalSpec::linear(Rational offset, Rational step) {
  return DiagonalSpec(std::make_shared<const Node>(Node{Linear{std::move(offset), std::move(step)}}));
}

DiagonalSpec DiagonalSpec::harmonic(Rational limit, Rational scale) {
  return DiagonalSpec(std::make_shared<const Node>(Node{Harmonic{std::move(limit), std::move(scale)}}));
}

DiagonalSpec DiagonalSpec::rational_enumeration(Rational lo, Rational hi) {
  if (!(lo < hi)) throw Error(Errc::InvalidArgument, "rational enumeration needs lo < hi");
  auto prefix = enumeration_prefix(lo, hi);
  return DiagonalSpec(std::make_shared<const Node>(Node{Enumeration{std::move(lo), std::move(hi), std::move(prefix)}}));
}

DiagonalSpec DiagonalSpec::opaque(DiagonalSpec inner) {
  return DiagonalSpec(std::make_shared<const Node>(Node{std::move(inner)}));
}

DiagonalSpec::Kind DiagonalSpec::kind() const { return static_cast<Kind>(node_->body.index()); }

Rational DiagonalSpec::entry(std::int64_t j) const {
  if (j < 1) throw Error(Errc::UnknownQuery, "diagonal index must be >= 1, got " + std::to_string(j));
  return std::visit(
      [&](const auto& n) -> Rational {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Finite>) {
          return static_cast<std::size_t>(j) <= n.head.size() ? n.head[static_cast<std::size_t>(j - 1)] : n.tail;
        } else if constexpr (std::is_same_v<T, Linear>) {
          return n.offset + n.step * Rational(j - 1);
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          return n.limit + n.scale / Rational(j);
        } else if constexpr (std::is_same_v<T, Enumeration>) {
          if (static_cast<std::size_t>(j) <= n.prefix->size()) return (*n.prefix)[static_cast<std::size_t>(j - 1)];
          return n.lo + (n.hi - n.lo) * enumeration_coordinate(j - 1);
        } else {
          return n.entry(j);
        }
      },
      node_->body);
}

Rational DiagonalSpec::distance_to(const Rational& z) const {
  return std::visit(
      [&](const auto& n) -> Rational {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Finite>) {
          Rational best = abs_of(Rational(n.tail - z));
          for (const auto& d : n.head) best = std::min(best, abs_of(Rational(d - z)));
          return best;
        } else if constexpr (std::is_same_v<T, Linear>) {
          if (n.step == 0) return abs_of(Rational(n.offset - z));
          const Rational t = (z - n.offset) / n.step;
          const Rational k0 = std::max(Rational(floor_of(t)), Rational(0));
          const Rational k1 = std::max(Rational(ceil_of(t)), Rational(0));
          return min_distance(z, {n.offset + n.step * k0, n.offset + n.step * k1});
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          Rational best = abs_of(Rational(n.limit - z));
          if (n.scale == 0) return best;
          best = std::min(best, abs_of(Rational(n.limit + n.scale - z)));
          if ((z - n.limit) / n.scale > 0) {
            const Rational t = n.scale / (z - n.limit);
            for (const Rational& j : {Rational(floor_of(t)), Rational(ceil_of(t))})
              if (j >= 1) best = std::min(best, abs_of(Rational(n.limit + n.scale / j - z)));
          }
          return best;
        } else if constexpr (std::is_same_v<T, Enumeration>) {
          return std::max({Rational(0), Rational(n.lo - z), Rational(z - n.hi)});
        } else {
          throw Error(Errc::UnsupportedKind, "no membership oracle for " + describe());
        }
      },
      node_->body);
}

bool DiagonalSpec::meets(const Rational& lo, const Rational& hi) const {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        auto inside = [&](const Rational& x) { return lo <= x && x <= hi; };
        if constexpr (std::is_same_v<T, Finite>) {
          return inside(n.tail) || std::any_of(n.head.begin(), n.head.end(), inside);
        } else if constexpr (std::is_same_v<T, Linear>) {
          if (n.step == 0) return inside(n.offset);
          if (n.step < 0) return linear(Rational(-n.offset), Rational(-n.step)).meets(Rational(-hi), Rational(-lo));
          const Rational k = std::max(Rational(ceil_of(Rational((lo - n.offset) / n.step))), Rational(0));
          return inside(Rational(n.offset + n.step * k));
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          if (inside(n.limit)) return true;
          if (n.scale == 0) return false;
          if (n.scale < 0) return harmonic(Rational(-n.limit), Rational(-n.scale)).meets(Rational(-hi), Rational(-lo));
          // Values decrease from limit + scale towards limit.
          if (n.limit > hi) return false;
          const Rational j = std::max(Rational(ceil_of(Rational(n.scale / (hi - n.limit)))), Rational(1));
          return inside(Rational(n.limit + n.scale / j));
        } else if constexpr (std::is_same_v<T, Enumeration>) {
          return !(n.hi < lo || hi < n.lo);
        } else {
          throw Error(Errc::UnsupportedKind, "no membership oracle for " + describe());
        }
      },
      node_->body);
}

std::optional<std::int64_t> DiagonalSpec::first_index_within(const Rational& z, const Rational& eps,
                                                             std::int64_t limit) const {
  if (const auto* f = std::get_if<Finite>(&node_->body)) {
    for (std::size_t j = 0; j < f->head.size(); ++j)
      if (abs_of(Rational(f->head[j] - z)) <= eps) return static_cast<std::int64_t>(j + 1);
    if (abs_of(Rational(f->tail - z)) <= eps) return static_cast<std::int64_t>(f->head.size() + 1);
    return std::nullopt;
  }
  for (std::int64_t j = 1; j <= limit; ++j)
    if (abs_of(Rational(entry(j) - z)) <= eps) return j;
  return std::nullopt;
}

std::string DiagonalSpec::describe() const {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Finite>) {
          return "finite:" + join(n.head) + "|" + sciwb::to_string(n.tail);
        } else if constexpr (std::is_same_v<T, Linear>) {
          return "linear:" + join({n.offset, n.step});
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          return "harmonic:" + join({n.limit, n.scale});
        } else if constexpr (std::is_same_v<T, Enumeration>) {
          return "enum:" + join({n.lo, n.hi});
        } else {
          return "opaque:" + n.describe();
        }
      },
      node_->body);
}

namespace {

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_rational(item));
  return out;
}

}  // namespace

DiagonalSpec parse_diagonal(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(Errc::InvalidArgument, "diagonal spec '" + text + "' lacks a kind prefix");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (kind == "opaque") return DiagonalSpec::opaque(parse_diagonal(rest));
  if (kind == "finite") {
    const auto bar = rest.find('|');
    if (bar == std::string::npos) throw Error(Errc::InvalidArgument, "finite spec needs '|<tail>'");
    return DiagonalSpec::finite_then_constant(parse_list(rest.substr(0, bar)), parse_rational(rest.substr(bar + 1)));
  }
  const auto p = parse_list(rest);
  if (p.size() != 2) throw Error(Errc::InvalidArgument, kind + " spec takes two parameters");
  if (kind == "linear") return DiagonalSpec::linear(p[0], p[1]);
  if (kind == "harmonic") return DiagonalSpec::harmonic(p[0], p[1]);
  if (kind == "enum") return DiagonalSpec::rational_enumeration(p[0], p[1]);
  throw Error(Errc::InvalidArgument, "unknown diagonal kind '" + kind + "'");
}

// --- Windows and stabilizers ----------------------------------------------------

Window::Window(Rational point, Domain j) : z(std::move(point)), domain(std::move(j)) {
  if (!domain.contains(z))
    throw Error(Errc::WindowOutsideDomain, "window point " + sciwb::to_string(z) + " is outside " + domain.to_string());
}

std::string Window::to_string() const { return "{" + sciwb::to_string(z) + "}"; }

WindowApproximant window_approximant(const Rational& z, int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "window approximant index must be >= 1");
  const Rational scale = pow2(n + 2);
  const Rational r = Rational(floor_of(Rational(scale * z))) / scale;
  if (!(abs_of(Rational(r - z)) < pow2(-(n + 2))))
    throw Error(Errc::InvalidArgument, "dyadic bound violated at n = " + std::to_string(n));
  return {n, r};
}

StabilizerSpec certify_stabilizer(const DiagonalSpec& b, const Domain& j) {
  try {
    if (b.meets(j.lo, j.hi))
      throw Error(Errc::UncertifiedStabilizer, b.describe() + " has spectrum meeting " + j.to_string());
    const Rational margin = std::min(b.distance_to(j.lo), b.distance_to(j.hi));
    if (margin <= 0) throw Error(Errc::UncertifiedStabilizer, b.describe() + " has zero margin to " + j.to_string());
    return {b, margin};
  } catch (const Error& e) {
    if (e.code() == Errc::UnsupportedKind)
      throw Error(Errc::UncertifiedStabilizer, "cannot certify " + b.describe() + ": no membership oracle");
    throw;
  }
}

Rational StabilizedInput::entry(std::int64_t i, int r, std::int64_t j, int s) const {
  if (r != s) return 0;
  return r == 1 ? a_.matrix_entry(i, j) : b_.matrix_entry(i, j);
}

QueryId mu(std::int64_t i, std::int64_t j) { return QueryId("mu", {Rational(i), Rational(j)}); }
QueryId rho(std::int64_t n) { return QueryId("rho", {Rational(n)}); }
QueryId nu(std::int64_t i, int r, std::int64_t j, int s) {
  return QueryId("nu", {Rational(i), Rational(r), Rational(j), Rational(s)});
}
QueryId rho_b(std::int64_t n) { return QueryId("rhoB", {Rational(n)}); }

int exact_decision_oracle(const DiagonalSpec& a, const Window& w) { return a.distance_to(w.z) > 0 ? 1 : 0; }

// --- Problems ------------------------------------------------------------------

namespace {

constexpr std::int64_t kMaxRho = 1 << 20;

bool positive_ints(const QueryId& q, std::size_t count) {
  if (q.params.size() != count || !q.args.empty()) return false;
  for (const auto& p : q.params)
    if (boost::multiprecision::denominator(p) != 1 || p < 1) return false;
  return true;
}

bool valid_rho(const QueryId& q) { return positive_ints(q, 1) && q.params[0] <= kMaxRho; }

bool valid_nu(const QueryId& q) {
  if (!positive_ints(q, 4)) return false;
  return q.params[1] <= 2 && q.params[3] <= 2;
}

std::vector<QueryId> spectral_probes(bool stabilized) {
  std::vector<QueryId> out;
  for (int n = 1; n <= 24; ++n) out.push_back(stabilized ? rho_b(n) : rho(n));
  for (int j = 1; j <= 64; ++j) out.push_back(stabilized ? nu(j, 1, j, 1) : mu(j, j));
  return out;
}

}  // namespace

SourceProblem::SourceProblem(Domain j, const std::vector<Pair>& pairs)
    : domain_(std::move(j)), space_(OutputSpace::discrete({0, 1})) {
  for (const auto& [a, z] : pairs.empty() ? builtin_pairs(domain_) : pairs)
    catalog_.push_back(std::make_shared<const SourceInput>(a, Window(z, domain_)));
}

std::string SourceProblem::id() const { return "spectral-source" + domain_.to_string(); }

Point SourceProblem::target(const Input& in) const {
  const auto& s = input_as<SourceInput>(in);
  return exact_decision_oracle(s.op(), s.window());
}

bool SourceProblem::has_query(const QueryId& q) const {
  if (q.head == "mu") return positive_ints(q, 2);
  if (q.head == "rho") return valid_rho(q);
  return false;
}

Value SourceProblem::evaluate(const QueryId& q, const Input& in) const {
  if (!has_query(q)) throw Error(Errc::UnknownQuery, q.to_string() + " is not a query of " + id());
  const auto& s = input_as<SourceInput>(in);
  if (q.head == "mu") return s.op().matrix_entry(q.int_param(0), q.int_param(1));
  return window_approximant(s.window().z, static_cast<int>(q.int_param(0))).r;
}

std::vector<QueryId> SourceProblem::sample_queries(std::mt19937_64& rng, std::size_t count) const {
  std::vector<QueryId> out;
  std::uniform_int_distribution<int> kind(0, 3), idx(1, 12), n(1, 20);
  for (std::size_t c = 0; c < count; ++c) {
    switch (kind(rng)) {
      case 0: out.push_back(rho(n(rng))); break;
      case 1: out.push_back(mu(idx(rng), idx(rng))); break;
      default: {
        const int j = idx(rng);
        out.push_back(mu(j, j));
      }
    }
  }
  return out;
}

std::vector<QueryId> SourceProblem::probe_queries(const Input&, const Input&) const { return spectral_probes(false); }

StabilizedProblem::StabilizedProblem(Domain j, StabilizerSpec b, const std::vector<Pair>& pairs)
    : domain_(std::move(j)), b_(std::move(b)), space_(OutputSpace::discrete({0, 1})) {
  for (const auto& [a, z] : pairs.empty() ? builtin_pairs(domain_) : pairs)
    catalog_.push_back(std::make_shared<const StabilizedInput>(a, b_.b, Window(z, domain_)));
}

std::string StabilizedProblem::id() const { return "spectral-stabilized" + domain_.to_string() + "+" + b_.b.describe(); }

Point StabilizedProblem::target(const Input& in) const {
  const auto& s = input_as<StabilizedInput>(in);
  // sigma(A (+) B) = sigma(A) u sigma(B).
  const Rational d = std::min(s.first().distance_to(s.window().z), s.second().distance_to(s.window().z));
  return d > 0 ? 1 : 0;
}

bool StabilizedProblem::has_query(const QueryId& q) const {
  if (q.head == "nu") return valid_nu(q);
  if (q.head == "rhoB") return valid_rho(q);
  return false;
}

Value StabilizedProblem::evaluate(const QueryId& q, const Input& in) const {
  if (!has_query(q)) throw Error(Errc::UnknownQuery, q.to_string() + " is not a query of " + id());
  const auto& s = input_as<StabilizedInput>(in);
  if (q.head == "nu")
    return s.entry(q.int_param(0), static_cast<int>(q.int_param(1)), q.int_param(2), static_cast<int>(q.int_param(3)));
  return window_approximant(s.window().z, static_cast<int>(q.int_param(0))).r;
}

std::vector<QueryId> StabilizedProblem::sample_queries(std::mt19937_64& rng, std::size_t count) const {
  std::vector<QueryId> out;
  std::uniform_int_distribution<int> kind(0, 3), idx(1, 12), n(1, 20), block(1, 2);
  for (std::size_t c = 0; c < count; ++c) {
    switch (kind(rng)) {
      case 0: out.push_back(rho_b(n(rng))); break;
      case 1: out.push_back(nu(idx(rng), block(rng), idx(rng), block(rng))); break;
      default: {
        const int j = idx(rng), r = block(rng);
        out.push_back(nu(j, r, j, r));
      }
    }
  }
  return out;
}

std::vector<QueryId> StabilizedProblem::probe_queries(const Input&, const Input&) const {
  return spectral_probes(true);
}

std::vector<Pair> builtin_pairs(const Domain& j) {
  const Rational len = j.hi - j.lo;
  const Rational mid = j.lo + len / 2;
  std::vector<DiagonalSpec> ops{
      DiagonalSpec::finite_then_constant({}, j.hi + len + 1),
      DiagonalSpec::finite_then_constant({j.lo, mid, j.hi}, mid),
      DiagonalSpec::linear(j.lo, len / 4 + Rational(1, 8)),
      DiagonalSpec::harmonic(mid, len / 2 + 1),
      DiagonalSpec::rational_enumeration(j.lo, mid + 1),
      DiagonalSpec::harmonic(j.hi + 1, 1),
  };
  std::vector<Rational> windows{j.lo, j.lo + len / 3, mid, j.lo + 3 * len / 4, j.hi};
  std::vector<Pair> out;
  for (const auto& a : ops)
    for (const auto& z : windows) out.emplace_back(a, z);
  return out;
}

std::shared_ptr<const SourceProblem> source_problem(const Domain& j, const std::vector<Pair>& pairs) {
  return std::make_shared<const SourceProblem>(j, pairs);
}

std::shared_ptr<const StabilizedProblem> stabilized_problem(const Domain& j, const StabilizerSpec& b,
                                                            const std::vector<Pair>& pairs) {
  return std::make_shared<const StabilizedProblem>(j, b, pairs);
}

// --- Tower and reductions ---------------------------------------------------------

Tower decision_tower(const Domain& j) {
  return Tower{"decision" + j.to_string(), 2, [](const MultiIndex& idx) {
                 const std::int64_t n2 = idx.at(0), n1 = idx.at(1);
                 if (n2 < 1 || n1 < 1) throw Error(Errc::InvalidArgument, "decision stage needs n2, n1 >= 1");
                 std::vector<QueryId> queries;
                 queries.reserve(static_cast<std::size_t>(n1 + 1));
                 for (std::int64_t k = 1; k <= n1; ++k) queries.push_back(mu(k, k));
                 queries.push_back(rho(n2));
                 const Rational threshold = pow2(-static_cast<int>(n2));
                 return fixed_query_algorithm("decision" + to_string(idx), std::move(queries),
                                              [threshold](std::span<const Value> v) {
                                                const Rational& r = v.back().re.exact();
                                                Rational best = abs_of(Rational(v[0].re.exact() - r));
                                                for (std::size_t k = 1; k + 1 < v.size(); ++k)
                                                  best = std::min(best, abs_of(Rational(v[k].re.exact() - r)));
                                                return Point(best > threshold ? 1 : 0);
                                              });
               }};
}

MultiIndex stabilization_stage(const DiagonalSpec& a, const Rational& z) {
  const Rational delta = a.distance_to(z);
  if (delta > 0) {
    std::int64_t n2 = 1;
    while (!(5 * pow2(-static_cast<int>(n2 + 2)) < delta)) ++n2;
    return {n2, 1};
  }
  const std::int64_t n2 = 4;
  const auto n1 = a.first_index_within(z, 3 * pow2(-static_cast<int>(n2 + 2)));
  if (!n1) throw Error(Errc::InvalidArgument, "no approximating index found for " + a.describe());
  return {n2, *n1};
}

StabilizationReductions stabilization_reductions(const std::shared_ptr<const SourceProblem>& source,
                                                 const std::shared_ptr<const StabilizedProblem>& stabilized) {
  const DiagonalSpec b = stabilized->stabilizer().b;
  const RuleSpec fspec{"stabilization_forward", {{"domain", source->domain().to_string()}, {"stabilizer", b.describe()}}};
  const RuleSpec bspec{"stabilization_backward", fspec.params};
  auto identity = [](std::span<const Value> v) { return v[0]; };
  auto identity_decoder = Decoder{[](const Point& p) { return p; }, DecoderClass::Cont, {"identity", {}}};

  StabilizationReductions out;
  Reduction& f = out.forward;
  f.name = "stabilize+" + b.describe();
  f.source = source;
  f.target = stabilized;
  f.encoder = [b](const InputPtr& in) -> InputPtr {
    const auto& s = input_as<SourceInput>(*in);
    return std::make_shared<const StabilizedInput>(s.op(), b, s.window());
  };
  f.encoder_spec = fspec;
  f.decoder = identity_decoder;
  f.plan.rule = [stabilized, b, identity](const QueryId& q) -> std::optional<QueryBlock> {
    if (!stabilized->has_query(q)) return std::nullopt;
    if (q.head == "rhoB") return QueryBlock{{rho(q.int_param(0))}, identity};
    const std::int64_t i = q.int_param(0), r = q.int_param(1), j = q.int_param(2), s = q.int_param(3);
    if (r == 1 && s == 1) return QueryBlock{{mu(i, j)}, identity};
    // B is fixed, so its entries and the mixed blocks are constants.
    const Rational c = (r == 2 && s == 2) ? b.matrix_entry(i, j) : Rational(0);
    return QueryBlock{{rho(1)}, [c](std::span<const Value>) { return Value(c); }};
  };
  f.plan.spec = fspec;

  Reduction& g = out.backward;
  g.name = "strip+" + b.describe();
  g.source = stabilized;
  g.target = source;
  g.encoder = [](const InputPtr& in) -> InputPtr {
    const auto& s = input_as<StabilizedInput>(*in);
    return std::make_shared<const SourceInput>(s.first(), s.window());
  };
  g.encoder_spec = bspec;
  g.decoder = identity_decoder;
  g.plan.rule = [source, identity](const QueryId& q) -> std::optional<QueryBlock> {
    if (!source->has_query(q)) return std::nullopt;
    if (q.head == "rho") return QueryBlock{{rho_b(q.int_param(0))}, identity};
    return QueryBlock{{nu(q.int_param(0), 1, q.int_param(1), 1)}, identity};
  };
  g.plan.spec = bspec;
  return out;
}

HeightCertificate source_certificate(const Domain& j) {
  return recorded_fact("spectral-source" + j.to_string(), 2, 2,
                       "singleton-window spectral decision over diagonal operators has exact height 2 "
                       "(cited classification)");
}

}  // namespace sciwb::spectral
