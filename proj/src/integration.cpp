#include "sciwb/integration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <variant>

namespace sciwb::integration {

Interval::Interval(Rational lo, Rational hi) : a(std::move(lo)), b(std::move(hi)) {
  if (a > b) throw Error(Errc::InvalidArgument, "interval [" + sciwb::to_string(a) + "," + sciwb::to_string(b) + "] has a > b");
}

std::string Interval::to_string() const { return "[" + sciwb::to_string(a) + "," + sciwb::to_string(b) + "]"; }

// --- Function ---------------------------------------------------------------

namespace {

struct Poly {
  std::vector<Rational> c;
};
struct Sine {
  Rational scale, freq;
};
struct Bump {
  Rational u, v;
};
struct Affine;

}  // namespace

struct Function::Node {
  std::variant<Poly, Sine, Bump, std::shared_ptr<const Affine>> body;
};

namespace {

struct Affine {
  Rational outer, slope, shift;
  Function base;
};

Rational poly_antiderivative(const std::vector<Rational>& c, const Rational& x) {
  Rational acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k] / Rational(static_cast<long>(k + 1));
  return acc * x;
}

// Integral of the bump from -inf to x.
Rational bump_antiderivative(const Bump& b, const Rational& x) {
  const Rational w = (b.v - b.u) / 2;
  const Rational m = b.u + w;
  if (x <= b.u) return 0;
  if (x <= m) return (x - b.u) * (x - b.u) / (2 * w);
  if (x <= b.v) return w - (b.v - x) * (b.v - x) / (2 * w);
  return w;
}

std::string join(const std::vector<Rational>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + sciwb::to_string(xs[i]);
  return out;
}

}  // namespace

Function Function::polynomial(std::vector<Rational> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return Function(std::make_shared<const Node>(Node{Poly{std::move(coeffs)}}));
}

Function Function::sine(Rational scale, Rational freq) {
  return Function(std::make_shared<const Node>(Node{Sine{std::move(scale), std::move(freq)}}));
}

Function Function::bump(Rational u, Rational v) {
  if (!(u < v)) throw Error(Errc::InvalidArgument, "bump needs u < v");
  return Function(std::make_shared<const Node>(Node{Bump{std::move(u), std::move(v)}}));
}

Function Function::affine(Rational outer, Rational slope, Rational shift, Function base) {
  auto a = std::make_shared<const Affine>(Affine{std::move(outer), std::move(slope), std::move(shift), std::move(base)});
  return Function(std::make_shared<const Node>(Node{std::move(a)}));
}

Function::Kind Function::kind() const { return static_cast<Kind>(node_->body.index()); }

Real Function::operator()(const Rational& x) const {
  return std::visit(
      [&](const auto& n) -> Real {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Poly>) {
          Rational acc = 0;
          for (std::size_t k = n.c.size(); k-- > 0;) acc = acc * x + n.c[k];
          return acc;
        } else if constexpr (std::is_same_v<T, Sine>) {
          return Real::approx(to_double(n.scale) * std::sin(to_double(Rational(n.freq * x))));
        } else if constexpr (std::is_same_v<T, Bump>) {
          const Rational m = (n.u + n.v) / 2;
          const Rational h = 1 - (2 / (n.v - n.u)) * abs_of(Rational(x - m));
          return h > 0 ? h : Rational(0);
        } else {
          return Real(n->outer) * n->base(Rational(n->slope * x + n->shift));
        }
      },
      node_->body);
}

Real Function::integral(const Rational& lo, const Rational& hi) const {
  return std::visit(
      [&](const auto& n) -> Real {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Poly>) {
          return Rational(poly_antiderivative(n.c, hi) - poly_antiderivative(n.c, lo));
        } else if constexpr (std::is_same_v<T, Sine>) {
          if (n.freq == 0) return 0;
          const double f = to_double(n.freq);
          return Real::approx(to_double(n.scale) *
                              (std::cos(to_double(Rational(n.freq * lo))) - std::cos(to_double(Rational(n.freq * hi)))) / f);
        } else if constexpr (std::is_same_v<T, Bump>) {
          return Rational(bump_antiderivative(n, hi) - bump_antiderivative(n, lo));
        } else {
          if (n->slope == 0) return Real(Rational(n->outer * (hi - lo))) * n->base(n->shift);
          return Real(Rational(n->outer / n->slope)) *
                 n->base.integral(Rational(n->slope * lo + n->shift), Rational(n->slope * hi + n->shift));
        }
      },
      node_->body);
}

Rational Function::lipschitz(const Rational& lo_in, const Rational& hi_in) const {
  const Rational lo = std::min(lo_in, hi_in);
  const Rational hi = std::max(lo_in, hi_in);
  return std::visit(
      [&](const auto& n) -> Rational {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Poly>) {
          const Rational m = std::max(abs_of(lo), abs_of(hi));
          Rational acc = 0, power = 1;
          for (std::size_t k = 1; k < n.c.size(); ++k) {
            acc += Rational(static_cast<long>(k)) * abs_of(n.c[k]) * power;
            power *= m;
          }
          return acc;
        } else if constexpr (std::is_same_v<T, Sine>) {
          return abs_of(Rational(n.scale * n.freq));
        } else if constexpr (std::is_same_v<T, Bump>) {
          return 2 / (n.v - n.u);
        } else {
          const Rational x = n->slope * lo + n->shift, y = n->slope * hi + n->shift;
          return abs_of(Rational(n->outer * n->slope)) * n->base.lipschitz(x, y);
        }
      },
      node_->body);
}

bool Function::exact() const {
  if (const auto* a = std::get_if<std::shared_ptr<const Affine>>(&node_->body)) return (*a)->base.exact();
  return !std::holds_alternative<Sine>(node_->body);
}

std::string Function::describe() const {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Poly>) {
          return "poly:" + (n.c.empty() ? std::string("0") : join(n.c));
        } else if constexpr (std::is_same_v<T, Sine>) {
          return "sin:" + join({n.scale, n.freq});
        } else if constexpr (std::is_same_v<T, Bump>) {
          return "bump:" + join({n.u, n.v});
        } else {
          return "affine:" + join({n->outer, n->slope, n->shift}) + ";" + n->base.describe();
        }
      },
      node_->body);
}

namespace {

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

}  // namespace

Function parse_function(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(Errc::InvalidArgument, "function '" + text + "' lacks a kind prefix");
  const std::string kind = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  if (kind == "affine") {
    const auto semi = rest.find(';');
    if (semi == std::string::npos) throw Error(Errc::InvalidArgument, "affine function needs ';<base>'");
    const auto p = parse_list(rest.substr(0, semi));
    if (p.size() != 3) throw Error(Errc::InvalidArgument, "affine function takes outer,slope,shift");
    return Function::affine(p[0], p[1], p[2], parse_function(rest.substr(semi + 1)));
  }
  const auto p = parse_list(rest);
  if (kind == "poly") return Function::polynomial(p);
  if (kind == "sin") {
    if (p.size() != 2) throw Error(Errc::InvalidArgument, "sin takes scale,freq");
    return Function::sine(p[0], p[1]);
  }
  if (kind == "bump") {
    if (p.size() != 2) throw Error(Errc::InvalidArgument, "bump takes u,v");
    return Function::bump(p[0], p[1]);
  }
  throw Error(Errc::InvalidArgument, "unknown function kind '" + kind + "'");
}

InputPtr make_input(Function f) { return std::make_shared<const FunctionInput>(std::move(f)); }

QueryId ev(const Rational& x) { return QueryId("ev", {x}); }

// --- Problem ----------------------------------------------------------------

std::vector<Function> default_functions() {
  return {
      Function::polynomial({0, 1}),
      Function::polynomial({0, 0, 1}),
      Function::polynomial({3}),
      Function::polynomial({1, -3, 0, Rational(1, 2)}),
      Function::polynomial({0, 0, 2, -1}),
      Function::sine(1, 1),
      Function::sine(2, 3),
      Function::bump(Rational(1, 4), Rational(3, 4)),
      Function::bump(-1, 2),
      Function::affine(2, Rational(1, 2), Rational(1, 3), Function::polynomial({0, 0, 1})),
  };
}

Function random_function(std::mt19937_64& rng, const Interval& i) {
  auto rat = [&](int lo, int hi) {
    std::uniform_int_distribution<int> num(lo, hi), den(1, 4);
    return Rational(num(rng), den(rng));
  };
  auto point = [&](std::uint64_t d) {
    std::uniform_int_distribution<std::uint64_t> k(0, d);
    return Rational(i.a + i.length() * Rational(static_cast<long>(k(rng)), static_cast<long>(d)));
  };
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0:
    case 1: {
      std::vector<Rational> c(std::uniform_int_distribution<std::size_t>(1, 4)(rng));
      for (auto& x : c) x = rat(-4, 4);
      return Function::polynomial(std::move(c));
    }
    case 2:
      return Function::sine(rat(1, 3), Rational(std::uniform_int_distribution<int>(1, 4)(rng)));
    case 3: {
      if (i.degenerate()) return Function::bump(i.a - 1, i.a + 1);
      Rational u = point(16), v = point(16);
      while (u == v) v = point(16);
      if (v < u) std::swap(u, v);
      return Function::bump(u, v);
    }
    default:
      return Function::affine(rat(-2, 2), rat(1, 3), rat(-2, 2), Function::polynomial({rat(-2, 2), rat(-2, 2), rat(-2, 2)}));
  }
}

IntegrationProblem::IntegrationProblem(Interval i, std::vector<Function> catalog)
    : interval_(std::move(i)), space_(OutputSpace::real_line()) {
  if (catalog.empty()) catalog = default_functions();
  for (auto& f : catalog) catalog_.push_back(make_input(std::move(f)));
}

std::string IntegrationProblem::id() const { return "integrate" + interval_.to_string(); }

InputPtr IntegrationProblem::sample_input(std::mt19937_64& rng) const {
  return make_input(random_function(rng, interval_));
}

Point IntegrationProblem::target(const Input& in) const {
  return input_as<FunctionInput>(in).function().integral(interval_.a, interval_.b);
}

bool IntegrationProblem::has_query(const QueryId& q) const {
  return q.head == "ev" && q.params.size() == 1 && q.args.empty() && interval_.contains(q.params[0]);
}

Value IntegrationProblem::evaluate(const QueryId& q, const Input& in) const {
  if (!has_query(q)) throw Error(Errc::UnknownQuery, q.to_string() + " is not a point evaluation on " + interval_.to_string());
  return input_as<FunctionInput>(in).function()(q.params[0]);
}

std::vector<QueryId> IntegrationProblem::sample_queries(std::mt19937_64& rng, std::size_t count) const {
  std::vector<QueryId> out;
  out.reserve(count);
  std::uniform_int_distribution<long> den(1, 64);
  for (std::size_t n = 0; n < count; ++n) {
    const long d = den(rng);
    const long k = std::uniform_int_distribution<long>(0, d)(rng);
    out.push_back(ev(Rational(interval_.a + interval_.length() * Rational(k, d))));
  }
  return out;
}

std::shared_ptr<const IntegrationProblem> make_problem(const Interval& i) {
  return std::make_shared<const IntegrationProblem>(i);
}

// --- Towers and adversary ----------------------------------------------------

Tower rectangle_tower(const Interval& i) {
  if (i.degenerate()) throw Error(Errc::DegenerateInterval, "rectangle tower needs a < b, got " + i.to_string());
  return Tower{"rectangle" + i.to_string(), 1, [i](const MultiIndex& idx) {
                 const std::int64_t n = idx.at(0);
                 if (n < 1) throw Error(Errc::InvalidArgument, "rectangle stage needs n >= 1");
                 const Rational h = i.length() / Rational(n);
                 std::vector<QueryId> queries;
                 queries.reserve(static_cast<std::size_t>(n));
                 for (std::int64_t j = 0; j < n; ++j) queries.push_back(ev(Rational(i.a + h * Rational(j))));
                 return fixed_query_algorithm("rectangle" + i.to_string() + "(" + std::to_string(n) + ")",
                                              std::move(queries), [h](std::span<const Value> values) {
                                                Real sum = 0;
                                                for (const auto& v : values) sum += v.re;
                                                return Point(Real(h) * sum);
                                              });
               }};
}

BumpGadget adversary_bump(const std::vector<Rational>& query_points) {
  std::vector<Rational> pts{0, 1};
  for (const auto& x : query_points)
    if (0 <= x && x <= 1) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::size_t best = 0;
  for (std::size_t j = 1; j + 1 < pts.size(); ++j)
    if (pts[j + 1] - pts[j] > pts[best + 1] - pts[best]) best = j;
  const Rational gap = pts[best + 1] - pts[best];
  return {pts[best] + gap / 4, pts[best + 1] - gap / 4};
}

AdversaryOutcome adversary_demo(const GeneralAlgorithm& alg) {
  const auto problem = make_problem(Interval(0, 1));
  const auto zero = make_input(Function::zero());
  const RunResult on_zero = run_algorithm(alg, *problem, *zero);
  AdversaryOutcome out;
  for (const auto& step : on_zero.trace) out.queried.push_back(step.query.params.at(0));
  out.gadget = adversary_bump(out.queried);
  const auto bump = make_input(out.gadget.function());
  const RunResult on_bump = run_algorithm(alg, *problem, *bump);
  out.output_on_zero = on_zero.output;
  out.output_on_bump = on_bump.output;
  out.identical_runs = identical(on_zero.output, on_bump.output) && identical(on_zero.trace, on_bump.trace);
  out.target_gap = abs_of(Rational(problem->target(*bump).real().exact() - problem->target(*zero).real().exact()));
  return out;
}

// --- Reductions ---------------------------------------------------------------

Reduction interval_affine_reduction(const Interval& from, const Interval& to) {
  if (from.degenerate() || to.degenerate())
    throw Error(Errc::DegenerateInterval, "affine reduction needs nondegenerate intervals, got " + from.to_string() +
                                              " and " + to.to_string());
  const Rational ratio = from.length() / to.length();
  const Rational shift = from.a - to.a * ratio;
  Reduction r;
  r.name = "affine" + from.to_string() + "->" + to.to_string();
  r.source = make_problem(from);
  r.target = make_problem(to);
  r.encoder = [ratio, shift](const InputPtr& in) {
    return make_input(Function::affine(ratio, ratio, shift, input_as<FunctionInput>(*in).function()));
  };
  const RuleSpec spec{"interval_affine", {{"from", from.to_string()}, {"to", to.to_string()}}};
  r.encoder_spec = spec;
  r.decoder = Decoder{[](const Point& p) { return p; }, DecoderClass::Cont, {"identity", {}}};
  r.plan.rule = [to, ratio, shift](const QueryId& f) -> std::optional<QueryBlock> {
    if (f.head != "ev" || f.params.size() != 1 || !f.args.empty() || !to.contains(f.params[0])) return std::nullopt;
    return QueryBlock{{ev(Rational(ratio * f.params[0] + shift))},
                      [ratio](std::span<const Value> v) { return Value(v[0].re * Real(ratio)); }};
  };
  r.plan.spec = spec;
  return r;
}

Reduction affine_reduction(const Interval& i) { return interval_affine_reduction(Interval(0, 1), i); }

Tower degenerate_algorithm(const Rational& a) {
  const IntegrationProblem problem(Interval(a, a));
  return finite_query_factorization(problem, {ev(a)}, [](std::span<const Value>) { return Point(0); },
                                    "degenerate[" + sciwb::to_string(a) + "," + sciwb::to_string(a) + "]");
}

IntervalClass classify_interval(const Interval& i) {
  if (i.degenerate()) return {0, false};
  return {1, true};
}

HeightCertificate unit_interval_certificate() {
  return recorded_fact("integrate[0,1]", 1, 1,
                       "unit-interval point-evaluation integration has exact height 1 "
                       "(bump adversary excludes height 0, rectangle rule gives height 1)");
}

}  // namespace sciwb::integration
