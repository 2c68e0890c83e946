#include "sciwb/lattice.hpp"

#include <algorithm>

#include "sciwb/integration.hpp"

namespace sciwb::lattice {

namespace {

class FiniteInput final : public Input {
 public:
  FiniteInput(std::size_t index, std::string name) : index_(index), name_(std::move(name)) {}
  std::size_t index() const { return index_; }
  std::string describe() const override { return name_; }

 private:
  std::size_t index_;
  std::string name_;
};

}  // namespace

FiniteProblem::FiniteProblem(std::string id, std::vector<int> labels, std::vector<Entry> inputs,
                             std::vector<std::pair<std::string, std::vector<Value>>> queries)
    : id_(std::move(id)), space_(OutputSpace::discrete(labels)), entries_(std::move(inputs)), queries_(std::move(queries)) {
  for (const auto& [name, values] : queries_)
    if (values.size() != entries_.size()) throw Error(Errc::InvalidArgument, "query " + name + " needs one value per input");
  for (const auto& e : entries_)
    if (std::find(labels.begin(), labels.end(), e.target) == labels.end())
      throw Error(Errc::InvalidArgument, "target of " + e.name + " is outside the output carrier");
  for (std::size_t i = 0; i < entries_.size(); ++i) catalog_.push_back(std::make_shared<const FiniteInput>(i, entries_[i].name));
}

Point FiniteProblem::target(const Input& in) const { return entries_.at(input_as<FiniteInput>(in).index()).target; }

bool FiniteProblem::has_query(const QueryId& q) const {
  return q.params.empty() && q.args.empty() &&
         std::any_of(queries_.begin(), queries_.end(), [&](const auto& e) { return e.first == q.head; });
}

Value FiniteProblem::evaluate(const QueryId& q, const Input& in) const {
  for (const auto& [name, values] : queries_)
    if (q.params.empty() && q.args.empty() && name == q.head) return values.at(input_as<FiniteInput>(in).index());
  throw Error(Errc::UnknownQuery, q.to_string() + " is not a query of " + id_);
}

std::vector<QueryId> FiniteProblem::sample_queries(std::mt19937_64& rng, std::size_t count) const {
  std::vector<QueryId> out;
  if (queries_.empty()) return out;
  std::uniform_int_distribution<std::size_t> pick(0, queries_.size() - 1);
  for (std::size_t c = 0; c < count; ++c) out.emplace_back(queries_[pick(rng)].first);
  return out;
}

std::optional<QueryId> FiniteProblem::first_query() const {
  if (queries_.empty()) return std::nullopt;
  return QueryId(queries_.front().first);
}

std::vector<QueryId> FiniteProblem::probe_queries(const Input&, const Input&) const {
  std::vector<QueryId> out;
  for (const auto& q : queries_) out.emplace_back(q.first);
  return out;
}

// --- Join ----------------------------------------------------------------------

QueryId pad(int tag, const QueryId& inner) { return QueryId("pad", {Rational(tag)}, {inner}); }
QueryId tag_query() { return QueryId("tau"); }

TaggedProblem::TaggedProblem(ProblemPtr p0, ProblemPtr p1)
    : p0_(std::move(p0)), p1_(std::move(p1)), space_(OutputSpace::tagged_union(p0_->output_space(), p1_->output_space())) {}

std::string TaggedProblem::id() const { return "join(" + p0_->id() + "|" + p1_->id() + ")"; }

std::vector<InputPtr> TaggedProblem::catalog() const {
  std::vector<InputPtr> out;
  for (int tag : {0, 1})
    for (auto& a : component(tag).catalog()) out.push_back(std::make_shared<const TaggedInput>(tag, a));
  return out;
}

InputPtr TaggedProblem::sample_input(std::mt19937_64& rng) const {
  const int tag = std::uniform_int_distribution<int>(0, 1)(rng);
  return std::make_shared<const TaggedInput>(tag, component(tag).sample_input(rng));
}

Point TaggedProblem::target(const Input& in) const {
  const auto& t = input_as<TaggedInput>(in);
  return Point::tagged(t.tag(), component(t.tag()).target(t.inner()));
}

namespace {

std::optional<int> pad_tag(const QueryId& q) {
  if (q.head != "pad" || q.params.size() != 1 || q.args.size() != 1) return std::nullopt;
  if (q.params[0] == 0) return 0;
  if (q.params[0] == 1) return 1;
  return std::nullopt;
}

}  // namespace

bool TaggedProblem::has_query(const QueryId& q) const {
  if (q == tag_query()) return true;
  const auto tag = pad_tag(q);
  return tag && component(*tag).has_query(q.args[0]);
}

Value TaggedProblem::evaluate(const QueryId& q, const Input& in) const {
  if (!has_query(q)) throw Error(Errc::UnknownQuery, q.to_string() + " is not a query of " + id());
  const auto& t = input_as<TaggedInput>(in);
  if (q == tag_query()) return Value(t.tag());
  const int tag = *pad_tag(q);
  if (tag != t.tag()) return Value(0);
  return component(tag).evaluate(q.args[0], t.inner());
}

std::vector<QueryId> TaggedProblem::sample_queries(std::mt19937_64& rng, std::size_t count) const {
  std::vector<QueryId> out;
  std::uniform_int_distribution<int> kind(0, 4);
  for (std::size_t c = 0; c < count; ++c) {
    const int k = kind(rng);
    if (k == 0) {
      out.push_back(tag_query());
      continue;
    }
    const int tag = k % 2;
    const auto inner = component(tag).sample_queries(rng, 1);
    out.push_back(inner.empty() ? tag_query() : pad(tag, inner.front()));
  }
  return out;
}

std::vector<QueryId> TaggedProblem::probe_queries(const Input& a, const Input& b) const {
  std::vector<QueryId> out{tag_query()};
  const auto& ta = input_as<TaggedInput>(a);
  const auto& tb = input_as<TaggedInput>(b);
  if (ta.tag() == tb.tag())
    for (const auto& q : component(ta.tag()).probe_queries(ta.inner(), tb.inner())) out.push_back(pad(ta.tag(), q));
  return out;
}

namespace {

Reduction join_reduction(const std::shared_ptr<const TaggedProblem>& u, ProblemPtr p, int tag) {
  const auto cat = p->catalog();
  if (cat.empty()) throw Error(Errc::EmptyInputClass, p->id() + " has an empty input class");
  const auto pivot_query = p->first_query();
  if (!pivot_query) throw Error(Errc::EmptyQueryFamily, p->id() + " has an empty evaluation family");
  const Point fallback = p->target(*cat.front());
  const QueryId q = *pivot_query;

  Reduction r;
  r.name = "tag" + std::to_string(tag) + "(" + p->id() + ")";
  r.source = p;
  r.target = u;
  r.encoder = [tag](const InputPtr& in) -> InputPtr { return std::make_shared<const TaggedInput>(tag, in); };
  r.encoder_spec = {"tag", {{"tag", std::to_string(tag)}}};
  r.decoder = Decoder{[tag, fallback](const Point& y) {
                        const auto& t = y.tagged_point();
                        return t.tag == tag ? *t.inner : fallback;
                      },
                      DecoderClass::Cont,
                      {"untag", {{"tag", std::to_string(tag)}, {"fallback", fallback.to_string()}}}};
  r.plan.rule = [u, tag, q](const QueryId& f) -> std::optional<QueryBlock> {
    if (!u->has_query(f)) return std::nullopt;
    if (f == tag_query()) return QueryBlock{{q}, [tag](std::span<const Value>) { return Value(tag); }};
    if (*pad_tag(f) == tag) return QueryBlock{{f.args[0]}, [](std::span<const Value> v) { return v[0]; }};
    return QueryBlock{{q}, [](std::span<const Value>) { return Value(0); }};
  };
  r.plan.spec = {"tag", {{"tag", std::to_string(tag)}, {"pivot", q.to_string()}}};
  return r;
}

}  // namespace

Join upper_bound_join(ProblemPtr p0, ProblemPtr p1) {
  for (const auto& p : {p0, p1}) {
    if (p->catalog().empty()) throw Error(Errc::EmptyInputClass, p->id() + " has an empty input class");
    if (!p->has_queries()) throw Error(Errc::EmptyQueryFamily, p->id() + " has an empty evaluation family");
  }
  auto u = std::make_shared<const TaggedProblem>(p0, p1);
  return {u, join_reduction(u, p0, 0), join_reduction(u, p1, 1)};
}

// --- Meet ----------------------------------------------------------------------

std::shared_ptr<const FiniteProblem> singleton_problem() {
  return std::make_shared<const FiniteProblem>("singleton", std::vector<int>{0},
                                               std::vector<FiniteProblem::Entry>{{"*", 0}},
                                               std::vector<std::pair<std::string, std::vector<Value>>>{{"c", {Value(0)}}});
}

namespace {

Reduction meet_reduction(const std::shared_ptr<const FiniteProblem>& l, ProblemPtr p) {
  const auto cat = p->catalog();
  if (cat.empty()) throw Error(Errc::EmptyInputClass, p->id() + " has an empty input class");
  const InputPtr pivot = cat.front();
  const Point zero = p->target(*pivot);

  Reduction r;
  r.name = "point(" + p->id() + ")";
  r.source = l;
  r.target = p;
  r.encoder = [pivot](const InputPtr&) { return pivot; };
  r.encoder_spec = {"constant", {{"input", pivot->describe()}}};
  r.decoder = Decoder{[](const Point&) { return Point(0); }, DecoderClass::Cont, {"constant", {{"value", "0"}}}};
  r.plan.rule = [p, pivot](const QueryId& f) -> std::optional<QueryBlock> {
    if (!p->has_query(f)) return std::nullopt;
    const Value c = p->evaluate(f, *pivot);
    return QueryBlock{{QueryId("c")}, [c](std::span<const Value>) { return c; }};
  };
  r.plan.spec = {"constant", {{"input", pivot->describe()}}};
  return r;
}

}  // namespace

Meet lower_bound_meet(ProblemPtr p0, ProblemPtr p1) {
  auto l = singleton_problem();
  return {l, meet_reduction(l, std::move(p0)), meet_reduction(l, std::move(p1))};
}

// --- Counterexamples -------------------------------------------------------------

std::pair<std::shared_ptr<const FiniteProblem>, std::shared_ptr<const FiniteProblem>> empty_query_pair() {
  auto p0 = std::make_shared<const FiniteProblem>("P0", std::vector<int>{0}, std::vector<FiniteProblem::Entry>{{"*", 0}},
                                                  std::vector<std::pair<std::string, std::vector<Value>>>{});
  auto p1 = std::make_shared<const FiniteProblem>(
      "P1", std::vector<int>{0, 1}, std::vector<FiniteProblem::Entry>{{"a", 0}, {"b", 1}},
      std::vector<std::pair<std::string, std::vector<Value>>>{{"e", {Value(0), Value(1)}}});
  return {p0, p1};
}

std::pair<std::shared_ptr<const FiniteProblem>, std::shared_ptr<const FiniteProblem>> identity_class_pair() {
  auto p0 = std::make_shared<const FiniteProblem>("Q0", std::vector<int>{0}, std::vector<FiniteProblem::Entry>{{"*0", 0}},
                                                  std::vector<std::pair<std::string, std::vector<Value>>>{{"c0", {Value(0)}}});
  auto p1 = std::make_shared<const FiniteProblem>("Q1", std::vector<int>{1}, std::vector<FiniteProblem::Entry>{{"*1", 1}},
                                                  std::vector<std::pair<std::string, std::vector<Value>>>{{"c1", {Value(0)}}});
  return {p0, p1};
}

bool CounterexampleReport::all_checks_hold() const {
  return std::all_of(steps.begin(), steps.end(), [](const CheckedStep& s) { return s.holds; });
}

namespace {

CounterexampleReport empty_family_demo(DecoderClass c) {
  CounterexampleReport report;
  report.decoder_class = c;
  const auto [p0, p1] = empty_query_pair();
  const auto a = p1->catalog()[0], b = p1->catalog()[1];

  report.steps.push_back({"P0 is a problem with an empty evaluation family", !p0->has_queries() && check_consistency(*p0).ok(),
                          "Lambda_0 = {}, single input"});
  const Value ea = p1->evaluate(QueryId("e"), *a), eb = p1->evaluate(QueryId("e"), *b);
  report.steps.push_back({"e separates a and b in P1", !identical(ea, eb) && check_consistency(*p1).ok(),
                          "e(a) = " + ea.to_string() + ", e(b) = " + eb.to_string()});
  const Point ta = p1->target(*a), tb = p1->target(*b);
  report.steps.push_back({"the target of P1 is not constant", !identical(ta, tb),
                          "Xi_1(a) = " + ta.to_string() + ", Xi_1(b) = " + tb.to_string()});

  const std::vector<ProblemPtr> with_queries{p1, integration::make_problem(integration::Interval(0, 1)), singleton_problem()};
  bool all_infeasible = true;
  std::string detail;
  for (const auto& u : with_queries) {
    const auto f = structural_feasibility(*p0, *u);
    all_infeasible = all_infeasible && f == Feasibility::Infeasible;
    detail += (detail.empty() ? "" : ", ") + u->id() + ": " + std::string(to_string(f));
  }
  report.steps.push_back({"no reduction from P0 into a problem with queries", all_infeasible, detail});

  // A two-input candidate with no queries and a non-constant target fails consistency.
  const FiniteProblem nonconstant("U?", {0, 1}, {{"x", 0}, {"y", 1}}, {});
  report.steps.push_back({"a query-free candidate with a non-constant target is not a problem",
                          !check_consistency(nonconstant).ok(), "the pair (x, y) is unseparated"});

  // Take the query-free candidate U = P0 and enumerate every encoder {a,b} -> Omega_U
  // and every decoder M_U = {0} -> {0,1}.
  const auto u_inputs = p0->catalog();
  std::size_t tried = 0, matching = 0;
  for (const auto& ua : u_inputs)
    for (const auto& ub : u_inputs)
      for (int d : {0, 1}) {
        ++tried;
        auto decode = [d](const Point&) { return Point(d); };
        if (identical(decode(p0->target(*ua)), ta) && identical(decode(p0->target(*ub)), tb)) ++matching;
      }
  report.steps.push_back({"no encoder/decoder pair reproduces Xi_1 through a constant target", matching == 0,
                          std::to_string(tried) + " encoder/decoder pairs enumerated, " + std::to_string(matching) +
                              " match"});

  try {
    upper_bound_join(p0, p1);
    report.steps.push_back({"the tagged join construction does not apply to P0", false, "join was built"});
  } catch (const Error& e) {
    report.steps.push_back({"the tagged join construction does not apply to P0", e.code() == Errc::EmptyQueryFamily, e.what()});
  }

  report.recorded_argument = {
      "any upper bound U of P0 needs m_f >= 1 source queries in the empty family for each f in Lambda_U, so Lambda_U = {}",
      "a problem with Lambda_U = {} has a constant target by consistency",
      "then Xi_1 = D_1 o Xi_U o E_1 is constant, contradicting Xi_1(a) != Xi_1(b)",
      "hence P0 and P1 have no common upper bound and the quotient is not an upper semilattice",
  };
  report.verdict = "Infeasible";
  return report;
}

CounterexampleReport identity_demo() {
  CounterexampleReport report;
  report.decoder_class = DecoderClass::Id;
  const auto [q0, q1] = identity_class_pair();
  report.steps.push_back({"Q0 and Q1 are problems", check_consistency(*q0).ok() && check_consistency(*q1).ok(),
                          "singleton input classes, consistency is vacuous"});
  const auto& m0 = q0->output_space();
  const auto& m1 = q1->output_space();
  report.steps.push_back({"the output carriers differ", !m0.same_as(m1), m0.id() + " != " + m1.id()});
  try {
    decoder_compose_class(DecoderClass::Id, DecoderClass::Id, m0.same_as(m1));
    report.steps.push_back({"identity decoders between the carriers do not compose", false, "composition accepted"});
  } catch (const Error& e) {
    report.steps.push_back({"identity decoders between the carriers do not compose", e.code() == Errc::TagIncompatible, e.what()});
  }
  report.recorded_argument = {
      "an Id decoder from M_R to M_0 exists only if M_R = M_0 = {0}",
      "an Id decoder from M_R to M_1 exists only if M_R = M_1 = {1}",
      "so a common upper bound R would need {0} = {1}",
  };
  report.verdict = "carrier clash: " + m0.id() + " != " + m1.id();
  return report;
}

}  // namespace

CounterexampleReport counterexample_demo(DecoderClass c) {
  return c == DecoderClass::Id ? identity_demo() : empty_family_demo(c);
}

}  // namespace sciwb::lattice
