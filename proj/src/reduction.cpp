#include "sciwb/reduction.hpp"

#include <algorithm>
#include <memory>
#include <random>

namespace sciwb {

std::string_view to_string(DecoderClass c) {
  switch (c) {
    case DecoderClass::Cont: return "Cont";
    case DecoderClass::Bor: return "Bor";
    case DecoderClass::Id: return "Id";
  }
  return "?";
}

DecoderClass parse_decoder_class(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "cont") return DecoderClass::Cont;
  if (lower == "bor") return DecoderClass::Bor;
  if (lower == "id") return DecoderClass::Id;
  throw Error(Errc::InvalidArgument, "unknown decoder class '" + std::string(text) + "'");
}

DecoderClass decoder_compose_class(DecoderClass outer, DecoderClass inner, bool same_space) {
  if (outer == DecoderClass::Id && inner == DecoderClass::Id) {
    if (!same_space) throw Error(Errc::TagIncompatible, "Id decoders compose only over identical output spaces");
    return DecoderClass::Id;
  }
  if (outer == DecoderClass::Bor || inner == DecoderClass::Bor) return DecoderClass::Bor;
  return DecoderClass::Cont;
}

std::string_view to_string(Feasibility f) { return f == Feasibility::Infeasible ? "Infeasible" : "Unknown"; }

std::size_t Reduction::width(const QueryId& target_query) const {
  const auto block = plan.rule(target_query);
  if (!block) throw Error(Errc::PlanGap, target_query.to_string() + " is not covered by " + name);
  return block->sources.size();
}

Reduction identity_reduction(ProblemPtr p) {
  Reduction r;
  r.name = "identity(" + p->id() + ")";
  r.source = p;
  r.target = p;
  r.encoder = [](const InputPtr& in) { return in; };
  r.encoder_spec = {"identity", {}};
  r.decoder = Decoder{[](const Point& p) { return p; }, DecoderClass::Cont, {"identity", {}}};
  r.plan.rule = [p](const QueryId& f) -> std::optional<QueryBlock> {
    if (!p->has_query(f)) return std::nullopt;
    return QueryBlock{{f}, [](std::span<const Value> v) { return v[0]; }};
  };
  r.plan.spec = {"identity", {}};
  return r;
}

Reduction compose(const Reduction& first, const Reduction& second) {
  if (first.target->id() != second.source->id())
    throw Error(Errc::ProblemMismatch, "cannot compose " + first.name + " (target " + first.target->id() + ") with " +
                                           second.name + " (source " + second.source->id() + ")");
  const bool same_space = first.source->output_space().same_as(second.target->output_space());
  const DecoderClass tag = decoder_compose_class(first.decoder.tag, second.decoder.tag, same_space);

  Reduction r;
  r.name = second.name + " . " + first.name;
  r.source = first.source;
  r.target = second.target;
  r.encoder = [e1 = first.encoder, e2 = second.encoder](const InputPtr& in) { return e2(e1(in)); };
  r.encoder_spec = {"composite", {{"first", first.name}, {"second", second.name}}};
  r.decoder = Decoder{[d1 = first.decoder.map, d2 = second.decoder.map](const Point& p) { return d1(d2(p)); }, tag,
                      {"composite", {{"first", first.name}, {"second", second.name}}}};
  r.plan.rule = [p1 = first.plan.rule, p2 = second.plan.rule](const QueryId& f) -> std::optional<QueryBlock> {
    const auto outer = p2(f);
    if (!outer) return std::nullopt;
    std::vector<QueryBlock> inner;
    inner.reserve(outer->sources.size());
    QueryBlock out;
    for (const auto& g : outer->sources) {
      auto block = p1(g);
      if (!block) return std::nullopt;
      out.sources.insert(out.sources.end(), block->sources.begin(), block->sources.end());
      inner.push_back(std::move(*block));
    }
    out.combiner = [inner = std::move(inner), theta = outer->combiner](std::span<const Value> values) {
      std::vector<Value> mid;
      mid.reserve(inner.size());
      std::size_t offset = 0;
      for (const auto& block : inner) {
        mid.push_back(block.combiner(values.subspan(offset, block.sources.size())));
        offset += block.sources.size();
      }
      return theta(mid);
    };
    return out;
  };
  r.plan.spec = {"composite", {{"first", first.name}, {"second", second.name}}};
  r.parts = {first, second};
  return r;
}

namespace {

struct SampleOutcome {
  std::size_t queries = 0;
  std::size_t target_failures = 0;
  std::size_t query_failures = 0;
  double max_discrepancy = 0.0;
  std::vector<std::string> failures;
};

double threshold(bool exact, double tol) { return exact ? 0.0 : tol; }

SampleOutcome verify_sample(const Reduction& r, const VerifyOptions& o, std::size_t i) {
  SampleOutcome out;
  std::mt19937_64 rng(o.seed + i);
  try {
    const InputPtr a = r.source->sample_input(rng);
    const InputPtr ea = r.encoder(a);
    const Point want = r.source->target(*a);
    const Point got = r.decoder.map(r.target->target(*ea));
    const double d = r.source->output_space().distance(want, got);
    out.max_discrepancy = std::max(out.max_discrepancy, d);
    if (d > threshold(want.is_exact() && got.is_exact(), o.tol)) {
      ++out.target_failures;
      out.failures.push_back("target relation fails on " + a->describe() + ": " + want.to_string() + " vs " +
                             got.to_string());
    }
    for (const auto& f : r.target->sample_queries(rng, o.queries_per_sample)) {
      ++out.queries;
      const auto block = r.plan.rule(f);
      if (!block || block->sources.empty()) {
        ++out.query_failures;
        out.failures.push_back("no plan block for " + f.to_string());
        continue;
      }
      std::vector<Value> answers;
      answers.reserve(block->sources.size());
      for (const auto& g : block->sources) answers.push_back(r.source->evaluate(g, *a));
      const Value sim = block->combiner(answers);
      const Value direct = r.target->evaluate(f, *ea);
      const double dq = abs_diff(sim, direct);
      out.max_discrepancy = std::max(out.max_discrepancy, dq);
      if (dq > threshold(sim.is_exact() && direct.is_exact(), o.tol)) {
        ++out.query_failures;
        out.failures.push_back(f.to_string() + " on " + a->describe() + ": simulated " + sim.to_string() +
                               ", direct " + direct.to_string());
      }
    }
  } catch (const Error& e) {
    ++out.target_failures;
    out.failures.push_back(std::string("sample ") + std::to_string(i) + ": " + e.what());
  }
  return out;
}

}  // namespace

VerificationReport verify_reduction(const Reduction& r, const VerifyOptions& o) {
  if (o.samples == 0) throw Error(Errc::InvalidArgument, "verify_reduction needs at least one sample");
  std::vector<SampleOutcome> outcomes(o.samples);
  kernels::parallel_for(o.samples, o.exec, [&](std::size_t i) { outcomes[i] = verify_sample(r, o, i); });

  VerificationReport report;
  report.samples = o.samples;
  report.tolerance = o.tol;
  for (const auto& s : outcomes) {
    report.queries_checked += s.queries;
    report.target_failures += s.target_failures;
    report.query_failures += s.query_failures;
    report.max_discrepancy = std::max(report.max_discrepancy, s.max_discrepancy);
    for (const auto& f : s.failures)
      if (report.failures.size() < 8) report.failures.push_back(f);
  }
  report.pass = report.target_failures == 0 && report.query_failures == 0 && report.max_discrepancy <= o.tol;
  return report;
}

VerifiedReduction verified(Reduction r, const VerifyOptions& options) {
  auto report = verify_reduction(r, options);
  return {std::move(r), std::move(report)};
}

namespace {

class PullbackSession final : public Session {
 public:
  PullbackSession(const Reduction& r, std::unique_ptr<Session> inner) : r_(r), inner_(std::move(inner)) {}

  Decision next(const std::optional<Value>& answer) override {
    if (!started_) {
      started_ = true;
      return advance(inner_->next(std::nullopt));
    }
    answers_.push_back(*answer);
    if (answers_.size() < block_.sources.size()) return block_.sources[answers_.size()];
    const Value simulated = block_.combiner(answers_);
    answers_.clear();
    return advance(inner_->next(simulated));
  }

 private:
  Decision advance(Decision d) {
    if (auto* out = std::get_if<Point>(&d)) return r_.decoder.map(*out);
    const auto& f = std::get<QueryId>(d);
    auto block = r_.plan.rule(f);
    if (!block || block->sources.empty())
      throw Error(Errc::PlanGap, f.to_string() + " is not covered by " + r_.name);
    block_ = std::move(*block);
    return block_.sources.front();
  }

  const Reduction& r_;
  std::unique_ptr<Session> inner_;
  QueryBlock block_;
  std::vector<Value> answers_;
  bool started_ = false;
};

}  // namespace

GeneralAlgorithm pullback_algorithm(const Reduction& r, const GeneralAlgorithm& alg) {
  auto keep = std::make_shared<const Reduction>(r);
  auto start = alg.start;
  return GeneralAlgorithm{"pullback(" + alg.name + ")",
                          [keep, start]() -> std::unique_ptr<Session> {
                            struct Owning final : Session {
                              std::shared_ptr<const Reduction> r;
                              PullbackSession inner;
                              Owning(std::shared_ptr<const Reduction> red, std::unique_ptr<Session> s)
                                  : r(std::move(red)), inner(*r, std::move(s)) {}
                              Decision next(const std::optional<Value>& a) override { return inner.next(a); }
                            };
                            return std::make_unique<Owning>(keep, start());
                          },
                          std::max(alg.budget, kDefaultBudget)};
}

Tower pullback_tower(const Reduction& r, const Tower& t) {
  auto keep = std::make_shared<const Reduction>(r);
  return Tower{"pullback(" + t.name + ")", t.height,
               [keep, stage = t.stage](const MultiIndex& idx) { return pullback_algorithm(*keep, stage(idx)); }};
}

Feasibility structural_feasibility(const Problem& source, const Problem& target) {
  if (target.has_queries() && !source.has_queries()) return Feasibility::Infeasible;
  return Feasibility::Unknown;
}

}  // namespace sciwb
