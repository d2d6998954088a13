#include "tft/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

namespace tft {

namespace {

// Runs fn(0..n-1) on a small thread pool. The first exception (lowest
// index) is rethrown after all workers finish.
void ParallelFor(size_t n, const std::function<void(size_t)>& fn) {
  const size_t workers =
      std::min<size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i; (i = next.fetch_add(1)) < n;) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <typename E>
[[noreturn]] void Rethrow(const std::string& where, const E& e) {
  throw E(where + ": " + e.what());
}

class Evaluator {
 public:
  Evaluator(const FaultTree& tree, MissionTime t, const AnalysisConfig& config,
            const std::optional<Forcing>& forcing,
            std::vector<Diagnostic>* notes)
      : tree_(tree),
        t_(t),
        config_(config),
        forcing_(forcing),
        notes_(notes),
        saturate_(config.clamp || forcing.has_value()) {}

  Tfn Probability(const std::string& id) {
    if (const BasicEvent* e = tree_.FindEvent(id)) {
      if (auto forced = Forced(id)) return *forced;
      return RateToProbability(LeafRate(*e), t_);
    }
    const Gate& g = *tree_.FindGate(id);
    try {
      return GateProbability(g);
    } catch (const SaturationError& e) {
      Rethrow("gate " + g.id, e);
    } catch (const DegeneratePoleError& e) {
      Rethrow("gate " + g.id, e);
    } catch (const DomainError& e) {
      Rethrow("gate " + g.id, e);
    }
  }

 private:
  std::optional<Tfn> Forced(const std::string& id) const {
    if (!forcing_ || forcing_->event != id) return std::nullopt;
    return forcing_->occurred ? Tfn(1, 1, 1) : Tfn(0, 0, 0);
  }

  Tfn LeafRate(const BasicEvent& e) const {
    return e.Rate(config_.spread, config_.custom_spread);
  }

  // Rate of a child feeding a temporal gate.
  Tfn Rate(const std::string& id) {
    if (const BasicEvent* e = tree_.FindEvent(id); e && !Forced(id))
      return LeafRate(*e);
    return ProbabilityToRate(Probability(id), t_, saturate_);
  }

  Tfn GateProbability(const Gate& g) {
    if (IsTemporal(g.kind) && t_.hours() == 0) {
      // Nothing can occur by t = 0; skip the rate conversion, which is
      // undefined there.
      return Tfn(0, 0, 0);
    }
    std::vector<Tfn> inputs;
    inputs.reserve(g.children.size());
    for (const std::string& c : g.children)
      inputs.push_back(IsTemporal(g.kind) ? Rate(c) : Probability(c));
    GateNotes gate_notes;
    const GateOptions options{config_.clamp};
    Tfn out;
    switch (g.kind) {
      case GateKind::kAnd:
        out = FuzzyAnd(inputs);
        break;
      case GateKind::kOr:
        out = FuzzyOr(inputs);
        break;
      case GateKind::kPand:
        out = FuzzyPand(inputs, t_, options, &gate_notes);
        break;
      case GateKind::kPor:
        out = FuzzyPor(inputs, t_, options, &gate_notes);
        break;
    }
    Note(g.id, gate_notes);
    return out;
  }

  void Note(const std::string& id, const GateNotes& n) {
    if (!notes_) return;
    const std::string at = " at t=" + std::to_string(t_.hours());
    if (n.perturbed_poles)
      notes_->push_back({Severity::kWarning, "perturbed-poles", id,
                         "near-duplicate poles were jittered" + at});
    if (n.clamped)
      notes_->push_back({Severity::kWarning, "clamped", id,
                         "a bound was clamped into [0, 1]" + at});
    if (n.quadrature)
      notes_->push_back({Severity::kWarning, "quadrature", id,
                         "numerical integration was used" + at});
  }

  const FaultTree& tree_;
  MissionTime t_;
  const AnalysisConfig& config_;
  const std::optional<Forcing>& forcing_;
  std::vector<Diagnostic>* notes_;
  bool saturate_;
};

double CrispNode(const FaultTree& tree, const std::string& id, double t,
                 bool clamp) {
  if (const BasicEvent* e = tree.FindEvent(id))
    return -std::expm1(-e->PeakRate() * t);
  const Gate& g = *tree.FindGate(id);
  if (IsTemporal(g.kind) && t == 0) return 0;
  std::vector<double> in;
  for (const std::string& c : g.children) {
    if (!IsTemporal(g.kind)) {
      in.push_back(CrispNode(tree, c, t, clamp));
    } else if (const BasicEvent* e = tree.FindEvent(c)) {
      in.push_back(e->PeakRate());
    } else {
      in.push_back(ProbabilityToRate(Tfn::Crisp(CrispNode(tree, c, t, clamp)),
                                     MissionTime(t), clamp)
                       .peak());
    }
  }
  // The fuzzy temporal gates accept zero rates, which saturation can
  // produce; on crisp inputs they reduce to the crisp formulas.
  std::vector<Tfn> crisp;
  for (double v : in) crisp.push_back(Tfn::Crisp(v));
  switch (g.kind) {
    case GateKind::kAnd:
      return CrispAnd(in);
    case GateKind::kOr:
      return CrispOr(in);
    case GateKind::kPand:
      return FuzzyPand(crisp, MissionTime(t)).peak();
    case GateKind::kPor:
      return FuzzyPor(crisp, MissionTime(t)).peak();
  }
  return 0;
}

// Drops repeated notes (same code and node) keeping the first.
void Dedupe(std::vector<Diagnostic>& diags) {
  std::vector<Diagnostic> out;
  for (Diagnostic& d : diags) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const auto& o) {
      return o.code == d.code && o.node_id == d.node_id;
    });
    if (!seen) out.push_back(std::move(d));
  }
  diags = std::move(out);
}

}  // namespace

AnalysisConfig AnalysisConfig::FromTree(const FaultTree& tree) {
  const Directive& d = tree.directive();
  AnalysisConfig c;
  c.times = d.times;
  c.spread = d.spread;
  c.custom_spread = d.custom_spread;
  c.clamp = d.clamp;
  c.importance_time = d.importance_time;
  return c;
}

void AnalysisConfig::Check() const {
  if (times.empty()) throw DomainError("no mission times given");
  for (size_t i = 0; i < times.size(); ++i) {
    MissionTime{times[i]};
    if (i > 0 && !(times[i] > times[i - 1]))
      throw DomainError("mission times must be strictly increasing");
  }
  SpreadPercent(spread, custom_spread);
  if (importance) {
    if (!importance_time)
      throw DomainError("importance analysis needs an importance time");
    MissionTime{*importance_time};
  }
}

Tfn Evaluate(const FaultTree& tree, MissionTime t, const AnalysisConfig& config,
             const std::optional<Forcing>& forcing,
             std::vector<Diagnostic>* notes) {
  if (forcing && !tree.FindEvent(forcing->event))
    throw DomainError("unknown basic event '" + forcing->event + "'");
  return Evaluator(tree, t, config, forcing, notes).Probability(tree.top());
}

double EvaluatePeak(const FaultTree& tree, MissionTime t, bool clamp) {
  return CrispNode(tree, tree.top(), t.hours(), clamp);
}

double FuzzyImportance(const FaultTree& tree, const std::string& event,
                       MissionTime t, const AnalysisConfig& config) {
  const Tfn on = Evaluate(tree, t, config, Forcing{event, true});
  const Tfn off = Evaluate(tree, t, config, Forcing{event, false});
  return Distance(on, off);
}

std::vector<ImportanceRow> RankEvents(std::vector<ImportanceRow> fims) {
  std::stable_sort(fims.begin(), fims.end(),
                   [](const ImportanceRow& a, const ImportanceRow& b) {
                     return a.fim > b.fim;
                   });
  int rank = 0;
  double leader = 0;
  for (size_t i = 0; i < fims.size(); ++i) {
    if (i == 0 || std::abs(leader - fims[i].fim) >= kRankTieTolerance) {
      ++rank;
      leader = fims[i].fim;
    }
    fims[i].rank = rank;
  }
  return fims;
}

std::vector<ImportanceRow> ImportanceTable(const FaultTree& tree,
                                           MissionTime t,
                                           const AnalysisConfig& config) {
  const auto& events = tree.events();
  std::vector<ImportanceRow> rows(events.size());
  ParallelFor(events.size(), [&](size_t i) {
    rows[i].event_id = events[i].id;
    rows[i].fim = FuzzyImportance(tree, events[i].id, t, config);
  });
  return RankEvents(std::move(rows));
}

AnalysisReport Sweep(const FaultTree& tree, const AnalysisConfig& config) {
  config.Check();
  AnalysisReport report;
  report.tree_name = tree.name();
  report.diagnostics = tree.diagnostics();

  const size_t n = config.times.size();
  report.entries.resize(n);
  std::vector<std::vector<Diagnostic>> notes(n);
  ParallelFor(n, [&](size_t i) {
    const double t = config.times[i];
    const Tfn te = Evaluate(tree, MissionTime(t), config, std::nullopt,
                            &notes[i]);
    report.entries[i] = {t, te, DefuzzifyCentroid(te), te.peak()};
  });
  for (auto& list : notes)
    report.diagnostics.insert(report.diagnostics.end(), list.begin(),
                              list.end());

  if (config.importance) {
    report.importance_time = config.importance_time;
    report.importance =
        ImportanceTable(tree, MissionTime(*config.importance_time), config);
  }
  Dedupe(report.diagnostics);
  return report;
}

}  // namespace tft
