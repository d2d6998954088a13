#include <algorithm>
#include <cmath>
#include <functional>

#include "tft/tree.hpp"

namespace tft {

namespace {

Diagnostic MakeError(std::string code, std::string node, std::string message) {
  return {Severity::kError, std::move(code), std::move(node), std::move(message)};
}

Diagnostic MakeWarning(std::string code, std::string node,
                       std::string message) {
  return {Severity::kWarning, std::move(code), std::move(node),
          std::move(message)};
}

std::string SpreadProblem(double spread, bool custom) {
  try {
    SpreadPercent(spread, custom);
  } catch (const DomainError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

Tfn BasicEvent::Rate(double default_spread, bool allow_custom_spread) const {
  if (fuzzy_rate) return *fuzzy_rate;
  if (!crisp_rate) throw DomainError("basic event " + id + " has no rate");
  return Fuzzify(*crisp_rate,
                 SpreadPercent(spread.value_or(default_spread),
                               allow_custom_spread));
}

double BasicEvent::PeakRate() const {
  if (fuzzy_rate) return fuzzy_rate->peak();
  return crisp_rate.value_or(0.0);
}

bool HasErrors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) {
                       return d.severity == Severity::kError;
                     });
}

std::vector<Diagnostic> Validate(const TreeDocument& doc) {
  std::vector<Diagnostic> out;
  std::map<std::string, const BasicEvent*, std::less<>> events;
  std::map<std::string, const Gate*, std::less<>> gates;

  for (const BasicEvent& e : doc.events) {
    if (events.contains(e.id) || gates.contains(e.id)) {
      out.push_back(MakeError("duplicate-id", e.id,
                              "identifier '" + e.id + "' is declared twice"));
      continue;
    }
    events.emplace(e.id, &e);
  }
  for (const Gate& g : doc.gates) {
    if (events.contains(g.id) || gates.contains(g.id)) {
      out.push_back(MakeError("duplicate-id", g.id,
                              "identifier '" + g.id + "' is declared twice"));
      continue;
    }
    gates.emplace(g.id, &g);
  }

  const Directive& dir = doc.directive;
  if (auto p = SpreadProblem(dir.spread, dir.custom_spread); !p.empty())
    out.push_back(MakeError("invalid-directive", "", p));
  for (size_t i = 0; i < dir.times.size(); ++i) {
    const double t = dir.times[i];
    if (!(t >= 0) || !std::isfinite(t)) {
      out.push_back(MakeError("invalid-directive", "",
                              "mission times must be finite and >= 0"));
      break;
    }
    if (i > 0 && !(t > dir.times[i - 1])) {
      out.push_back(MakeError("invalid-directive", "",
                              "mission times must be strictly increasing"));
      break;
    }
  }
  if (dir.importance_time &&
      (!(*dir.importance_time >= 0) || !std::isfinite(*dir.importance_time)))
    out.push_back(MakeError("invalid-directive", "",
                            "importance time must be finite and >= 0"));

  for (const BasicEvent& e : doc.events) {
    if (e.fuzzy_rate) {
      if (!(e.fuzzy_rate->lower() > 0))
        out.push_back(MakeError("invalid-rate", e.id,
                                "fuzzy rate components must be positive"));
    } else if (!e.crisp_rate) {
      out.push_back(MakeError("invalid-rate", e.id, "missing rate"));
    } else if (!(*e.crisp_rate > 0) || !std::isfinite(*e.crisp_rate)) {
      out.push_back(MakeError("invalid-rate", e.id, "rate must be positive"));
    }
    if (e.spread) {
      if (auto p = SpreadProblem(*e.spread, dir.custom_spread); !p.empty())
        out.push_back(MakeError("invalid-rate", e.id, p));
    }
  }

  std::map<std::string, int, std::less<>> parents;
  for (const Gate& g : doc.gates) {
    const size_t n = g.children.size();
    if (n == 0) {
      out.push_back(MakeError("arity", g.id, "gate has no inputs"));
    } else if (IsTemporal(g.kind) && n < 2) {
      out.push_back(MakeError("arity", g.id,
                              std::string(ToString(g.kind)) +
                                  " gate needs at least two inputs"));
    } else if (n == 1) {
      out.push_back(MakeWarning("single-input", g.id,
                                std::string(ToString(g.kind)) +
                                    " gate has a single input"));
    }
    for (const std::string& c : g.children) {
      if (!events.contains(c) && !gates.contains(c)) {
        out.push_back(MakeError("unresolved-reference", g.id,
                                "reference to undeclared '" + c + "'"));
        continue;
      }
      ++parents[c];
    }
  }

  for (const auto& [id, count] : parents) {
    if (count < 2) continue;
    if (gates.contains(id)) {
      out.push_back(MakeError(
          "shared-gate", id,
          "gate feeds " + std::to_string(count) +
              " parents; shared intermediate gates are not supported"));
    } else {
      out.push_back(MakeWarning(
          "shared-event", id,
          "basic event feeds " + std::to_string(count) +
              " gates; quantification treats the occurrences as independent"));
    }
  }

  // Cycles: colour-marking depth-first search over gates.
  std::map<std::string, int, std::less<>> colour;  // 1 = open, 2 = done
  std::set<std::string, std::less<>> reported;
  std::function<void(const Gate&)> visit = [&](const Gate& g) {
    colour[g.id] = 1;
    for (const std::string& c : g.children) {
      auto it = gates.find(c);
      if (it == gates.end()) continue;
      const int state = colour[c];
      if (state == 1) {
        if (reported.insert(c).second)
          out.push_back(MakeError("cycle", c,
                                  "gate '" + c + "' is its own ancestor"));
      } else if (state == 0) {
        visit(*it->second);
      }
    }
    colour[g.id] = 2;
  };
  for (const Gate& g : doc.gates)
    if (colour[g.id] == 0) visit(g);

  if (doc.top.empty()) {
    out.push_back(MakeError("missing-top", "", "no top event declared"));
  } else if (!events.contains(doc.top) && !gates.contains(doc.top)) {
    out.push_back(MakeError("unresolved-reference", doc.top,
                            "top event '" + doc.top + "' is not declared"));
  } else {
    std::set<std::string, std::less<>> seen;
    std::vector<std::string> stack{doc.top};
    while (!stack.empty()) {
      std::string id = std::move(stack.back());
      stack.pop_back();
      if (!seen.insert(id).second) continue;
      if (auto it = gates.find(id); it != gates.end())
        for (const std::string& c : it->second->children)
          if (events.contains(c) || gates.contains(c)) stack.push_back(c);
    }
    for (const BasicEvent& e : doc.events)
      if (!seen.contains(e.id))
        out.push_back(MakeError("unreachable", e.id,
                                "basic event is not reachable from the top"));
    for (const Gate& g : doc.gates)
      if (!seen.contains(g.id))
        out.push_back(
            MakeError("unreachable", g.id, "gate is not reachable from the top"));
  }
  return out;
}

FaultTree::FaultTree(TreeDocument doc) : doc_(std::move(doc)) {
  for (size_t i = 0; i < doc_.events.size(); ++i)
    event_index_.emplace(doc_.events[i].id, i);
  for (size_t i = 0; i < doc_.gates.size(); ++i)
    gate_index_.emplace(doc_.gates[i].id, i);
}

FaultTree FaultTree::Build(TreeDocument doc) {
  std::vector<Diagnostic> diagnostics = Validate(doc);
  if (HasErrors(diagnostics)) throw ValidationError(std::move(diagnostics));
  FaultTree tree(std::move(doc));
  tree.warnings_ = std::move(diagnostics);
  return tree;
}

const BasicEvent* FaultTree::FindEvent(std::string_view id) const {
  auto it = event_index_.find(id);
  return it == event_index_.end() ? nullptr : &doc_.events[it->second];
}

const Gate* FaultTree::FindGate(std::string_view id) const {
  auto it = gate_index_.find(id);
  return it == gate_index_.end() ? nullptr : &doc_.gates[it->second];
}

}  // namespace tft
