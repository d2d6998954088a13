#include "tft/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "tft/gates.hpp"

namespace tft {

namespace {

constexpr double kNever = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kBlock = 1 << 16;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Flattened tree in post-order; children precede parents.
struct Node {
  bool leaf = false;
  GateKind kind = GateKind::kAnd;
  int event = -1;  // index into the leaf table
  std::vector<int> children;
};

struct Program {
  std::vector<Node> nodes;
  std::vector<double> rates;
  std::vector<std::uint64_t> keys;
};

int Compile(const FaultTree& tree, const std::string& id, std::uint64_t seed,
            Program& p, std::map<std::string, int, std::less<>>& leaves) {
  Node n;
  if (const BasicEvent* e = tree.FindEvent(id)) {
    n.leaf = true;
    auto [it, fresh] = leaves.emplace(id, static_cast<int>(p.rates.size()));
    if (fresh) {
      p.rates.push_back(e->PeakRate());
      p.keys.push_back(StreamKey(seed, id));
    }
    n.event = it->second;
  } else {
    const Gate& g = *tree.FindGate(id);
    n.kind = g.kind;
    for (const std::string& c : g.children)
      n.children.push_back(Compile(tree, c, seed, p, leaves));
  }
  p.nodes.push_back(std::move(n));
  return static_cast<int>(p.nodes.size()) - 1;
}

double Combine(const Node& n, const std::vector<double>& times) {
  const auto& ch = n.children;
  switch (n.kind) {
    case GateKind::kAnd: {
      double v = 0;
      for (int c : ch) v = std::max(v, times[c]);
      return v;
    }
    case GateKind::kOr: {
      double v = kNever;
      for (int c : ch) v = std::min(v, times[c]);
      return v;
    }
    case GateKind::kPand: {
      for (size_t i = 0; i < ch.size(); ++i) {
        if (times[ch[i]] == kNever) return kNever;
        if (i > 0 && !(times[ch[i]] > times[ch[i - 1]])) return kNever;
      }
      return times[ch.back()];
    }
    case GateKind::kPor: {
      const double first = times[ch[0]];
      if (first == kNever) return kNever;
      for (size_t i = 1; i < ch.size(); ++i)
        if (!(first < times[ch[i]])) return kNever;
      return first;
    }
  }
  return kNever;
}

SimulationEstimate Run(const Program& p, const SimulationConfig& config) {
  const std::uint64_t n = config.samples;
  const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
  const size_t workers = std::min<std::uint64_t>(
      blocks, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> hits{0};
  auto work = [&] {
    std::vector<double> times(p.nodes.size());
    std::uint64_t local = 0;
    for (std::uint64_t b; (b = next.fetch_add(1)) < blocks;) {
      const std::uint64_t end = std::min(n, (b + 1) * kBlock);
      for (std::uint64_t i = b * kBlock; i < end; ++i) {
        for (size_t k = 0; k < p.nodes.size(); ++k) {
          const Node& node = p.nodes[k];
          if (node.leaf) {
            const double x =
                SampleFailureTime(p.keys[node.event], i, p.rates[node.event]);
            times[k] = x <= config.t ? x : kNever;
          } else {
            times[k] = Combine(node, times);
          }
        }
        if (times.back() <= config.t) ++local;
      }
    }
    hits += local;
  };
  {
    std::vector<std::jthread> pool;
    for (size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  SimulationEstimate est;
  est.samples = n;
  est.probability = static_cast<double>(hits.load()) / static_cast<double>(n);
  est.std_error =
      std::sqrt(est.probability * (1 - est.probability) / static_cast<double>(n));
  return est;
}

}  // namespace

void SimulationConfig::Check() const {
  if (samples == 0) throw DomainError("at least one sample is required");
  MissionTime{t};
}

std::uint64_t StreamKey(std::uint64_t seed, std::string_view event_id) {
  return SplitMix64(seed ^ Fnv1a(event_id));
}

double SampleFailureTime(std::uint64_t key, std::uint64_t index, double rate) {
  if (rate <= 0) return kNever;
  const std::uint64_t bits = SplitMix64(key + index * kGolden);
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
  return -std::log1p(-u) / rate;
}

SimulationEstimate SimulateTree(const FaultTree& tree,
                                const SimulationConfig& config) {
  config.Check();
  Program p;
  std::map<std::string, int, std::less<>> leaves;
  Compile(tree, tree.top(), config.seed, p, leaves);
  return Run(p, config);
}

SimulationEstimate SimulateGate(GateKind kind, std::span<const double> rates,
                                const SimulationConfig& config) {
  config.Check();
  if (rates.empty()) throw DomainError("gate needs at least one input");
  if (IsTemporal(kind) && rates.size() < 2)
    throw DomainError(std::string(ToString(kind)) +
                      " gate needs at least two inputs");
  Program p;
  Node gate;
  gate.kind = kind;
  for (size_t i = 0; i < rates.size(); ++i) {
    if (!(rates[i] > 0) || !std::isfinite(rates[i]))
      throw DomainError("rates must be positive");
    Node leaf;
    leaf.leaf = true;
    leaf.event = static_cast<int>(i);
    p.rates.push_back(rates[i]);
    p.keys.push_back(StreamKey(config.seed, "e" + std::to_string(i + 1)));
    p.nodes.push_back(leaf);
    gate.children.push_back(static_cast<int>(i));
  }
  p.nodes.push_back(gate);
  return Run(p, config);
}

}  // namespace tft
