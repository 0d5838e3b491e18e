#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "goldnet/errors.hpp"
#include "goldnet/format.hpp"
#include "goldnet/goldbach.hpp"
#include "goldnet/graph.hpp"
#include "goldnet/primes.hpp"
#include "goldnet/rng.hpp"

namespace goldnet {

// Selection exponent. The infinite limits pick the pair with the largest
// (+inf) or smallest (-inf) spread deterministically.
class AlphaParam {
 public:
  enum class Kind { finite, plus_infinity, minus_infinity };

  static AlphaParam finite(double value) {
    if (!std::isfinite(value)) throw InvalidConfig("finite alpha required, got " + format_double(value));
    return AlphaParam(Kind::finite, value);
  }
  static AlphaParam plus_infinity() { return AlphaParam(Kind::plus_infinity, INFINITY); }
  static AlphaParam minus_infinity() { return AlphaParam(Kind::minus_infinity, -INFINITY); }

  // Accepts a decimal number, "inf", "+inf" or "-inf".
  static AlphaParam parse(std::string_view text) {
    if (text == "inf" || text == "+inf") return plus_infinity();
    if (text == "-inf") return minus_infinity();
    double v = 0;
    if (!parse_double(text, v) || !std::isfinite(v)) {
      throw InvalidConfig("cannot parse alpha '" + std::string(text) + "'");
    }
    return finite(v);
  }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  // +-infinity for the limits
  double value() const { return value_; }

  std::string repr() const {
    switch (kind_) {
      case Kind::plus_infinity: return "+inf";
      case Kind::minus_infinity: return "-inf";
      default: return format_double(value_);
    }
  }

  friend bool operator==(const AlphaParam&, const AlphaParam&) = default;
  friend auto operator<=>(const AlphaParam& a, const AlphaParam& b) { return a.value_ <=> b.value_; }

 private:
  AlphaParam(Kind k, double v) : kind_(k), value_(v) {}
  Kind kind_;
  double value_;
};

// Cumulative selection weights for one decomposition under one alpha.
// Weights are delta^alpha / max, so the largest weight is exactly 1.
class SelectionWeights {
 public:
  SelectionWeights() = default;
  SelectionWeights(const Decomposition& d, const AlphaParam& alpha) { reset(d, alpha); }

  void reset(const Decomposition& d, const AlphaParam& alpha) {
    cumulative_.clear();
    kind_ = alpha.kind();
    count_ = d.omega();
    if (!alpha.is_finite()) return;
    const double a = alpha.value();
    // pairs are ascending in p, so delta is descending: the extreme log
    // weight sits at one end
    const double log_front = a * std::log(double(d.pairs.front().delta));
    const double log_back = a * std::log(double(d.pairs.back().delta));
    const double max_log = std::max(log_front, log_back);
    double acc = 0.0;
    cumulative_.reserve(count_);
    for (const auto& pr : d.pairs) {
      acc += std::exp(a * std::log(double(pr.delta)) - max_log);
      cumulative_.push_back(acc);
    }
  }

  // Index of the pair whose cumulative slot contains draw in [0, 1).
  std::size_t select(double draw) const {
    switch (kind_) {
      case AlphaParam::Kind::plus_infinity: return 0;
      case AlphaParam::Kind::minus_infinity: return count_ - 1;
      default: break;
    }
    const double target = draw * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    return std::min<std::size_t>(it - cumulative_.begin(), count_ - 1);
  }

  // Normalized probability of pair i (finite alpha only).
  double probability(std::size_t i) const {
    if (kind_ != AlphaParam::Kind::finite) {
      return i == select(0.0) ? 1.0 : 0.0;
    }
    const double prev = i == 0 ? 0.0 : cumulative_[i - 1];
    return (cumulative_[i] - prev) / cumulative_.back();
  }

  bool needs_draw() const { return kind_ == AlphaParam::Kind::finite; }

 private:
  AlphaParam::Kind kind_ = AlphaParam::Kind::finite;
  std::size_t count_ = 0;
  std::vector<double> cumulative_;
};

inline GoldbachPair select_pair(const Decomposition& d, const AlphaParam& alpha, double rng_draw) {
  return d.pairs[SelectionWeights(d, alpha).select(rng_draw)];
}

struct PrimeEdge {
  std::uint32_t p = 0;
  std::uint32_t q = 0;
  std::uint64_t n = 0;  // even number the link stands for

  friend bool operator==(const PrimeEdge&, const PrimeEdge&) = default;
};

struct GrowthPoint {
  std::size_t links = 0;  // M
  std::size_t nodes = 0;  // N
};

// The prime network. Nodes get dense ids in order of first appearance, so
// every prefix of the edge sequence spans the node ids [0, N(prefix)).
class PrimeGraph {
 public:
  PrimeGraph() = default;
  PrimeGraph(AlphaParam alpha, std::uint64_t seed) : alpha_(alpha), seed_(seed) {}

  const AlphaParam& alpha() const { return alpha_; }
  std::uint64_t seed() const { return seed_; }

  std::size_t num_nodes() const { return labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const PrimeEdge> edges() const { return edges_; }
  // node id -> prime
  std::span<const std::uint32_t> labels() const { return labels_; }

  bool contains(std::uint32_t prime) const { return index_.contains(prime); }
  std::optional<NodeId> node_id(std::uint32_t prime) const {
    auto it = index_.find(prime);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // N after each insertion; entry i belongs to M = i + 1
  std::span<const std::uint32_t> node_counts() const { return node_counts_; }

  std::vector<GrowthPoint> growth_log() const {
    std::vector<GrowthPoint> out;
    out.reserve(node_counts_.size());
    for (std::size_t i = 0; i < node_counts_.size(); ++i) out.push_back({i + 1, node_counts_[i]});
    return out;
  }

  // prime -> ascending neighbor primes
  std::map<std::uint32_t, std::vector<std::uint32_t>> adjacency() const {
    std::map<std::uint32_t, std::vector<std::uint32_t>> adj;
    for (auto label : labels_) adj[label];
    for (const auto& e : edges_) {
      adj[e.p].push_back(e.q);
      adj[e.q].push_back(e.p);
    }
    for (auto& [_, nb] : adj) std::sort(nb.begin(), nb.end());
    return adj;
  }

  // Graph made of the first `edge_count` links, over node ids [0, N).
  SimpleGraph prefix_graph(std::size_t edge_count) const {
    edge_count = std::min(edge_count, edges_.size());
    const std::size_t n = edge_count == 0 ? 0 : node_counts_[edge_count - 1];
    std::vector<Edge> es(edge_ids_.begin(), edge_ids_.begin() + edge_count);
    return SimpleGraph(n, es);
  }
  SimpleGraph to_simple_graph() const { return prefix_graph(edges_.size()); }

  void add_edge(const GoldbachPair& pair, std::uint64_t n) {
    const NodeId a = intern(pair.p);
    const NodeId b = intern(pair.q);
    edges_.push_back({pair.p, pair.q, n});
    edge_ids_.emplace_back(a, b);
    node_counts_.push_back(static_cast<std::uint32_t>(labels_.size()));
  }

 private:
  NodeId intern(std::uint32_t prime) {
    auto [it, inserted] = index_.try_emplace(prime, static_cast<NodeId>(labels_.size()));
    if (inserted) labels_.push_back(prime);
    return it->second;
  }

  AlphaParam alpha_ = AlphaParam::finite(0.0);
  std::uint64_t seed_ = 0;
  std::vector<std::uint32_t> labels_;
  std::unordered_map<std::uint32_t, NodeId> index_;
  std::vector<PrimeEdge> edges_;
  std::vector<Edge> edge_ids_;
  std::vector<std::uint32_t> node_counts_;
};

struct MaxEven {
  std::uint64_t n_e = 8;
};
struct TargetNodes {
  std::size_t nodes = 2;
};
using StopRule = std::variant<MaxEven, TargetNodes>;

struct BuildConfig {
  AlphaParam alpha = AlphaParam::finite(0.0);
  StopRule stop = MaxEven{8};
  std::uint64_t seed = 0;
  std::vector<std::size_t> snapshot_nodes;

  void validate() const {
    if (const auto* m = std::get_if<MaxEven>(&stop)) {
      if (m->n_e < 8 || m->n_e % 2 != 0) {
        throw InvalidConfig("max_even must be an even number >= 8, got " + std::to_string(m->n_e));
      }
    } else if (std::get<TargetNodes>(stop).nodes < 2) {
      throw InvalidConfig("target_nodes must be >= 2");
    }
    for (std::size_t i = 1; i < snapshot_nodes.size(); ++i) {
      if (snapshot_nodes[i] <= snapshot_nodes[i - 1]) {
        throw InvalidConfig("snapshot node counts must be strictly increasing");
      }
    }
  }
};

// Largest even number any decomposition can use with this table.
inline std::uint64_t max_decomposable_even(const PrimeTable& table) {
  return (std::uint64_t{table.limit()} + 3) & ~std::uint64_t{1};
}

struct BuildOutcome {
  PrimeGraph graph;
  bool completed = true;
  std::string diagnostic;  // set when the sieve ran out first
};

namespace detail {

// One realization in progress; stepped once per even number.
class Realization {
 public:
  explicit Realization(const BuildConfig& cfg) : cfg_(cfg), rng_(cfg.seed), graph_(cfg.alpha, cfg.seed) {}

  bool done() const { return done_; }

  bool wants(std::uint64_t n) {
    if (done_) return false;
    if (const auto* m = std::get_if<MaxEven>(&cfg_.stop); m && n > m->n_e) done_ = true;
    return !done_;
  }

  void step(const Decomposition& d, const SelectionWeights& w) {
    const double draw = w.needs_draw() ? rng_.uniform01() : 0.0;
    graph_.add_edge(d.pairs[w.select(draw)], d.n);
    if (const auto* t = std::get_if<TargetNodes>(&cfg_.stop); t && graph_.num_nodes() >= t->nodes) {
      done_ = true;
    }
  }

  BuildOutcome finish(std::uint64_t next_n, const PrimeTable& table) {
    BuildOutcome out;
    out.completed = done_;
    if (!done_) {
      out.diagnostic = "sieve exhausted: limit " + std::to_string(table.limit()) + " covers even numbers up to " +
                       std::to_string(next_n - 2) + "; reached N=" + std::to_string(graph_.num_nodes()) +
                       " M=" + std::to_string(graph_.num_edges()) + " with alpha=" + cfg_.alpha.repr() +
                       " seed=" + std::to_string(cfg_.seed);
    }
    out.graph = std::move(graph_);
    return out;
  }

 private:
  const BuildConfig& cfg_;
  Rng rng_;
  PrimeGraph graph_;
  bool done_ = false;
};

}  // namespace detail

// Builds several realizations in one ascending pass over the even numbers,
// decomposing each number once and computing selection weights once per
// distinct alpha. Each outcome is identical to a standalone build() of its
// config. Realizations that run past the sieve come back with
// completed == false.
inline std::vector<BuildOutcome> build_many(std::span<const BuildConfig> cfgs, const PrimeTable& table) {
  for (const auto& c : cfgs) c.validate();
  std::vector<detail::Realization> runs;
  runs.reserve(cfgs.size());
  for (const auto& c : cfgs) runs.emplace_back(c);

  // group realizations by alpha, preserving order
  std::vector<AlphaParam> alphas;
  std::vector<std::size_t> group(cfgs.size());
  for (std::size_t i = 0; i < cfgs.size(); ++i) {
    auto it = std::find(alphas.begin(), alphas.end(), cfgs[i].alpha);
    group[i] = static_cast<std::size_t>(it - alphas.begin());
    if (it == alphas.end()) alphas.push_back(cfgs[i].alpha);
  }

  const std::uint64_t last_even = max_decomposable_even(table);
  Decomposition d;
  std::vector<SelectionWeights> weights(alphas.size());
  std::vector<char> active(alphas.size());
  std::uint64_t n = 8;
  for (;; n += 2) {
    std::fill(active.begin(), active.end(), 0);
    bool any = false;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (runs[i].wants(n)) active[group[i]] = any = true;
    }
    if (!any || n > last_even) break;
    decompose_into(table, n, d);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      if (active[a]) weights[a].reset(d, alphas[a]);
    }
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (!runs[i].done()) runs[i].step(d, weights[group[i]]);
    }
  }

  std::vector<BuildOutcome> out;
  out.reserve(runs.size());
  for (auto& r : runs) out.push_back(r.finish(n, table));
  return out;
}

// Single realization; throws SieveExhausted if the stop rule cannot be met
// within the sieve.
inline PrimeGraph build(const BuildConfig& cfg, const PrimeTable& table) {
  auto outcome = std::move(build_many(std::span(&cfg, 1), table).front());
  if (!outcome.completed) throw SieveExhausted(outcome.diagnostic);
  return std::move(outcome.graph);
}

struct Snapshot {
  std::size_t checkpoint = 0;  // requested N*
  std::size_t nodes = 0;       // actual N, >= checkpoint
  std::size_t links = 0;       // M at that moment
  SimpleGraph graph;
};

// Graph state at the first moment the node count reaches each checkpoint;
// std::nullopt for checkpoints the realization never reached.
inline std::vector<std::optional<Snapshot>> snapshots(const PrimeGraph& g, std::span<const std::size_t> checkpoints) {
  std::vector<std::optional<Snapshot>> out;
  const auto counts = g.node_counts();
  for (std::size_t target : checkpoints) {
    auto it = std::lower_bound(counts.begin(), counts.end(), target,
                               [](std::uint32_t have, std::size_t want) { return have < want; });
    if (it == counts.end()) {
      out.emplace_back(std::nullopt);
      continue;
    }
    const std::size_t links = static_cast<std::size_t>(it - counts.begin()) + 1;
    out.emplace_back(Snapshot{target, *it, links, g.prefix_graph(links)});
  }
  return out;
}

inline std::vector<std::optional<Snapshot>> snapshots(const PrimeGraph& g, const BuildConfig& cfg) {
  return snapshots(g, cfg.snapshot_nodes);
}

// "# goldbach-net alpha=<repr> seed=<u64> M=<int> N=<int>" then "p q n" per
// line, ascending by n.
inline void write_edge_list(std::ostream& os, const PrimeGraph& g) {
  os << "# goldbach-net alpha=" << g.alpha().repr() << " seed=" << g.seed() << " M=" << g.num_edges()
     << " N=" << g.num_nodes() << '\n';
  for (const auto& e : g.edges()) os << e.p << ' ' << e.q << ' ' << e.n << '\n';
}

}  // namespace goldnet
