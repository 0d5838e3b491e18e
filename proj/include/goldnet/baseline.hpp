#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "goldnet/errors.hpp"
#include "goldnet/graph.hpp"
#include "goldnet/metrics.hpp"
#include "goldnet/rng.hpp"

namespace goldnet {

struct NullModelConfig {
  std::size_t n_nodes = 2;
  std::size_t m_edges = 0;
  std::uint64_t seed = 0;

  std::uint64_t max_edges() const { return std::uint64_t{n_nodes} * (n_nodes - 1) / 2; }

  void validate() const {
    if (n_nodes < 2) throw InvalidConfig("null model needs at least 2 nodes");
    if (m_edges > max_edges()) {
      throw InfeasibleNullModel("cannot place " + std::to_string(m_edges) + " edges on " + std::to_string(n_nodes) +
                                " nodes (maximum " + std::to_string(max_edges()) + ")");
    }
  }
};

namespace detail {

// Draws `count` distinct unordered pairs uniformly by rejection, in draw
// order.
inline std::vector<Edge> distinct_pairs(std::size_t n, std::size_t count, Rng& rng) {
  std::vector<Edge> out;
  out.reserve(count);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(count * 2);
  while (out.size() < count) {
    auto u = static_cast<NodeId>(rng.below(n));
    auto v = static_cast<NodeId>(rng.below(n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (seen.insert(std::uint64_t{u} * n + v).second) out.emplace_back(u, v);
  }
  return out;
}

}  // namespace detail

// Edges of a uniform G(N, M) sample in the order they were drawn. Above half
// density the complement is drawn instead and the remaining pairs are
// returned in lexicographic order.
inline std::vector<Edge> sample_gnm_edges(const NullModelConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const std::uint64_t max = cfg.max_edges();
  if (2 * std::uint64_t{cfg.m_edges} <= max) return detail::distinct_pairs(cfg.n_nodes, cfg.m_edges, rng);

  auto removed = detail::distinct_pairs(cfg.n_nodes, static_cast<std::size_t>(max - cfg.m_edges), rng);
  std::sort(removed.begin(), removed.end());
  std::vector<Edge> out;
  out.reserve(cfg.m_edges);
  auto skip = removed.begin();
  for (NodeId u = 0; u < cfg.n_nodes; ++u) {
    for (NodeId v = u + 1; v < cfg.n_nodes; ++v) {
      if (skip != removed.end() && *skip == Edge{u, v}) {
        ++skip;
      } else {
        out.emplace_back(u, v);
      }
    }
  }
  return out;
}

inline SimpleGraph sample_gnm(const NullModelConfig& cfg) {
  const auto edges = sample_gnm_edges(cfg);
  return SimpleGraph(cfg.n_nodes, edges);
}

inline MetricsReport baseline_report(const NullModelConfig& cfg,
                                     ClusteringConvention conv = ClusteringConvention::standard) {
  return compute_report(sample_gnm(cfg), conv);
}

// Same layout as the prime network's edge list: three integers per line,
// here "u v i" with i the 1-based draw index.
inline void write_gnm_edge_list(std::ostream& os, const NullModelConfig& cfg, const std::vector<Edge>& edges) {
  os << "# gnm seed=" << cfg.seed << " M=" << edges.size() << " N=" << cfg.n_nodes << '\n';
  std::size_t i = 0;
  for (const auto& [u, v] : edges) os << u << ' ' << v << ' ' << ++i << '\n';
}

}  // namespace goldnet
