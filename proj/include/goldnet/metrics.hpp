#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "goldnet/errors.hpp"
#include "goldnet/graph.hpp"

namespace goldnet {

// Convention for the number of possible links m_i among the k_i neighbors of
// node i.
enum class ClusteringConvention {
  standard,  // k(k-1)/2
  paper,     // k(k+1)/2
};

inline std::string_view to_string(ClusteringConvention c) {
  return c == ClusteringConvention::standard ? "standard" : "paper";
}

inline ClusteringConvention parse_clustering(std::string_view s) {
  if (s == "standard") return ClusteringConvention::standard;
  if (s == "paper") return ClusteringConvention::paper;
  throw InvalidConfig("unknown clustering convention '" + std::string(s) + "'");
}

struct DistanceStats {
  double d = 0.0;  // mean over reachable unordered pairs
  std::map<std::uint32_t, double> p_of_j;
  std::map<std::uint32_t, std::uint64_t> pair_counts;  // unordered pairs at distance j
  std::uint64_t reachable_pairs = 0;
  double reachable_fraction = 0.0;
  std::size_t giant_component_size = 0;
};

struct ClusteringStats {
  double C = 0.0;
  std::map<std::size_t, double> C_by_degree;  // only degrees that occur
};

struct DegreeStats {
  std::map<std::size_t, double> P_of_k;
  double mean_k = 0.0;
  double f_k = 0.0;
  std::size_t k_max = 0;
};

struct MetricsReport {
  std::size_t N = 0;
  std::size_t M = 0;
  double d = 0.0;
  std::map<std::uint32_t, double> p_of_j;
  double reachable_fraction = 0.0;
  std::size_t giant_component_size = 0;
  double C = 0.0;
  std::map<std::size_t, double> C_by_degree;
  std::map<std::size_t, double> P_of_k;
  double mean_k = 0.0;
  double f_k = 0.0;
  std::size_t k_max = 0;
  std::optional<double> r;  // absent when the edge-end degree variance is zero
  ClusteringConvention clustering_convention = ClusteringConvention::standard;
};

// Size of each connected component, largest first.
template <AdjacencyGraph G>
std::vector<std::size_t> component_sizes(const G& g) {
  const std::size_t n = g.num_nodes();
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack;
  std::vector<std::size_t> sizes;
  for (NodeId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    stack.assign(1, s);
    std::size_t size = 0;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      ++size;
      for (NodeId v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

// Exact all-pairs shortest distances by breadth-first search, run for 64
// sources at a time: bit b of a node's word says whether source b has
// reached it. One sweep over the edges advances all 64 searches by a level.
// Every unordered pair is counted from both ends, so counts are halved at
// the end.
template <AdjacencyGraph G>
DistanceStats shortest_distance_stats(const G& g) {
  const std::size_t n = g.num_nodes();
  if (n < 2) throw DegenerateGraph("shortest distances need at least 2 nodes, got " + std::to_string(n));

  std::vector<std::uint64_t> hist;  // ordered-pair counts by distance
  std::vector<std::uint64_t> visited(n), frontier(n), next(n);
  for (std::size_t base = 0; base < n; base += 64) {
    const std::size_t width = std::min<std::size_t>(64, n - base);
    const std::uint64_t full = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    std::fill(visited.begin(), visited.end(), 0);
    std::fill(frontier.begin(), frontier.end(), 0);
    for (std::size_t b = 0; b < width; ++b) visited[base + b] = frontier[base + b] = std::uint64_t{1} << b;
    for (std::size_t level = 1;; ++level) {
      std::uint64_t found = 0;
      for (NodeId v = 0; v < n; ++v) {
        const std::uint64_t open = ~visited[v] & full;
        if (open == 0) {
          next[v] = 0;
          continue;
        }
        std::uint64_t acc = 0;
        for (NodeId u : g.neighbors(v)) acc |= frontier[u];
        next[v] = acc & open;
        found += static_cast<std::uint64_t>(std::popcount(next[v]));
      }
      if (found == 0) break;
      if (level >= hist.size()) hist.resize(level + 1, 0);
      hist[level] += found;
      for (NodeId v = 0; v < n; ++v) visited[v] |= next[v];
      frontier.swap(next);
    }
  }

  DistanceStats out;
  out.giant_component_size = component_sizes(g).front();
  std::uint64_t weighted = 0;
  for (std::size_t j = 1; j < hist.size(); ++j) {
    if (hist[j] == 0) continue;
    const std::uint64_t pairs = hist[j] / 2;
    out.pair_counts[static_cast<std::uint32_t>(j)] = pairs;
    out.reachable_pairs += pairs;
    weighted += pairs * j;
  }
  if (out.reachable_pairs == 0) throw DegenerateGraph("graph has no connected pair of nodes");
  const double total = static_cast<double>(out.reachable_pairs);
  for (const auto& [j, c] : out.pair_counts) out.p_of_j[j] = static_cast<double>(c) / total;
  out.d = static_cast<double>(weighted) / total;
  const double all_pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  out.reachable_fraction = total / all_pairs;
  return out;
}

// Triangles through each node, by marking the neighbors of u and scanning
// the neighbor lists of those neighbors.
template <AdjacencyGraph G>
std::vector<std::uint64_t> triangles_per_node(const G& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::uint64_t> tri(n, 0);
  std::vector<char> mark(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) mark[v] = 1;
    std::uint64_t links = 0;
    for (NodeId v : g.neighbors(u)) {
      for (NodeId w : g.neighbors(v)) links += mark[w];
    }
    tri[u] = links / 2;
    for (NodeId v : g.neighbors(u)) mark[v] = 0;
  }
  return tri;
}

template <AdjacencyGraph G>
std::size_t degree_of(const G& g, NodeId v) {
  return static_cast<std::size_t>(std::ranges::distance(g.neighbors(v)));
}

// Per-node C_i = M_i / m_i; nodes with m_i = 0 count as 0 and stay in the
// average over all N nodes.
template <AdjacencyGraph G>
ClusteringStats clustering(const G& g, ClusteringConvention conv = ClusteringConvention::standard) {
  const std::size_t n = g.num_nodes();
  const auto tri = triangles_per_node(g);
  ClusteringStats out;
  std::map<std::size_t, std::pair<double, std::size_t>> by_degree;
  double sum = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const double k = static_cast<double>(degree_of(g, v));
    const double possible = conv == ClusteringConvention::standard ? k * (k - 1) / 2 : k * (k + 1) / 2;
    const double ci = possible > 0 ? static_cast<double>(tri[v]) / possible : 0.0;
    sum += ci;
    auto& bin = by_degree[degree_of(g, v)];
    bin.first += ci;
    ++bin.second;
  }
  out.C = n ? sum / static_cast<double>(n) : 0.0;
  for (const auto& [k, bin] : by_degree) out.C_by_degree[k] = bin.first / static_cast<double>(bin.second);
  return out;
}

template <AdjacencyGraph G>
DegreeStats degree_stats(const G& g) {
  const std::size_t n = g.num_nodes();
  if (n < 1) throw DegenerateGraph("degree statistics need at least 1 node");
  std::map<std::size_t, std::size_t> hist;
  std::uint64_t total = 0;
  DegreeStats out;
  for (NodeId v = 0; v < n; ++v) {
    const std::size_t k = degree_of(g, v);
    ++hist[k];
    total += k;
    out.k_max = std::max(out.k_max, k);
  }
  const double dn = static_cast<double>(n);
  out.mean_k = static_cast<double>(total) / dn;
  double var = 0.0;
  for (const auto& [k, c] : hist) {
    out.P_of_k[k] = static_cast<double>(c) / dn;
    const double dev = static_cast<double>(k) - out.mean_k;
    var += static_cast<double>(c) * dev * dev;
  }
  out.f_k = std::sqrt(var / dn);
  return out;
}

// Newman's degree correlation over links, each link counted once. Sums are
// accumulated in integers so the only rounding is in the final ratio.
template <AdjacencyGraph G>
std::optional<double> assortativity(const G& g) {
  using u128 = unsigned __int128;
  const std::size_t n = g.num_nodes();
  u128 sum_prod = 0, sum_half = 0, sum_sq = 0;  // sum jk, sum (j+k), sum (j^2+k^2)
  std::uint64_t m = 0;
  for (NodeId u = 0; u < n; ++u) {
    const std::uint64_t ju = degree_of(g, u);
    for (NodeId v : g.neighbors(u)) {
      if (v <= u) continue;
      const std::uint64_t kv = degree_of(g, v);
      sum_prod += u128(ju) * kv;
      sum_half += ju + kv;
      sum_sq += u128(ju) * ju + u128(kv) * kv;
      ++m;
    }
  }
  if (m == 0) return std::nullopt;
  // scale numerator and denominator by 4 M^2 to stay in integers:
  //   num = 4M sum(jk) - (sum(j+k))^2,  den = 2M sum(j^2+k^2) - (sum(j+k))^2
  const u128 mm = m;
  const u128 sq = sum_half * sum_half;
  const u128 num_pos = 4 * mm * sum_prod;
  const u128 den_pos = 2 * mm * sum_sq;
  if (den_pos <= sq) return std::nullopt;
  const long double den = static_cast<long double>(den_pos - sq);
  const long double num = num_pos >= sq ? static_cast<long double>(num_pos - sq)
                                        : -static_cast<long double>(sq - num_pos);
  return static_cast<double>(num / den);
}

template <AdjacencyGraph G>
MetricsReport compute_report(const G& g, ClusteringConvention conv = ClusteringConvention::standard) {
  MetricsReport r;
  r.N = g.num_nodes();
  r.M = g.num_edges();
  r.clustering_convention = conv;
  auto dist = shortest_distance_stats(g);
  r.d = dist.d;
  r.p_of_j = std::move(dist.p_of_j);
  r.reachable_fraction = dist.reachable_fraction;
  r.giant_component_size = dist.giant_component_size;
  auto cl = clustering(g, conv);
  r.C = cl.C;
  r.C_by_degree = std::move(cl.C_by_degree);
  auto deg = degree_stats(g);
  r.P_of_k = std::move(deg.P_of_k);
  r.mean_k = deg.mean_k;
  r.f_k = deg.f_k;
  r.k_max = deg.k_max;
  r.r = assortativity(g);
  return r;
}

}  // namespace goldnet
