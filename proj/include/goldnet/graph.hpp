#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <ranges>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "goldnet/errors.hpp"

namespace goldnet {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// What the metrics need from a graph: dense node ids [0, num_nodes()) and a
// neighbor range per node. Each undirected edge appears in both lists.
template <typename G>
concept AdjacencyGraph = requires(const G& g, NodeId v) {
  { g.num_nodes() } -> std::convertible_to<std::size_t>;
  { g.num_edges() } -> std::convertible_to<std::size_t>;
  { g.neighbors(v) } -> std::ranges::forward_range;
};

// Undirected simple graph in compressed sparse row form. Neighbor lists are
// sorted.
class SimpleGraph {
 public:
  SimpleGraph() : offsets_(1, 0) {}

  // Throws InvalidConfig on self-loops, out-of-range endpoints or duplicate
  // edges.
  SimpleGraph(std::size_t num_nodes, std::span<const Edge> edges)
      : offsets_(num_nodes + 1, 0), num_edges_(edges.size()) {
    for (const auto& [u, v] : edges) {
      if (u >= num_nodes || v >= num_nodes) throw InvalidConfig("edge endpoint out of range");
      if (u == v) throw InvalidConfig("self-loop on node " + std::to_string(u));
      ++offsets_[u + 1];
      ++offsets_[v + 1];
    }
    for (std::size_t i = 0; i < num_nodes; ++i) offsets_[i + 1] += offsets_[i];
    targets_.resize(offsets_.back());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
      targets_[cursor[u]++] = v;
      targets_[cursor[v]++] = u;
    }
    for (std::size_t i = 0; i < num_nodes; ++i) {
      auto first = targets_.begin() + offsets_[i];
      auto last = targets_.begin() + offsets_[i + 1];
      std::sort(first, last);
      if (std::adjacent_find(first, last) != last) {
        throw InvalidConfig("duplicate edge at node " + std::to_string(i));
      }
    }
  }

  std::size_t num_nodes() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return num_edges_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(NodeId u, NodeId v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // each undirected edge once, u < v, ascending
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (NodeId u = 0; u < num_nodes(); ++u) {
      for (NodeId v : neighbors(u)) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::size_t num_edges_ = 0;
};

static_assert(AdjacencyGraph<SimpleGraph>);

}  // namespace goldnet
