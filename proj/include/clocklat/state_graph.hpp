#pragma once

#include "clocklat/graph_util.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <tuple>
#include <vector>

namespace clocklat {

/// A move from node `from` to node `to` along edge `label` of G.
struct LabeledEdge {
  std::size_t from;
  std::size_t to;
  std::size_t label;
  auto operator<=>(const LabeledEdge&) const = default;
};

/// Directed move graph over a sorted node set.
template <class Node>
struct StateGraph {
  std::vector<Node> nodes;
  std::vector<LabeledEdge> edges;

  std::optional<std::size_t> index_of(const Node& n) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), n);
    if (it == nodes.end() || !(*it == n)) return std::nullopt;
    return static_cast<std::size_t>(it - nodes.begin());
  }

  std::vector<graph::Arc> arcs() const {
    std::vector<graph::Arc> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.push_back({e.from, e.to});
    return out;
  }

  std::vector<std::size_t> out_degrees() const {
    std::vector<std::size_t> deg(nodes.size(), 0);
    for (const auto& e : edges) ++deg[e.from];
    return deg;
  }
};

}  // namespace clocklat
