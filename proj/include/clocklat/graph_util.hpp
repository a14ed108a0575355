#pragma once

// Thin wrappers over Boost.Graph for the handful of digraph queries the
// library needs. Vertices are 0..n-1, arcs may repeat (multigraphs).

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/connected_components.hpp>
#include <boost/graph/dijkstra_shortest_paths.hpp>
#include <boost/graph/strong_components.hpp>

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace clocklat::graph {

struct Arc {
  std::size_t from;
  std::size_t to;
};

struct Partition {
  std::vector<std::size_t> component_of;
  std::size_t count = 0;
};

namespace detail {
using Directed = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
using Undirected = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
using Weighted = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS, boost::no_property,
                                       boost::property<boost::edge_weight_t, long long>>;
}  // namespace detail

inline Partition strong_components(std::size_t n, std::span<const Arc> arcs) {
  detail::Directed g(n);
  for (const Arc& a : arcs) boost::add_edge(a.from, a.to, g);
  Partition p;
  p.component_of.assign(n, 0);
  if (n == 0) return p;
  std::vector<int> comp(n);
  p.count = static_cast<std::size_t>(boost::strong_components(
      g, boost::make_iterator_property_map(comp.begin(), boost::get(boost::vertex_index, g))));
  // Boost numbers SCCs in reverse topological order; renumber by first vertex.
  std::vector<std::size_t> remap(p.count, p.count);
  std::size_t next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto c = static_cast<std::size_t>(comp[v]);
    if (remap[c] == p.count) remap[c] = next++;
    p.component_of[v] = remap[c];
  }
  return p;
}

/// Components of the underlying undirected graph, numbered by smallest vertex.
inline Partition weak_components(std::size_t n, std::span<const Arc> arcs) {
  detail::Undirected g(n);
  for (const Arc& a : arcs) boost::add_edge(a.from, a.to, g);
  Partition p;
  p.component_of.assign(n, 0);
  if (n == 0) return p;
  std::vector<int> comp(n);
  p.count = static_cast<std::size_t>(boost::connected_components(g, comp.data()));
  std::vector<std::size_t> remap(p.count, p.count);
  std::size_t next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto c = static_cast<std::size_t>(comp[v]);
    if (remap[c] == p.count) remap[c] = next++;
    p.component_of[v] = remap[c];
  }
  return p;
}

inline bool is_strongly_connected(std::size_t n, std::span<const Arc> arcs) {
  return n == 0 || strong_components(n, arcs).count == 1;
}

/// Minimum total weight of a directed cycle; weights must be non-negative.
/// Returns nullopt for acyclic graphs.
inline std::optional<long long> min_weight_cycle(std::size_t n, std::span<const Arc> arcs,
                                                 std::span<const long long> weights) {
  detail::Weighted g(n);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    boost::add_edge(arcs[i].from, arcs[i].to, weights[i], g);
  }
  constexpr long long inf = std::numeric_limits<long long>::max() / 4;
  std::optional<long long> best;
  std::vector<long long> dist(n);
  for (std::size_t s = 0; s < n; ++s) {
    boost::dijkstra_shortest_paths(
        g, s,
        boost::distance_map(boost::make_iterator_property_map(dist.begin(), boost::get(boost::vertex_index, g)))
            .distance_inf(inf));
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (arcs[i].to != s || dist[arcs[i].from] >= inf) continue;
      long long w = dist[arcs[i].from] + weights[i];
      if (!best || w < *best) best = w;
    }
  }
  return best;
}

}  // namespace clocklat::graph
