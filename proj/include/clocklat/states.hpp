#pragma once

// Weights, compatible angular functions, counterclockwise moves, the move
// graph of compatible functions, invisible cycles and nilpotency degree.

#include "clocklat/error.hpp"
#include "clocklat/graph_util.hpp"
#include "clocklat/planar_map.hpp"
#include "clocklat/state_graph.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace clocklat {

/// Non-negative integers on vertices and faces of G.
struct Weight {
  std::vector<int> vertex;
  std::vector<int> face;

  long long vertex_total() const { return std::accumulate(vertex.begin(), vertex.end(), 0LL); }
  long long face_total() const { return std::accumulate(face.begin(), face.end(), 0LL); }

  bool characteristic() const {
    auto in01 = [](int x) { return x == 0 || x == 1; };
    return std::all_of(vertex.begin(), vertex.end(), in01) && std::all_of(face.begin(), face.end(), in01);
  }
  bool zero() const {
    auto z = [](int x) { return x == 0; };
    return std::all_of(vertex.begin(), vertex.end(), z) && std::all_of(face.begin(), face.end(), z);
  }

  bool operator==(const Weight&) const = default;
};

/// True iff the weight is non-negative and the vertex and face totals agree.
/// Throws MissingValue when the weight does not cover every vertex and face.
inline bool validate_weight(const PlanarMap& m, const Weight& w) {
  if (w.vertex.size() != m.num_vertices() || w.face.size() != m.num_faces()) {
    fail(Errc::MissingValue, "weight has " + std::to_string(w.vertex.size()) + " vertex and " +
                                 std::to_string(w.face.size()) + " face values, map has " +
                                 std::to_string(m.num_vertices()) + " and " + std::to_string(m.num_faces()));
  }
  auto neg = [](int x) { return x < 0; };
  if (std::any_of(w.vertex.begin(), w.vertex.end(), neg) || std::any_of(w.face.begin(), w.face.end(), neg)) {
    return false;
  }
  return w.vertex_total() == w.face_total();
}

/// Non-negative integers on angles (equivalently, arrows of the medial quiver).
struct AngularFunction {
  std::vector<int> values;

  int operator[](AngleId a) const { return values[a]; }
  std::size_t size() const { return values.size(); }
  auto operator<=>(const AngularFunction&) const = default;
};

/// Non-negative integers on edges of G (vertices of the medial quiver).
struct DimensionVector {
  std::vector<int> values;

  int operator[](EdgeId e) const { return values[e]; }
  std::size_t size() const { return values.size(); }
  long long total() const { return std::accumulate(values.begin(), values.end(), 0LL); }
  bool zero() const { return std::all_of(values.begin(), values.end(), [](int x) { return x == 0; }); }
  auto operator<=>(const DimensionVector&) const = default;
};

inline bool pointwise_leq(const DimensionVector& a, const DimensionVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

/// A connected planar map together with a valid weight.
class DecoratedGraph {
 public:
  DecoratedGraph(PlanarMap map, Weight weight) : map_(std::move(map)), quiver_(map_), weight_(std::move(weight)) {
    if (map_.num_edges() == 0 || !map_.connected()) {
      fail(Errc::NotConnected, "decorated graphs must be connected with at least one edge");
    }
    if (!validate_weight(map_, weight_)) {
      fail(Errc::InvalidWeight, "weight is negative somewhere or vertex total " +
                                    std::to_string(weight_.vertex_total()) + " differs from face total " +
                                    std::to_string(weight_.face_total()));
    }
  }

  const PlanarMap& map() const { return map_; }
  const MedialQuiver& quiver() const { return quiver_; }
  const Weight& weight() const { return weight_; }

  std::size_t num_angles() const { return map_.num_darts(); }
  std::size_t num_edges() const { return map_.num_edges(); }

 private:
  PlanarMap map_;
  MedialQuiver quiver_;
  Weight weight_;
};

inline bool is_compatible(const DecoratedGraph& G, const AngularFunction& g) {
  if (g.size() != G.num_angles()) return false;
  const auto& q = G.quiver();
  std::vector<long long> vsum(G.map().num_vertices(), 0), fsum(G.map().num_faces(), 0);
  for (AngleId a = 0; a < g.size(); ++a) {
    if (g[a] < 0) return false;
    vsum[q.vertex_of_arrow(a)] += g[a];
    fsum[q.face_of_arrow(a)] += g[a];
  }
  for (VertexId v = 0; v < vsum.size(); ++v) {
    if (vsum[v] != G.weight().vertex[v]) return false;
  }
  for (FaceId f = 0; f < fsum.size(); ++f) {
    if (fsum[f] != G.weight().face[f]) return false;
  }
  return true;
}

namespace detail {

// Depth-first assignment of angle values, vertex by vertex, with remaining
// vertex/face sums as bounds and forced values on the last angle of a vertex
// or face.
class CompatibleEnumerator {
 public:
  CompatibleEnumerator(const DecoratedGraph& G, std::size_t limit) : G_(G), limit_(limit) {
    const auto& m = G.map();
    for (VertexId v = 0; v < m.num_vertices(); ++v) {
      for (DartId d : m.vertex_darts(v)) order_.push_back(d);
    }
    rem_v_.assign(G.weight().vertex.begin(), G.weight().vertex.end());
    rem_f_.assign(G.weight().face.begin(), G.weight().face.end());
    left_v_.assign(m.num_vertices(), 0);
    left_f_.assign(m.num_faces(), 0);
    for (AngleId a = 0; a < G.num_angles(); ++a) {
      ++left_v_[G.quiver().vertex_of_arrow(a)];
      ++left_f_[G.quiver().face_of_arrow(a)];
    }
    current_.values.assign(G.num_angles(), 0);
  }

  std::vector<AngularFunction> run() {
    recurse(0);
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  void recurse(std::size_t pos) {
    if (found_.size() >= limit_) return;
    if (pos == order_.size()) {
      found_.push_back(current_);
      return;
    }
    AngleId a = order_[pos];
    VertexId v = G_.quiver().vertex_of_arrow(a);
    FaceId f = G_.quiver().face_of_arrow(a);
    long long lo = 0, hi = std::min(rem_v_[v], rem_f_[f]);
    if (left_v_[v] == 1) lo = std::max(lo, rem_v_[v]);
    if (left_f_[f] == 1) lo = std::max(lo, rem_f_[f]);
    if (left_v_[v] == 1) hi = std::min(hi, rem_v_[v]);
    if (left_f_[f] == 1) hi = std::min(hi, rem_f_[f]);
    --left_v_[v];
    --left_f_[f];
    for (long long x = lo; x <= hi; ++x) {
      current_.values[a] = static_cast<int>(x);
      rem_v_[v] -= x;
      rem_f_[f] -= x;
      recurse(pos + 1);
      rem_v_[v] += x;
      rem_f_[f] += x;
    }
    current_.values[a] = 0;
    ++left_v_[v];
    ++left_f_[f];
  }

  const DecoratedGraph& G_;
  std::size_t limit_;
  std::vector<AngleId> order_;
  std::vector<long long> rem_v_, rem_f_;
  std::vector<int> left_v_, left_f_;
  AngularFunction current_;
  std::vector<AngularFunction> found_;
};

}  // namespace detail

/// All compatible angular functions, in lexicographic order of their values.
inline std::vector<AngularFunction> enumerate_compatible(const DecoratedGraph& G) {
  return detail::CompatibleEnumerator(G, static_cast<std::size_t>(-1)).run();
}

inline std::optional<AngularFunction> first_compatible(const DecoratedGraph& G) {
  auto found = detail::CompatibleEnumerator(G, 1).run();
  if (found.empty()) return std::nullopt;
  return found.front();
}

inline void check_edge(const DecoratedGraph& G, EdgeId e) {
  if (e >= G.num_edges()) fail(Errc::UnknownEdge, "edge " + std::to_string(e) + " out of range");
}

/// Both arrows leaving e carry a positive value.
inline bool is_e_movable(const DecoratedGraph& G, const AngularFunction& g, EdgeId e) {
  check_edge(G, e);
  auto [a, b] = G.quiver().outgoing(e);
  return g[a] > 0 && g[b] > 0;
}

/// Both arrows entering e carry a positive value.
inline bool is_anti_e_movable(const DecoratedGraph& G, const AngularFunction& g, EdgeId e) {
  check_edge(G, e);
  auto [a, b] = G.quiver().incoming(e);
  return g[a] > 0 && g[b] > 0;
}

/// g + delta(chi_e): +1 on the arrows entering e, -1 on those leaving it.
inline AngularFunction mov_e(const DecoratedGraph& G, const AngularFunction& g, EdgeId e) {
  if (!is_e_movable(G, g, e)) fail(Errc::NotMovable, "function is not movable along edge " + std::to_string(e));
  AngularFunction out = g;
  for (ArrowId a : G.quiver().incoming(e)) ++out.values[a];
  for (ArrowId a : G.quiver().outgoing(e)) --out.values[a];
  return out;
}

inline AngularFunction anti_mov_e(const DecoratedGraph& G, const AngularFunction& g, EdgeId e) {
  if (!is_anti_e_movable(G, g, e)) {
    fail(Errc::NotMovable, "function is not anti-movable along edge " + std::to_string(e));
  }
  AngularFunction out = g;
  for (ArrowId a : G.quiver().incoming(e)) --out.values[a];
  for (ArrowId a : G.quiver().outgoing(e)) ++out.values[a];
  return out;
}

/// Nodes are all compatible functions; one edge per movable (g, e) pair.
inline StateGraph<AngularFunction> build_L_graph(const DecoratedGraph& G) {
  StateGraph<AngularFunction> L;
  L.nodes = enumerate_compatible(G);
  for (std::size_t i = 0; i < L.nodes.size(); ++i) {
    for (EdgeId e = 0; e < G.num_edges(); ++e) {
      if (!is_e_movable(G, L.nodes[i], e)) continue;
      auto j = L.index_of(mov_e(G, L.nodes[i], e));
      if (!j) fail(Errc::NotCompatible, "move left the compatible set; enumeration is incomplete");
      L.edges.push_back({i, *j, e});
    }
  }
  std::sort(L.edges.begin(), L.edges.end());
  return L;
}

/// Pairing of a directed cycle (closed walk of arrows) with a compatible g.
inline long long lambda_omega(const DecoratedGraph& G, std::span<const ArrowId> cycle, const AngularFunction& g) {
  const auto& q = G.quiver();
  if (cycle.empty()) fail(Errc::NotACycle, "empty arrow sequence");
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (cycle[i] >= q.num_arrows()) fail(Errc::NotACycle, "unknown arrow " + std::to_string(cycle[i]));
  }
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (q.target(cycle[i]) != q.source(cycle[(i + 1) % cycle.size()])) {
      fail(Errc::NotACycle, "arrows " + std::to_string(cycle[i]) + " and " +
                                std::to_string(cycle[(i + 1) % cycle.size()]) + " do not compose");
    }
  }
  long long sum = 0;
  for (ArrowId a : cycle) sum += g[a];
  return sum;
}

/// Arrows lying on some invisible cycle, and the grouping of those arrows into
/// components of the graph of invisible connected cycles (one per
/// cycle-carrying strongly connected component of the zero set).
struct InvisibleSubgraph {
  std::vector<char> arrows;                          // per arrow
  std::vector<char> edges;                           // per edge of G
  std::vector<std::vector<ArrowId>> component_arrows;
  std::vector<std::vector<EdgeId>> component_edges;

  std::size_t num_components() const { return component_arrows.size(); }
  bool empty() const { return component_arrows.empty(); }
};

/// Invisible cycles of (G, omega) computed from one compatible function g0.
/// Any compatible g0 gives the same result because the pairing of a cycle
/// does not depend on the representative.
inline InvisibleSubgraph invisible_subgraph(const DecoratedGraph& G, const AngularFunction& g0) {
  const auto& q = G.quiver();
  std::vector<graph::Arc> zero;
  std::vector<ArrowId> zero_ids;
  for (ArrowId a = 0; a < q.num_arrows(); ++a) {
    if (g0[a] == 0) {
      zero.push_back({q.source(a), q.target(a)});
      zero_ids.push_back(a);
    }
  }
  auto scc = graph::strong_components(q.num_vertices(), zero);
  InvisibleSubgraph out;
  out.arrows.assign(q.num_arrows(), 0);
  out.edges.assign(q.num_vertices(), 0);
  std::vector<std::size_t> slot(scc.count, static_cast<std::size_t>(-1));
  for (ArrowId a : zero_ids) {
    std::size_t c = scc.component_of[q.source(a)];
    if (c != scc.component_of[q.target(a)]) continue;
    out.arrows[a] = 1;
    out.edges[q.source(a)] = out.edges[q.target(a)] = 1;
    if (slot[c] == static_cast<std::size_t>(-1)) {
      slot[c] = out.component_arrows.size();
      out.component_arrows.emplace_back();
      out.component_edges.emplace_back();
    }
    out.component_arrows[slot[c]].push_back(a);
  }
  for (std::size_t c = 0; c < scc.count; ++c) {
    if (slot[c] == static_cast<std::size_t>(-1)) continue;
    for (EdgeId e = 0; e < q.num_vertices(); ++e) {
      if (scc.component_of[e] == c) out.component_edges[slot[c]].push_back(e);
    }
  }
  return out;
}

inline AngularFunction require_compatible(const DecoratedGraph& G) {
  auto g0 = first_compatible(G);
  if (!g0) fail(Errc::EmptyStateSet, "no compatible angular function exists for this weight");
  return *g0;
}

inline InvisibleSubgraph invisible_subgraph(const DecoratedGraph& G) {
  return invisible_subgraph(G, require_compatible(G));
}

/// Minimum pairing over non-zero directed cycles, as a minimum-weight cycle
/// with arrow weights g0(a) >= 0.
inline long long nilpotency_degree(const DecoratedGraph& G, const AngularFunction& g0) {
  const auto& q = G.quiver();
  auto arcs = q.arcs();
  std::vector<long long> w(g0.values.begin(), g0.values.end());
  auto best = graph::min_weight_cycle(q.num_vertices(), arcs, w);
  if (!best) fail(Errc::NotACycle, "medial quiver has no directed cycle");
  return *best;
}

inline long long nilpotency_degree(const DecoratedGraph& G) { return nilpotency_degree(G, require_compatible(G)); }

struct GammaInvReport {
  bool connected = false;
  std::size_t components = 0;
};

/// Connectivity of the graph of invisible connected cycles. Only meaningful
/// (and only accepted) at nilpotency degree zero.
inline GammaInvReport gamma_inv_connected(const DecoratedGraph& G, const AngularFunction& g0) {
  auto inv = invisible_subgraph(G, g0);
  if (inv.empty()) fail(Errc::NotNilpotencyZero, "no invisible cycle exists");
  return {inv.num_components() == 1, inv.num_components()};
}

inline GammaInvReport gamma_inv_connected(const DecoratedGraph& G) {
  return gamma_inv_connected(G, require_compatible(G));
}

}  // namespace clocklat
