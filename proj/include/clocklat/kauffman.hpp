#pragma once

// Link diagrams (4-regular maps with a marked edge), Kauffman states and the
// clock lattice.

#include "clocklat/bms.hpp"
#include "clocklat/error.hpp"
#include "clocklat/lattice.hpp"
#include "clocklat/states.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace clocklat {

/// Weight that is 1 on every vertex and face except the two faces beside
/// `marked`, where it is 0. Works for any map; LinkDiagram adds 4-regularity.
inline Weight kauffman_weight(const PlanarMap& m, EdgeId marked) {
  if (marked >= m.num_edges()) fail(Errc::UnknownEdge, "marked edge " + std::to_string(marked) + " out of range");
  auto [f1, f2] = m.faces_beside(marked);
  if (f1 == f2) fail(Errc::MarkedFacesNotDistinct, "both sides of the marked edge lie in face " + std::to_string(f1));
  Weight w{std::vector<int>(m.num_vertices(), 1), std::vector<int>(m.num_faces(), 1)};
  w.face[f1] = w.face[f2] = 0;
  return w;
}

class LinkDiagram {
 public:
  LinkDiagram(PlanarMap map, EdgeId marked_edge)
      : weight_(kauffman_weight(map, marked_edge)), marked_(marked_edge),
        graph_(check_regular(std::move(map)), weight_) {
    marked_faces_ = graph_.map().faces_beside(marked_);
  }

  const PlanarMap& map() const { return graph_.map(); }
  const DecoratedGraph& graph() const { return graph_; }
  const Weight& weight() const { return weight_; }
  EdgeId marked_edge() const { return marked_; }
  std::array<FaceId, 2> marked_faces() const { return marked_faces_; }

 private:
  static PlanarMap check_regular(PlanarMap m) {
    for (VertexId v = 0; v < m.num_vertices(); ++v) {
      if (m.degree(v) != 4) {
        fail(Errc::NotFourRegular, "vertex " + std::to_string(v) + " has degree " + std::to_string(m.degree(v)));
      }
    }
    if (m.num_vertices() + 2 != m.num_faces()) fail(Errc::NotSpherical, "|V| != |F| - 2");
    return m;
  }

  Weight weight_;
  EdgeId marked_;
  DecoratedGraph graph_;
  std::array<FaceId, 2> marked_faces_{};
};

inline Weight kauffman_weight(const LinkDiagram& D) { return D.weight(); }

/// A Kauffman state as its sorted set of angles.
struct KauffmanState {
  std::vector<AngleId> angles;

  auto operator<=>(const KauffmanState&) const = default;
};

inline bool is_kauffman_state(const LinkDiagram& D, const KauffmanState& K) {
  const auto& m = D.map();
  std::vector<int> at_v(m.num_vertices(), 0), at_f(m.num_faces(), 0);
  for (AngleId a : K.angles) {
    if (a >= m.num_darts()) return false;
    auto ang = angle_at(m, a);
    ++at_v[ang.vertex];
    ++at_f[ang.face];
  }
  for (int c : at_v) {
    if (c != 1) return false;
  }
  for (FaceId f = 0; f < m.num_faces(); ++f) {
    if (at_f[f] != D.weight().face[f]) return false;
  }
  return std::is_sorted(K.angles.begin(), K.angles.end());
}

inline AngularFunction chi(const LinkDiagram& D, const KauffmanState& K) {
  AngularFunction g{std::vector<int>(D.map().num_darts(), 0)};
  for (AngleId a : K.angles) g.values[a] = 1;
  return g;
}

inline KauffmanState chi_inverse(const LinkDiagram& D, const AngularFunction& g) {
  if (!is_compatible(D.graph(), g)) fail(Errc::NotCompatible, "function is not compatible with the Kauffman weight");
  KauffmanState K;
  for (AngleId a = 0; a < g.size(); ++a) {
    if (g[a] == 1) K.angles.push_back(a);
  }
  return K;
}

/// Via compatible functions for the Kauffman weight.
inline std::vector<KauffmanState> enumerate_kauffman_states(const LinkDiagram& D) {
  std::vector<KauffmanState> out;
  for (const auto& g : enumerate_compatible(D.graph())) out.push_back(chi_inverse(D, g));
  std::sort(out.begin(), out.end());
  return out;
}

/// Independent route: each vertex picks one of its angles, the picks must
/// land in distinct unmarked faces.
inline std::vector<KauffmanState> enumerate_kauffman_states_direct(const LinkDiagram& D) {
  const auto& m = D.map();
  std::vector<char> used(m.num_faces(), 0);
  for (FaceId f : D.marked_faces()) used[f] = 1;
  std::vector<AngleId> pick;
  std::vector<KauffmanState> out;
  auto rec = [&](auto&& self, VertexId v) -> void {
    if (v == m.num_vertices()) {
      KauffmanState K{pick};
      std::sort(K.angles.begin(), K.angles.end());
      out.push_back(std::move(K));
      return;
    }
    for (DartId d : m.vertex_darts(v)) {
      FaceId f = angle_at(m, d).face;
      if (used[f]) continue;
      used[f] = 1;
      pick.push_back(d);
      self(self, v + 1);
      pick.pop_back();
      used[f] = 0;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// The state angles at both ends of e' must be the angles leaving e'
/// clockwise; they are replaced by the angles entering e'.
inline bool kauffman_movable(const LinkDiagram& D, const KauffmanState& K, EdgeId e) {
  return e != D.marked_edge() && is_e_movable(D.graph(), chi(D, K), e);
}

inline KauffmanState kauffman_move(const LinkDiagram& D, const KauffmanState& K, EdgeId e) {
  check_edge(D.graph(), e);
  if (e == D.marked_edge()) fail(Errc::NotApplicable, "cannot move along the marked edge");
  if (!kauffman_movable(D, K, e)) {
    fail(Errc::NotApplicable, "state markers are not placed for a move along edge " + std::to_string(e));
  }
  const auto& m = D.map();
  KauffmanState out = K;
  for (DartId d : m.edge_darts(e)) {
    auto it = std::find(out.angles.begin(), out.angles.end(), d);
    *it = m.sigma_inv(d);
  }
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

inline StateGraph<KauffmanState> kauffman_graph(const LinkDiagram& D) {
  StateGraph<KauffmanState> g;
  g.nodes = enumerate_kauffman_states_direct(D);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (EdgeId e = 0; e < D.map().num_edges(); ++e) {
      if (!kauffman_movable(D, g.nodes[i], e)) continue;
      g.edges.push_back({i, *g.index_of(kauffman_move(D, g.nodes[i], e)), e});
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

struct PrimalityResult {
  bool prime = true;
  std::optional<std::pair<EdgeId, EdgeId>> witness;  // a separating pair of edges
};

/// A diagram counts as prime when no two edges disconnect the underlying
/// graph. Each side of such a cut then holds at least one crossing.
inline PrimalityResult is_prime_diagram(const PlanarMap& m) {
  std::vector<graph::Arc> arcs;
  for (std::size_t e1 = 0; e1 < m.num_edges(); ++e1) {
    for (std::size_t e2 = e1 + 1; e2 < m.num_edges(); ++e2) {
      arcs.clear();
      for (EdgeId e = 0; e < m.num_edges(); ++e) {
        if (e == e1 || e == e2) continue;
        auto [u, v] = m.endpoints(e);
        arcs.push_back({u, v});
      }
      if (graph::weak_components(m.num_vertices(), arcs).count > 1) return {false, std::pair{e1, e2}};
    }
  }
  return {};
}

inline PrimalityResult is_prime_diagram(const LinkDiagram& D) { return is_prime_diagram(D.map()); }

/// Builds the move graph of Kauffman states, checks connectivity of the
/// invisible graph and certifies the result as a graded distributive lattice.
inline FiniteLattice<KauffmanState> clock_lattice(const LinkDiagram& D, const BmsLatticeOptions& opt = {}) {
  auto prime = is_prime_diagram(D);
  if (!prime.prime) {
    fail(Errc::NotPrime, "edges " + std::to_string(prime.witness->first) + " and " +
                             std::to_string(prime.witness->second) + " form a separating cut");
  }
  const auto& G = D.graph();
  auto L = build_L_graph(G);
  if (L.nodes.empty()) fail(Errc::EmptyStateSet, "diagram has no Kauffman states");
  if (!gamma_inv_connected(G, L.nodes.front()).connected) {
    fail(Errc::CertificationFailed, "invisible graph is disconnected on a prime diagram");
  }
  if (connected_components(L).count != 1) fail(Errc::CertificationFailed, "Kauffman move graph is disconnected");
  auto cm = component_minimum(G, L.nodes.front());
  auto bms = bms_plus_lattice(G, cm.f_minus, opt);
  if (bms.size() != L.nodes.size()) {
    fail(Errc::CertificationFailed, "lattice has " + std::to_string(bms.size()) + " elements but there are " +
                                        std::to_string(L.nodes.size()) + " states");
  }
  FiniteLattice<KauffmanState> out;
  for (const auto& s : bms.elements) out.elements.push_back(chi_inverse(D, s.f_plus));
  out.poset = std::move(bms.poset);
  out.grade = std::move(bms.grade);
  out.certificate = std::move(bms.certificate);
  return out;
}

}  // namespace clocklat
