#pragma once

// BMS states (f_plus, f_minus, d), their moves, the lattices BMS+[g], and the
// forgetful projection onto the move graph of compatible functions.

#include "clocklat/error.hpp"
#include "clocklat/lattice.hpp"
#include "clocklat/states.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace clocklat {

struct BmsState {
  AngularFunction f_plus;
  AngularFunction f_minus;
  DimensionVector d;

  auto operator<=>(const BmsState&) const = default;
};

/// Validates a triple: both functions compatible, d >= 0, the relation
/// d(t(a)) = d(s(a)) + f_plus(a) - f_minus(a) on every angle, and d = 0 on
/// every edge of an invisible cycle.
inline BmsState make_bms(const DecoratedGraph& G, AngularFunction f_plus, AngularFunction f_minus, DimensionVector d) {
  if (!is_compatible(G, f_plus)) fail(Errc::NotCompatible, "plus-function is not compatible");
  if (!is_compatible(G, f_minus)) fail(Errc::NotCompatible, "minus-function is not compatible");
  if (d.size() != G.num_edges()) fail(Errc::RelationViolated, "dimension vector has wrong length");
  for (EdgeId e = 0; e < d.size(); ++e) {
    if (d[e] < 0) fail(Errc::RelationViolated, "negative dimension at edge " + std::to_string(e));
  }
  const auto& q = G.quiver();
  for (ArrowId a = 0; a < q.num_arrows(); ++a) {
    if (d[q.target(a)] != d[q.source(a)] + f_plus[a] - f_minus[a]) {
      fail(Errc::RelationViolated, "relation fails at angle " + std::to_string(a));
    }
  }
  auto inv = invisible_subgraph(G, f_plus);
  for (EdgeId e = 0; e < d.size(); ++e) {
    if (inv.edges[e] && d[e] != 0) {
      fail(Errc::InvisibleDimNonZero, "edge " + std::to_string(e) + " lies on an invisible cycle but d = " +
                                          std::to_string(d[e]));
    }
  }
  return BmsState{std::move(f_plus), std::move(f_minus), std::move(d)};
}

inline BmsState trivial_bms(const DecoratedGraph& G, const AngularFunction& g) {
  return BmsState{g, g, DimensionVector{std::vector<int>(G.num_edges(), 0)}};
}

inline bool bms_movable(const DecoratedGraph& G, const BmsState& s, EdgeId e) { return is_e_movable(G, s.f_plus, e); }

/// (mov_e(f_plus), f_minus, d + chi_e).
inline BmsState bms_mov_e(const DecoratedGraph& G, const BmsState& s, EdgeId e) {
  BmsState out{mov_e(G, s.f_plus, e), s.f_minus, s.d};
  ++out.d.values[e];
  return out;
}

/// The clockwise move keeps d non-negative only when d(e) >= 1.
inline bool bms_anti_movable(const DecoratedGraph& G, const BmsState& s, EdgeId e) {
  return is_anti_e_movable(G, s.f_plus, e) && s.d[e] >= 1;
}

inline BmsState bms_anti_mov_e(const DecoratedGraph& G, const BmsState& s, EdgeId e) {
  if (!bms_anti_movable(G, s, e)) fail(Errc::NotMovable, "state is not anti-movable along edge " + std::to_string(e));
  BmsState out{anti_mov_e(G, s.f_plus, e), s.f_minus, s.d};
  --out.d.values[e];
  return out;
}

inline void require_nilpotency_zero(const DecoratedGraph& G, const AngularFunction& g) {
  long long m = nilpotency_degree(G, g);
  if (m != 0) fail(Errc::NotNilpotencyZero, "nilpotency degree is " + std::to_string(m));
}

/// Solves f_plus - f_minus = delta(d) along a spanning tree, then fixes the
/// additive constant so that d vanishes on invisible edges (or, without
/// invisible cycles, so that min d = 0). nullopt if no non-negative solution
/// of that form exists.
inline std::optional<DimensionVector> reconstruct_dimension(const DecoratedGraph& G, const AngularFunction& f_plus,
                                                           const AngularFunction& f_minus) {
  const auto& q = G.quiver();
  const std::size_t n = q.num_vertices();
  std::vector<long long> d(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<std::vector<std::pair<ArrowId, bool>>> adj(n);
  for (ArrowId a = 0; a < q.num_arrows(); ++a) {
    adj[q.source(a)].push_back({a, true});
    adj[q.target(a)].push_back({a, false});
  }
  std::deque<EdgeId> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    EdgeId x = queue.front();
    queue.pop_front();
    for (auto [a, forward] : adj[x]) {
      long long delta = f_plus[a] - f_minus[a];
      EdgeId y = forward ? q.target(a) : q.source(a);
      long long want = forward ? d[x] + delta : d[x] - delta;
      if (!seen[y]) {
        seen[y] = 1;
        d[y] = want;
        queue.push_back(y);
      } else if (d[y] != want) {
        return std::nullopt;
      }
    }
  }
  auto inv = invisible_subgraph(G, f_plus);
  std::optional<long long> shift;
  for (EdgeId e = 0; e < n; ++e) {
    if (!inv.edges[e]) continue;
    if (shift && *shift != d[e]) return std::nullopt;
    shift = d[e];
  }
  if (!shift) shift = *std::min_element(d.begin(), d.end());
  DimensionVector out;
  for (long long x : d) {
    if (x - *shift < 0) return std::nullopt;
    out.values.push_back(static_cast<int>(x - *shift));
  }
  return out;
}

/// Edges of a directed path f_minus -> f_plus in the move graph, obtained by
/// clocking f_plus down along edges with d(e) > 0. Its length is d_tot.
inline std::vector<EdgeId> path_from_minus_to_plus(const DecoratedGraph& G, const BmsState& s) {
  std::vector<EdgeId> down;
  BmsState cur = s;
  while (!cur.d.zero()) {
    bool stepped = false;
    for (EdgeId e = 0; e < G.num_edges() && !stepped; ++e) {
      if (bms_anti_movable(G, cur, e)) {
        cur = bms_anti_mov_e(G, cur, e);
        down.push_back(e);
        stepped = true;
      }
    }
    if (!stepped) fail(Errc::CertificationFailed, "no clockwise move available while d is non-zero");
  }
  if (cur.f_plus != s.f_minus) fail(Errc::CertificationFailed, "clocked-down state does not reach f_minus");
  std::reverse(down.begin(), down.end());
  return down;
}

struct BmsLatticeOptions {
  std::size_t max_states = 1'000'000;
  CertifyOptions certify;
};

namespace detail {

// Sort by grade, then by dimension vector; builds the poset from move edges
// and certifies it.
inline FiniteLattice<BmsState> assemble_bms_lattice(std::vector<BmsState> states, const DecoratedGraph& G,
                                                    const CertifyOptions& copt) {
  std::sort(states.begin(), states.end(), [](const BmsState& a, const BmsState& b) {
    auto ta = a.d.total(), tb = b.d.total();
    return ta != tb ? ta < tb : a.d < b.d;
  });
  std::map<DimensionVector, std::size_t> index;
  for (std::size_t i = 0; i < states.size(); ++i) index[states[i].d] = i;
  std::vector<graph::Arc> arcs;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (EdgeId e = 0; e < G.num_edges(); ++e) {
      if (!bms_movable(G, states[i], e)) continue;
      DimensionVector up = states[i].d;
      ++up.values[e];
      if (auto it = index.find(up); it != index.end()) arcs.push_back({i, it->second});
    }
  }
  FiniteLattice<BmsState> L;
  L.poset = FinitePoset::from_edges(states.size(), arcs);
  for (const auto& s : states) L.grade.push_back(s.d.total());
  auto result = certify_graded_distributive_lattice(L.poset, L.grade, copt);
  if (auto* ce = std::get_if<Counterexample>(&result)) {
    fail(Errc::CertificationFailed, "BMS lattice certification failed: " + ce->describe());
  }
  L.certificate = std::get<LatticeCertificate>(std::move(result));
  L.elements = std::move(states);
  return L;
}

}  // namespace detail

/// BMS+[g]: the closure of (g, g, 0) under moves, ordered by the moves.
/// Requires nilpotency degree zero; the result is certified.
inline FiniteLattice<BmsState> bms_plus_lattice(const DecoratedGraph& G, const AngularFunction& g,
                                                const BmsLatticeOptions& opt = {}) {
  if (!is_compatible(G, g)) fail(Errc::NotCompatible, "base function is not compatible");
  require_nilpotency_zero(G, g);
  std::set<BmsState> seen{trivial_bms(G, g)};
  std::deque<BmsState> queue{trivial_bms(G, g)};
  while (!queue.empty()) {
    BmsState s = std::move(queue.front());
    queue.pop_front();
    for (EdgeId e = 0; e < G.num_edges(); ++e) {
      if (!bms_movable(G, s, e)) continue;
      BmsState t = bms_mov_e(G, s, e);
      if (seen.insert(t).second) {
        if (seen.size() > opt.max_states) fail(Errc::CandidateSpaceTooLarge, "BMS lattice exceeds state bound");
        queue.push_back(std::move(t));
      }
    }
  }
  return detail::assemble_bms_lattice({seen.begin(), seen.end()}, G, opt.certify);
}

/// Pointwise join/meet of two states of the same BMS+[g], with f_plus
/// recomputed as g + delta(d).
inline BmsState bms_combine(const DecoratedGraph& G, const BmsState& a, const BmsState& b, bool join) {
  if (a.f_minus != b.f_minus) fail(Errc::NotCompatible, "states have different minus-functions");
  DimensionVector d;
  for (EdgeId e = 0; e < G.num_edges(); ++e) d.values.push_back(join ? std::max(a.d[e], b.d[e]) : std::min(a.d[e], b.d[e]));
  const auto& q = G.quiver();
  AngularFunction f = a.f_minus;
  for (ArrowId x = 0; x < q.num_arrows(); ++x) f.values[x] += d[q.target(x)] - d[q.source(x)];
  return make_bms(G, std::move(f), a.f_minus, std::move(d));
}

/// Whether the certified meet/join tables coincide with pointwise min/max of
/// dimension vectors, and the move order with the pointwise order.
inline bool lattice_matches_pointwise(const DecoratedGraph& G, const FiniteLattice<BmsState>& L) {
  const std::size_t n = L.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (L.elements[L.certificate.join[x][y]] != bms_combine(G, L.elements[x], L.elements[y], true)) return false;
      if (L.elements[L.certificate.meet[x][y]] != bms_combine(G, L.elements[x], L.elements[y], false)) return false;
    }
  }
  auto pointwise = FinitePoset::from_order(
      n, [&](std::size_t x, std::size_t y) { return pointwise_leq(L.elements[x].d, L.elements[y].d); });
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  return verify_order_isomorphism(L.poset, pointwise, id);
}

struct ComponentMinimum {
  AngularFunction f_minus;
  DimensionVector d;
};

/// Clocks h down by clockwise moves on the minus side until none applies.
/// (h, f_minus, d) is then a BMS state and f_minus is the minimum of the
/// component of h. With `rng`, the move applied at each step is chosen at
/// random among those available.
inline ComponentMinimum component_minimum(const DecoratedGraph& G, const AngularFunction& h,
                                          std::mt19937_64* rng = nullptr) {
  if (!is_compatible(G, h)) fail(Errc::NotCompatible, "function is not compatible");
  require_nilpotency_zero(G, h);
  ComponentMinimum out{h, DimensionVector{std::vector<int>(G.num_edges(), 0)}};
  std::vector<EdgeId> avail;
  for (;;) {
    avail.clear();
    for (EdgeId e = 0; e < G.num_edges(); ++e) {
      if (is_anti_e_movable(G, out.f_minus, e)) avail.push_back(e);
    }
    if (avail.empty()) break;
    EdgeId e = avail.front();
    if (rng) e = avail[std::uniform_int_distribution<std::size_t>(0, avail.size() - 1)(*rng)];
    out.f_minus = anti_mov_e(G, out.f_minus, e);
    ++out.d.values[e];
  }
  make_bms(G, h, out.f_minus, out.d);
  return out;
}

/// All BMS states below s: same f_minus, reached from s by clockwise moves.
inline FiniteLattice<BmsState> plus_subobjects(const DecoratedGraph& G, const BmsState& s,
                                               const BmsLatticeOptions& opt = {}) {
  require_nilpotency_zero(G, s.f_plus);
  std::set<BmsState> seen{s};
  std::deque<BmsState> queue{s};
  while (!queue.empty()) {
    BmsState x = std::move(queue.front());
    queue.pop_front();
    for (EdgeId e = 0; e < G.num_edges(); ++e) {
      if (!bms_anti_movable(G, x, e)) continue;
      BmsState y = bms_anti_mov_e(G, x, e);
      if (seen.insert(y).second) {
        if (seen.size() > opt.max_states) fail(Errc::CandidateSpaceTooLarge, "subobject set exceeds state bound");
        queue.push_back(std::move(y));
      }
    }
  }
  return detail::assemble_bms_lattice({seen.begin(), seen.end()}, G, opt.certify);
}

struct ProjectionReport {
  bool morphism = true;           // every BMS move maps to a move with the same label
  bool locally_bijective = true;  // out-edge labels agree at every state
  bool injective = true;
  bool surjective = true;         // onto all nodes of the move graph
  std::vector<std::size_t> image; // sorted node indices hit
  std::vector<std::string> failures;

  bool covering() const { return morphism && locally_bijective && surjective; }
};

/// Certifies (f_plus, f_minus, d) -> f_plus against the move graph L.
inline ProjectionReport forgetful_projection(const DecoratedGraph& G, const std::vector<BmsState>& states,
                                             const StateGraph<AngularFunction>& L) {
  ProjectionReport r;
  std::set<BmsState> members(states.begin(), states.end());
  std::set<LabeledEdge> L_edges(L.edges.begin(), L.edges.end());
  std::vector<std::size_t> hits(L.nodes.size(), 0);
  for (const auto& s : states) {
    auto src = L.index_of(s.f_plus);
    if (!src) {
      r.morphism = false;
      r.failures.push_back("state maps outside the move graph");
      continue;
    }
    ++hits[*src];
    std::set<EdgeId> bms_labels, l_labels;
    for (EdgeId e = 0; e < G.num_edges(); ++e) {
      if (!bms_movable(G, s, e)) continue;
      BmsState t = bms_mov_e(G, s, e);
      bms_labels.insert(e);
      auto dst = L.index_of(t.f_plus);
      if (!dst || !L_edges.count(LabeledEdge{*src, *dst, e})) {
        r.morphism = false;
        r.failures.push_back("move along edge " + std::to_string(e) + " has no image");
      }
      if (!members.count(t)) {
        r.failures.push_back("state set is not closed under the move along edge " + std::to_string(e));
        r.morphism = false;
      }
    }
    for (const auto& le : L.edges) {
      if (le.from == *src) l_labels.insert(le.label);
    }
    if (bms_labels != l_labels) {
      r.locally_bijective = false;
      r.failures.push_back("out-edges differ at node " + std::to_string(*src));
    }
  }
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i] > 1) r.injective = false;
    if (hits[i] == 0) r.surjective = false;
    if (hits[i] > 0) r.image.push_back(i);
  }
  return r;
}

struct ComponentReport {
  std::size_t size = 0;
  AngularFunction minimum;
  bool certified = false;       // BMS+[min] is a graded distributive lattice
  bool vertices_match = false;  // pi maps BMS+[min] bijectively onto the component
  bool edges_match = false;     // and its moves onto the component's moves
  bool pointwise = false;       // meets/joins are pointwise min/max of d
};

/// For every connected component C of L: clock an element down to its
/// minimum, build BMS+[min], and compare its image under pi with C.
inline std::vector<ComponentReport> verify_component_structure(const DecoratedGraph& G,
                                                               const StateGraph<AngularFunction>& L,
                                                               const BmsLatticeOptions& opt = {}) {
  std::vector<ComponentReport> out;
  auto parts = connected_components(L);
  for (std::size_t c = 0; c < parts.count; ++c) {
    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < L.nodes.size(); ++i) {
      if (parts.component_of[i] == c) nodes.push_back(i);
    }
    ComponentReport rep;
    rep.size = nodes.size();
    auto cm = component_minimum(G, L.nodes[nodes.front()]);
    rep.minimum = cm.f_minus;
    FiniteLattice<BmsState> lat;
    try {
      lat = bms_plus_lattice(G, cm.f_minus, opt);
      rep.certified = true;
    } catch (const Error&) {
      out.push_back(rep);
      continue;
    }
    std::vector<std::size_t> image;
    for (const auto& s : lat.elements) {
      if (auto i = L.index_of(s.f_plus)) image.push_back(*i);
    }
    std::sort(image.begin(), image.end());
    rep.vertices_match = image.size() == lat.size() && image == nodes;
    std::set<LabeledEdge> mapped, comp;
    for (auto [x, y] : lat.poset.covers()) {
      EdgeId label = 0;
      for (EdgeId e = 0; e < G.num_edges(); ++e) {
        if (lat.elements[y].d[e] != lat.elements[x].d[e]) label = e;
      }
      mapped.insert({*L.index_of(lat.elements[x].f_plus), *L.index_of(lat.elements[y].f_plus), label});
    }
    for (const auto& e : L.edges) {
      if (parts.component_of[e.from] == c) comp.insert(e);
    }
    rep.edges_match = mapped == comp;
    rep.pointwise = lattice_matches_pointwise(G, lat);
    out.push_back(rep);
  }
  return out;
}

}  // namespace clocklat
