#pragma once

// Sphere-embedded loop-free multigraphs as combinatorial maps, their angles,
// and the directed medial quiver.

#include "clocklat/error.hpp"
#include "clocklat/graph_util.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace clocklat {

using DartId = std::size_t;
using VertexId = std::size_t;
using EdgeId = std::size_t;
using FaceId = std::size_t;
using AngleId = std::size_t;   // one angle per dart
using ArrowId = std::size_t;   // arrows of the medial quiver are angles
using DartLabel = long long;   // dart names as they appear in input files

/// A combinatorial map: darts, the edge involution `alpha` and the clockwise
/// vertex rotation `sigma`. Faces are the cycles of `phi = sigma . alpha`.
///
/// Darts are re-indexed 0..2|E|-1 in increasing label order; vertices, edges
/// and faces are numbered by their smallest dart, and every cyclic list starts
/// at its smallest dart. Two maps built from the same data in any order
/// therefore compare equal.
class PlanarMap {
 public:
  static PlanarMap build(const std::vector<std::vector<DartLabel>>& rotation,
                         const std::vector<std::array<DartLabel, 2>>& edge_pairing);

  std::size_t num_darts() const { return labels_.size(); }
  std::size_t num_vertices() const { return vertex_darts_.size(); }
  std::size_t num_edges() const { return edge_darts_.size(); }
  std::size_t num_faces() const { return face_darts_.size(); }
  std::size_t num_components() const { return num_components_; }
  bool connected() const { return num_components_ <= 1; }

  DartLabel label(DartId d) const { return labels_[d]; }
  std::optional<DartId> find_dart(DartLabel label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<DartId>(it - labels_.begin());
  }

  DartId alpha(DartId d) const { return alpha_[d]; }
  DartId sigma(DartId d) const { return sigma_[d]; }
  DartId sigma_inv(DartId d) const { return sigma_inv_[d]; }
  DartId phi(DartId d) const { return sigma_[alpha_[d]]; }

  VertexId vertex_of(DartId d) const { return vertex_of_[d]; }
  EdgeId edge_of(DartId d) const { return edge_of_[d]; }
  FaceId face_of(DartId d) const { return face_of_[d]; }
  std::size_t component_of_vertex(VertexId v) const { return component_of_vertex_[v]; }

  const std::vector<DartId>& vertex_darts(VertexId v) const { return vertex_darts_[v]; }
  const std::array<DartId, 2>& edge_darts(EdgeId e) const { return edge_darts_[e]; }
  const std::vector<DartId>& face_darts(FaceId f) const { return face_darts_[f]; }
  std::size_t degree(VertexId v) const { return vertex_darts_[v].size(); }

  /// The two faces on either side of an edge (equal for a bridge).
  std::array<FaceId, 2> faces_beside(EdgeId e) const {
    return {face_of_[edge_darts_[e][0]], face_of_[edge_darts_[e][1]]};
  }
  std::array<VertexId, 2> endpoints(EdgeId e) const {
    return {vertex_of_[edge_darts_[e][0]], vertex_of_[edge_darts_[e][1]]};
  }

  /// Rotation lists and edge pairs in canonical order, by label.
  std::vector<std::vector<DartLabel>> rotation_labels() const;
  std::vector<std::array<DartLabel, 2>> edge_labels() const;

  bool operator==(const PlanarMap&) const = default;

 private:
  std::vector<DartLabel> labels_;
  std::vector<DartId> alpha_, sigma_, sigma_inv_;
  std::vector<VertexId> vertex_of_;
  std::vector<EdgeId> edge_of_;
  std::vector<FaceId> face_of_;
  std::vector<std::vector<DartId>> vertex_darts_;
  std::vector<std::array<DartId, 2>> edge_darts_;
  std::vector<std::vector<DartId>> face_darts_;
  std::vector<std::size_t> component_of_vertex_;
  std::size_t num_components_ = 0;
};

namespace detail {

// Cycles of a permutation, each started at its smallest element, ordered by
// that element.
inline std::vector<std::vector<std::size_t>> cycles_of(const std::vector<std::size_t>& perm) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    auto& cyc = out.emplace_back();
    for (std::size_t x = start; !seen[x]; x = perm[x]) {
      seen[x] = 1;
      cyc.push_back(x);
    }
  }
  return out;
}

}  // namespace detail

inline PlanarMap PlanarMap::build(const std::vector<std::vector<DartLabel>>& rotation,
                                  const std::vector<std::array<DartLabel, 2>>& edge_pairing) {
  PlanarMap m;
  for (const auto& list : rotation) {
    m.labels_.insert(m.labels_.end(), list.begin(), list.end());
  }
  std::sort(m.labels_.begin(), m.labels_.end());
  if (auto dup = std::adjacent_find(m.labels_.begin(), m.labels_.end()); dup != m.labels_.end()) {
    fail(Errc::MalformedInvolution, "dart " + std::to_string(*dup) + " appears twice in the rotation lists");
  }
  const std::size_t n = m.labels_.size();
  auto index = [&](DartLabel l) {
    auto d = m.find_dart(l);
    if (!d) fail(Errc::MalformedInvolution, "edge refers to unknown dart " + std::to_string(l));
    return *d;
  };

  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  m.alpha_.assign(n, unset);
  for (const auto& [a, b] : edge_pairing) {
    if (a == b) fail(Errc::MalformedInvolution, "dart " + std::to_string(a) + " is paired with itself");
    DartId da = index(a), db = index(b);
    if (m.alpha_[da] != unset || m.alpha_[db] != unset) {
      fail(Errc::MalformedInvolution, "dart paired twice in edge [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    m.alpha_[da] = db;
    m.alpha_[db] = da;
  }
  for (DartId d = 0; d < n; ++d) {
    if (m.alpha_[d] == unset) fail(Errc::MalformedInvolution, "dart " + std::to_string(m.labels_[d]) + " belongs to no edge");
  }

  m.sigma_.assign(n, unset);
  for (const auto& list : rotation) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      m.sigma_[index(list[i])] = index(list[(i + 1) % list.size()]);
    }
  }
  m.sigma_inv_.assign(n, 0);
  for (DartId d = 0; d < n; ++d) m.sigma_inv_[m.sigma_[d]] = d;

  m.vertex_darts_ = detail::cycles_of(m.sigma_);
  m.vertex_of_.assign(n, 0);
  for (VertexId v = 0; v < m.vertex_darts_.size(); ++v) {
    for (DartId d : m.vertex_darts_[v]) m.vertex_of_[d] = v;
  }
  m.edge_of_.assign(n, 0);
  for (DartId d = 0; d < n; ++d) {
    if (d < m.alpha_[d]) {
      m.edge_of_[d] = m.edge_of_[m.alpha_[d]] = m.edge_darts_.size();
      m.edge_darts_.push_back({d, m.alpha_[d]});
    }
  }

  for (const auto& [a, b] : m.edge_darts_) {
    if (m.vertex_of_[a] == m.vertex_of_[b]) {
      fail(Errc::LoopEdge, "edge [" + std::to_string(m.labels_[a]) + ", " + std::to_string(m.labels_[b]) + "] is a loop");
    }
  }
  for (const auto& darts : m.vertex_darts_) {
    if (darts.size() < 2) {
      fail(Errc::DegreeTooSmall, "vertex at dart " + std::to_string(m.labels_[darts.front()]) + " has degree " +
                                     std::to_string(darts.size()));
    }
  }

  std::vector<std::size_t> phi(n);
  for (DartId d = 0; d < n; ++d) phi[d] = m.sigma_[m.alpha_[d]];
  m.face_darts_ = detail::cycles_of(phi);
  m.face_of_.assign(n, 0);
  for (FaceId f = 0; f < m.face_darts_.size(); ++f) {
    for (DartId d : m.face_darts_[f]) m.face_of_[d] = f;
  }

  std::vector<graph::Arc> arcs;
  for (const auto& [a, b] : m.edge_darts_) arcs.push_back({m.vertex_of_[a], m.vertex_of_[b]});
  auto comps = graph::weak_components(m.num_vertices(), arcs);
  m.component_of_vertex_ = comps.component_of;
  m.num_components_ = comps.count;

  std::vector<long long> euler(comps.count, 0);
  for (VertexId v = 0; v < m.num_vertices(); ++v) euler[comps.component_of[v]] += 1;
  for (const auto& [a, b] : m.edge_darts_) euler[comps.component_of[m.vertex_of_[a]]] -= 1;
  for (const auto& darts : m.face_darts_) euler[comps.component_of[m.vertex_of_[darts.front()]]] += 1;
  for (std::size_t c = 0; c < comps.count; ++c) {
    if (euler[c] != 2) {
      fail(Errc::NotSpherical, "component " + std::to_string(c) + " has Euler characteristic " + std::to_string(euler[c]));
    }
  }
  return m;
}

inline std::vector<std::vector<DartLabel>> PlanarMap::rotation_labels() const {
  std::vector<std::vector<DartLabel>> out;
  for (const auto& darts : vertex_darts_) {
    auto& list = out.emplace_back();
    for (DartId d : darts) list.push_back(labels_[d]);
  }
  return out;
}

inline std::vector<std::array<DartLabel, 2>> PlanarMap::edge_labels() const {
  std::vector<std::array<DartLabel, 2>> out;
  for (const auto& [a, b] : edge_darts_) out.push_back({labels_[a], labels_[b]});
  return out;
}

/// The corner between dart `darts[0]` and its clockwise successor `darts[1]`.
/// As an arrow of the medial quiver it runs from `source_edge` to `target_edge`.
struct Angle {
  AngleId id;
  VertexId vertex;
  FaceId face;
  EdgeId source_edge;
  EdgeId target_edge;
  std::array<DartId, 2> darts;
};

inline Angle angle_at(const PlanarMap& m, AngleId a) {
  DartId next = m.sigma(a);
  // phi(alpha(a)) == next, so the corner lies on the face traced through `next`.
  return Angle{a, m.vertex_of(a), m.face_of(next), m.edge_of(a), m.edge_of(next), {a, next}};
}

inline std::vector<Angle> angles_of(const PlanarMap& m) {
  std::vector<Angle> out;
  out.reserve(m.num_darts());
  for (AngleId a = 0; a < m.num_darts(); ++a) out.push_back(angle_at(m, a));
  return out;
}

/// The directed medial graph: one vertex per edge of G, one arrow per angle.
class MedialQuiver {
 public:
  explicit MedialQuiver(const PlanarMap& m);

  std::size_t num_vertices() const { return out_.size(); }
  std::size_t num_arrows() const { return source_.size(); }
  EdgeId source(ArrowId a) const { return source_[a]; }
  EdgeId target(ArrowId a) const { return target_[a]; }
  const std::array<ArrowId, 2>& outgoing(EdgeId e) const { return out_[e]; }
  const std::array<ArrowId, 2>& incoming(EdgeId e) const { return in_[e]; }

  /// Clockwise cycle of arrows around each vertex of G.
  const std::vector<std::vector<ArrowId>>& vertex_cycles() const { return vertex_cycles_; }
  /// Counterclockwise cycle of arrows around each face of G.
  const std::vector<std::vector<ArrowId>>& face_cycles() const { return face_cycles_; }
  VertexId vertex_of_arrow(ArrowId a) const { return vertex_of_arrow_[a]; }
  FaceId face_of_arrow(ArrowId a) const { return face_of_arrow_[a]; }

  std::vector<graph::Arc> arcs() const {
    std::vector<graph::Arc> out;
    for (ArrowId a = 0; a < num_arrows(); ++a) out.push_back({source_[a], target_[a]});
    return out;
  }

  bool strongly_connected() const {
    auto a = arcs();
    return graph::is_strongly_connected(num_vertices(), a);
  }

  /// Checks in/out-degree 2, absence of loops, and that vertex and face cycles
  /// are closed walks partitioning the arrows. Returns a description of the
  /// first violation, or nullopt.
  std::optional<std::string> self_check() const;

 private:
  std::vector<EdgeId> source_, target_;
  std::vector<std::array<ArrowId, 2>> out_, in_;
  std::vector<std::vector<ArrowId>> vertex_cycles_, face_cycles_;
  std::vector<VertexId> vertex_of_arrow_;
  std::vector<FaceId> face_of_arrow_;
};

inline MedialQuiver::MedialQuiver(const PlanarMap& m) {
  const std::size_t n = m.num_darts();
  source_.resize(n);
  target_.resize(n);
  vertex_of_arrow_.resize(n);
  face_of_arrow_.resize(n);
  for (ArrowId a = 0; a < n; ++a) {
    Angle ang = angle_at(m, a);
    source_[a] = ang.source_edge;
    target_[a] = ang.target_edge;
    vertex_of_arrow_[a] = ang.vertex;
    face_of_arrow_[a] = ang.face;
  }
  out_.resize(m.num_edges());
  in_.resize(m.num_edges());
  for (EdgeId e = 0; e < m.num_edges(); ++e) {
    auto [d0, d1] = m.edge_darts(e);
    out_[e] = {d0, d1};
    in_[e] = {m.sigma_inv(d0), m.sigma_inv(d1)};
    if (in_[e][0] > in_[e][1]) std::swap(in_[e][0], in_[e][1]);
  }
  for (VertexId v = 0; v < m.num_vertices(); ++v) vertex_cycles_.push_back(m.vertex_darts(v));
  for (FaceId f = 0; f < m.num_faces(); ++f) {
    auto& cyc = face_cycles_.emplace_back();
    for (DartId d : m.face_darts(f)) cyc.push_back(m.alpha(d));
  }
}

inline std::optional<std::string> MedialQuiver::self_check() const {
  std::vector<int> indeg(num_vertices(), 0), outdeg(num_vertices(), 0);
  for (ArrowId a = 0; a < num_arrows(); ++a) {
    if (source_[a] == target_[a]) return "arrow " + std::to_string(a) + " is a loop";
    ++outdeg[source_[a]];
    ++indeg[target_[a]];
  }
  for (EdgeId e = 0; e < num_vertices(); ++e) {
    if (indeg[e] != 2 || outdeg[e] != 2) return "quiver vertex " + std::to_string(e) + " is not quadrivalent";
  }
  for (const auto* family : {&vertex_cycles_, &face_cycles_}) {
    std::vector<int> uses(num_arrows(), 0);
    for (const auto& cyc : *family) {
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        ++uses[cyc[i]];
        if (target_[cyc[i]] != source_[cyc[(i + 1) % cyc.size()]]) return std::string("cycle is not a closed walk");
      }
    }
    if (std::any_of(uses.begin(), uses.end(), [](int u) { return u != 1; })) {
      return std::string("cycles do not partition the arrows");
    }
  }
  return std::nullopt;
}

}  // namespace clocklat
