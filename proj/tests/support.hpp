#pragma once

// Shared fixtures and brute-force oracles for the test suite.

#include "clocklat/io.hpp"
#include "clocklat/kauffman.hpp"
#include "clocklat/planar_map.hpp"
#include "clocklat/states.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testing_support {

using namespace clocklat;

inline std::string data_path(const std::string& rel) { return std::string(CLOCKLAT_DATA_DIR) + "/" + rel; }

inline io::MapFile load_map(const std::string& rel) { return io::parse_map(io::read_file(data_path(rel))); }

inline LinkDiagram load_diagram(const std::string& name) {
  auto mf = load_map("corpus/" + name + ".map");
  return LinkDiagram(mf.map, *mf.marked_edge());
}

inline DecoratedGraph load_example(const std::string& name) {
  auto mf = load_map("examples/" + name + ".map");
  auto w = io::parse_weight(io::read_file(data_path("examples/" + name + ".weight")), mf.map);
  return DecoratedGraph(mf.map, w);
}

inline std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(data_path("corpus"))) {
    if (e.path().extension() == ".map") out.push_back(e.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Rotation data at the label level, grown by planarity-preserving steps.
struct RawMap {
  std::vector<std::vector<DartLabel>> rotation;
  std::vector<std::array<DartLabel, 2>> edges;
  DartLabel next_label = 1;

  PlanarMap build() const { return PlanarMap::build(rotation, edges); }
};

inline RawMap digon_seed() {
  RawMap r;
  r.rotation = {{1, 2}, {3, 4}};
  r.edges = {{1, 4}, {2, 3}};
  r.next_label = 5;
  return r;
}

/// Replace edge {x, y} by a path through a new degree-2 vertex.
inline void subdivide(RawMap& r, std::size_t edge) {
  auto [x, y] = r.edges[edge];
  DartLabel p = r.next_label++, q = r.next_label++;
  r.rotation.push_back({p, q});
  r.edges[edge] = {x, p};
  r.edges.push_back({q, y});
}

/// Join two corners of one face lying at distinct vertices by a new edge.
/// Returns false when the face has a single vertex.
inline bool add_chord(RawMap& r, std::mt19937_64& rng) {
  PlanarMap m = r.build();
  std::uniform_int_distribution<std::size_t> pick_face(0, m.num_faces() - 1);
  FaceId f = pick_face(rng);
  std::vector<AngleId> corners;
  for (AngleId a = 0; a < m.num_darts(); ++a) {
    if (angle_at(m, a).face == f) corners.push_back(a);
  }
  std::shuffle(corners.begin(), corners.end(), rng);
  for (std::size_t i = 0; i < corners.size(); ++i) {
    for (std::size_t j = i + 1; j < corners.size(); ++j) {
      auto a = angle_at(m, corners[i]), b = angle_at(m, corners[j]);
      if (a.vertex == b.vertex) continue;
      DartLabel p = r.next_label++, q = r.next_label++;
      auto insert_after = [&](DartLabel after, DartLabel fresh) {
        for (auto& row : r.rotation) {
          auto it = std::find(row.begin(), row.end(), after);
          if (it != row.end()) {
            row.insert(it + 1, fresh);
            return;
          }
        }
      };
      insert_after(m.label(a.darts[0]), p);
      insert_after(m.label(b.darts[0]), q);
      r.edges.push_back({p, q});
      return true;
    }
  }
  return false;
}

inline RawMap random_map(std::mt19937_64& rng, std::size_t steps) {
  RawMap r = digon_seed();
  for (std::size_t i = 0; i < steps; ++i) {
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
      subdivide(r, std::uniform_int_distribution<std::size_t>(0, r.edges.size() - 1)(rng));
    } else {
      add_chord(r, rng);
    }
  }
  return r;
}

/// Weight induced by a random non-negative function on angles, so it always
/// admits a compatible function.
inline Weight random_feasible_weight(const PlanarMap& m, std::mt19937_64& rng, int max_value) {
  Weight w{std::vector<int>(m.num_vertices(), 0), std::vector<int>(m.num_faces(), 0)};
  std::uniform_int_distribution<int> val(0, max_value);
  for (AngleId a = 0; a < m.num_darts(); ++a) {
    int x = val(rng);
    auto ang = angle_at(m, a);
    w.vertex[ang.vertex] += x;
    w.face[ang.face] += x;
  }
  return w;
}

/// Compatible functions by scanning the full product of per-angle ranges.
inline std::vector<AngularFunction> naive_compatible(const DecoratedGraph& G) {
  const auto& m = G.map();
  const auto& w = G.weight();
  std::vector<int> cap(m.num_darts());
  for (AngleId a = 0; a < m.num_darts(); ++a) {
    auto ang = angle_at(m, a);
    cap[a] = std::min(w.vertex[ang.vertex], w.face[ang.face]);
  }
  std::vector<AngularFunction> out;
  AngularFunction g{std::vector<int>(m.num_darts(), 0)};
  for (;;) {
    if (is_compatible(G, g)) out.push_back(g);
    std::size_t i = 0;
    while (i < cap.size() && g.values[i] == cap[i]) g.values[i++] = 0;
    if (i == cap.size()) break;
    ++g.values[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every simple directed cycle of the medial quiver, as arrow lists, each
/// reported once from its smallest vertex.
inline std::vector<std::vector<ArrowId>> simple_cycles(const MedialQuiver& q) {
  std::vector<std::vector<ArrowId>> out;
  std::vector<ArrowId> path;
  std::vector<char> on(q.num_vertices(), 0);
  std::function<void(EdgeId, EdgeId)> dfs = [&](EdgeId root, EdgeId x) {
    for (ArrowId a : q.outgoing(x)) {
      EdgeId y = q.target(a);
      if (y < root) continue;
      path.push_back(a);
      if (y == root) {
        out.push_back(path);
      } else if (!on[y]) {
        on[y] = 1;
        dfs(root, y);
        on[y] = 0;
      }
      path.pop_back();
    }
  };
  for (EdgeId r = 0; r < q.num_vertices(); ++r) {
    on[r] = 1;
    dfs(r, r);
    on[r] = 0;
  }
  return out;
}

struct BruteInvisible {
  std::set<ArrowId> arrows;
  std::size_t components = 0;
  long long min_cycle = -1;  // -1: no cycle at all
};

/// Zero-weight simple cycles, grouped by shared medial vertices.
inline BruteInvisible brute_invisible(const DecoratedGraph& G, const AngularFunction& g) {
  const auto& q = G.quiver();
  BruteInvisible r;
  std::vector<std::vector<ArrowId>> zero;
  for (const auto& c : simple_cycles(q)) {
    long long s = 0;
    for (auto a : c) s += g[a];
    if (r.min_cycle < 0 || s < r.min_cycle) r.min_cycle = s;
    if (s == 0) zero.push_back(c);
  }
  std::vector<std::size_t> parent(zero.size());
  for (std::size_t i = 0; i < zero.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  auto verts = [&](const std::vector<ArrowId>& c) {
    std::set<EdgeId> s;
    for (auto a : c) s.insert(q.source(a));
    return s;
  };
  for (std::size_t i = 0; i < zero.size(); ++i) {
    for (auto a : zero[i]) r.arrows.insert(a);
    auto vi = verts(zero[i]);
    for (std::size_t j = 0; j < i; ++j) {
      auto vj = verts(zero[j]);
      bool share = std::any_of(vi.begin(), vi.end(), [&](EdgeId e) { return vj.count(e) > 0; });
      if (share) parent[find(i)] = find(j);
    }
  }
  for (std::size_t i = 0; i < zero.size(); ++i) r.components += find(i) == i;
  return r;
}

}  // namespace testing_support
