#include "support.hpp"

#include <gtest/gtest.h>

using namespace clocklat;
using namespace testing_support;

namespace {

// Faces traced directly on labels: next(x) = rotation successor of partner(x).
std::set<std::vector<DartLabel>> traced_faces(const RawMap& r) {
  std::map<DartLabel, DartLabel> succ, partner;
  for (const auto& row : r.rotation) {
    for (std::size_t i = 0; i < row.size(); ++i) succ[row[i]] = row[(i + 1) % row.size()];
  }
  for (auto [a, b] : r.edges) {
    partner[a] = b;
    partner[b] = a;
  }
  std::set<DartLabel> seen;
  std::set<std::vector<DartLabel>> faces;
  for (auto [x, _] : succ) {
    if (seen.count(x)) continue;
    std::vector<DartLabel> cyc;
    for (DartLabel y = x; !seen.count(y); y = succ[partner[y]]) {
      seen.insert(y);
      cyc.push_back(y);
    }
    std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
    faces.insert(cyc);
  }
  return faces;
}

std::set<std::vector<DartLabel>> library_faces(const PlanarMap& m) {
  std::set<std::vector<DartLabel>> out;
  for (FaceId f = 0; f < m.num_faces(); ++f) {
    std::vector<DartLabel> cyc;
    for (DartId d : m.face_darts(f)) cyc.push_back(m.label(d));
    out.insert(cyc);
  }
  return out;
}

Errc build_error(const std::vector<std::vector<DartLabel>>& rot, const std::vector<std::array<DartLabel, 2>>& edges) {
  try {
    PlanarMap::build(rot, edges);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "build succeeded";
  return Errc::ParseError;
}

}  // namespace

TEST(PlanarMap, TrefoilCounts) {
  auto mf = load_map("corpus/trefoil.map");
  const auto& m = mf.map;
  EXPECT_EQ(m.num_vertices(), 3u);
  EXPECT_EQ(m.num_edges(), 6u);
  EXPECT_EQ(m.num_faces(), 5u);
  EXPECT_EQ(m.num_darts(), 12u);
  EXPECT_TRUE(m.connected());
}

TEST(PlanarMap, CorpusEulerAndMedialDegrees) {
  for (const auto& name : corpus_names()) {
    auto m = load_map("corpus/" + name + ".map").map;
    EXPECT_EQ((long)m.num_vertices() - (long)m.num_edges() + (long)m.num_faces(), 2) << name;
    MedialQuiver q(m);
    EXPECT_EQ(q.self_check(), std::nullopt) << name;
    EXPECT_EQ(q.num_vertices(), m.num_edges());
    EXPECT_EQ(q.num_arrows(), m.num_darts());
  }
}

TEST(PlanarMap, InvolutionAndRotationAreConsistent) {
  auto m = load_map("corpus/figure_eight.map").map;
  for (DartId d = 0; d < m.num_darts(); ++d) {
    EXPECT_NE(m.alpha(d), d);
    EXPECT_EQ(m.alpha(m.alpha(d)), d);
    EXPECT_EQ(m.sigma_inv(m.sigma(d)), d);
    EXPECT_EQ(m.vertex_of(m.sigma(d)), m.vertex_of(d));
    EXPECT_EQ(m.face_of(m.phi(d)), m.face_of(d));
    EXPECT_EQ(m.edge_of(m.alpha(d)), m.edge_of(d));
  }
}

TEST(PlanarMap, FacesMatchIndependentTracing) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto raw = random_map(rng, 2 + trial % 9);
    auto m = raw.build();
    EXPECT_EQ(library_faces(m), traced_faces(raw));
    EXPECT_EQ((long)m.num_vertices() - (long)m.num_edges() + (long)m.num_faces(), 2);
    EXPECT_EQ(MedialQuiver(m).self_check(), std::nullopt);
  }
}

TEST(PlanarMap, CanonicalFormIgnoresPresentationOrder) {
  auto base = load_map("corpus/figure_eight.map").map;
  auto rot = base.rotation_labels();
  auto edges_arr = base.edge_labels();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto r = rot;
    for (auto& row : r) std::rotate(row.begin(), row.begin() + (rng() % row.size()), row.end());
    std::shuffle(r.begin(), r.end(), rng);
    auto e = edges_arr;
    for (auto& p : e) {
      if (rng() % 2) std::swap(p[0], p[1]);
    }
    std::shuffle(e.begin(), e.end(), rng);
    EXPECT_EQ(PlanarMap::build(r, e), base);
  }
}

TEST(PlanarMap, AnglesRunBetweenConsecutiveDarts) {
  auto m = load_map("corpus/trefoil.map").map;
  MedialQuiver q(m);
  for (const auto& a : angles_of(m)) {
    EXPECT_EQ(a.darts[1], m.sigma(a.darts[0]));
    EXPECT_EQ(q.source(a.id), m.edge_of(a.darts[0]));
    EXPECT_EQ(q.target(a.id), m.edge_of(a.darts[1]));
    EXPECT_EQ(q.vertex_of_arrow(a.id), a.vertex);
    EXPECT_EQ(q.face_of_arrow(a.id), a.face);
  }
}

TEST(PlanarMap, VertexAndFaceCyclesCompose) {
  auto m = load_map("corpus/figure_eight.map").map;
  MedialQuiver q(m);
  auto composes = [&](const std::vector<ArrowId>& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (q.target(c[i]) != q.source(c[(i + 1) % c.size()])) return false;
    }
    return true;
  };
  std::multiset<ArrowId> used;
  for (const auto& c : q.vertex_cycles()) {
    EXPECT_TRUE(composes(c));
    used.insert(c.begin(), c.end());
  }
  for (const auto& c : q.face_cycles()) {
    EXPECT_TRUE(composes(c));
    used.insert(c.begin(), c.end());
  }
  // each arrow lies on exactly one vertex cycle and one face cycle
  for (ArrowId a = 0; a < q.num_arrows(); ++a) EXPECT_EQ(used.count(a), 2u);
}

TEST(PlanarMap, Errors) {
  EXPECT_EQ(build_error({{1, 2}, {3, 3}}, {{1, 3}, {2, 3}}), Errc::MalformedInvolution);
  EXPECT_EQ(build_error({{1, 2}, {3, 4}}, {{1, 4}}), Errc::MalformedInvolution);
  EXPECT_EQ(build_error({{1, 2}, {3, 4}}, {{1, 1}, {2, 3}}), Errc::MalformedInvolution);
  EXPECT_EQ(build_error({{1, 2}, {3, 4}}, {{1, 9}, {2, 3}}), Errc::MalformedInvolution);
  EXPECT_EQ(build_error({{1, 2, 3, 4}, {5, 6}}, {{1, 2}, {3, 5}, {4, 6}}), Errc::LoopEdge);
  EXPECT_EQ(build_error({{1}, {2}}, {{1, 2}}), Errc::DegreeTooSmall);
  // K4 with every rotation reversed at one vertex pair: a torus embedding
  EXPECT_EQ(build_error({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}, {10, 11, 12}},
                        {{1, 4}, {2, 7}, {3, 10}, {5, 8}, {6, 11}, {9, 12}}),
            Errc::NotSpherical);
}

TEST(PlanarMap, DisconnectedMapsReportComponents) {
  auto m = PlanarMap::build({{1, 2}, {3, 4}, {5, 6}, {7, 8}}, {{1, 4}, {2, 3}, {5, 8}, {6, 7}});
  EXPECT_EQ(m.num_components(), 2u);
  EXPECT_FALSE(m.connected());
  EXPECT_THROW(DecoratedGraph(m, Weight{{1, 1, 1, 1}, {1, 1, 1, 1}}), Error);
}
