#pragma once

// Structured dumps (JSON, insertion-ordered so output is stable) and
// graph-description exports.

#include "clocklat/bms.hpp"
#include "clocklat/kauffman.hpp"
#include "clocklat/lattice.hpp"
#include "clocklat/planar_map.hpp"
#include "clocklat/quiver_rep.hpp"
#include "clocklat/states.hpp"

#include <json.hpp>

#include <functional>
#include <sstream>
#include <string>

namespace clocklat::report {

using Json = nlohmann::ordered_json;

inline Json map_dump(const PlanarMap& m) {
  Json j;
  auto labels = [&](const std::vector<DartId>& ds) {
    Json a = Json::array();
    for (auto d : ds) a.push_back(m.label(d));
    return a;
  };
  j["darts"] = m.num_darts();
  for (VertexId v = 0; v < m.num_vertices(); ++v) j["vertices"].push_back(labels(m.vertex_darts(v)));
  for (EdgeId e = 0; e < m.num_edges(); ++e) {
    auto [a, b] = m.edge_darts(e);
    j["edges"].push_back({m.label(a), m.label(b)});
  }
  for (FaceId f = 0; f < m.num_faces(); ++f) j["faces"].push_back(labels(m.face_darts(f)));
  for (const auto& a : angles_of(m)) {
    j["angles"].push_back(Json{{"id", a.id},
                               {"vertex", a.vertex},
                               {"face", a.face},
                               {"darts", {m.label(a.darts[0]), m.label(a.darts[1])}},
                               {"from_edge", a.source_edge},
                               {"to_edge", a.target_edge}});
  }
  MedialQuiver q(m);
  Json qj;
  qj["vertices"] = q.num_vertices();
  for (ArrowId a = 0; a < q.num_arrows(); ++a) qj["arrows"].push_back({q.source(a), q.target(a)});
  qj["vertex_cycles"] = q.vertex_cycles();
  qj["face_cycles"] = q.face_cycles();
  j["medial_quiver"] = qj;
  return j;
}

inline std::string quiver_dot(const MedialQuiver& q, const std::vector<std::size_t>& dims = {}) {
  std::ostringstream os;
  os << "digraph medial {\n";
  for (EdgeId e = 0; e < q.num_vertices(); ++e) {
    os << "  e" << e << " [label=\"e" << e;
    if (!dims.empty()) os << " (" << dims[e] << ")";
    os << "\"];\n";
  }
  for (ArrowId a = 0; a < q.num_arrows(); ++a) {
    os << "  e" << q.source(a) << " -> e" << q.target(a) << " [label=\"a" << a << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

inline Json function_dump(const AngularFunction& g) {
  Json j = Json::object();
  for (AngleId a = 0; a < g.size(); ++a) j["a" + std::to_string(a)] = g[a];
  return j;
}

inline std::string function_label(const AngularFunction& g) {
  std::string s;
  for (AngleId a = 0; a < g.size(); ++a) s += (a ? "," : "") + std::to_string(g[a]);
  return s;
}

inline Json weight_dump(const Weight& w) { return Json{{"vertices", w.vertex}, {"faces", w.face}}; }

inline Json state_graph_dump(const StateGraph<AngularFunction>& L) {
  Json j;
  j["nodes"] = Json::array();
  for (const auto& g : L.nodes) j["nodes"].push_back(function_dump(g));
  j["edges"] = Json::array();
  for (const auto& e : L.edges) j["edges"].push_back(Json{{"from", e.from}, {"to", e.to}, {"edge", e.label}});
  j["components"] = connected_components(L).count;
  return j;
}

inline std::string state_graph_dot(const StateGraph<AngularFunction>& L) {
  std::ostringstream os;
  os << "digraph moves {\n";
  for (std::size_t i = 0; i < L.nodes.size(); ++i) os << "  n" << i << " [label=\"" << function_label(L.nodes[i]) << "\"];\n";
  for (const auto& e : L.edges) os << "  n" << e.from << " -> n" << e.to << " [label=\"e" << e.label << "\"];\n";
  os << "}\n";
  return os.str();
}

inline Json bms_dump(const BmsState& s) {
  return Json{{"f_plus", s.f_plus.values}, {"f_minus", s.f_minus.values}, {"d", s.d.values}};
}

inline Json kauffman_dump(const LinkDiagram& D, const KauffmanState& K) {
  Json j;
  j["angles"] = K.angles;
  Json pic = Json::array();
  for (AngleId a : K.angles) {
    auto ang = angle_at(D.map(), a);
    pic.push_back(Json{{"vertex", ang.vertex}, {"angle", a}, {"face", ang.face}});
  }
  j["markers"] = pic;
  return j;
}

inline Json certificate_dump(const LatticeCertificate& c, std::size_t table_limit = 200) {
  Json j{{"size", c.size},
         {"minimum", c.minimum},
         {"maximum", c.maximum},
         {"grade_range", {c.grade_min, c.grade_max}},
         {"distributivity", c.exhaustive ? "exhaustive" : "sampled"},
         {"triples_checked", c.triples_checked}};
  if (c.size <= table_limit) {
    j["meet"] = c.meet;
    j["join"] = c.join;
  }
  return j;
}

template <class T>
Json lattice_dump(const FiniteLattice<T>& L, const std::function<Json(const T&)>& elem) {
  Json j;
  j["elements"] = Json::array();
  for (const auto& x : L.elements) j["elements"].push_back(elem(x));
  j["grade"] = L.grade;
  j["covers"] = Json::array();
  for (auto [x, y] : L.poset.covers()) j["covers"].push_back({x, y});
  j["certificate"] = certificate_dump(L.certificate);
  return j;
}

template <class T>
std::string lattice_dot(const FiniteLattice<T>& L, const std::function<std::string(const T&)>& label,
                        const std::string& name = "hasse") {
  std::vector<std::string> labels;
  for (const auto& x : L.elements) labels.push_back(label(x));
  return hasse_export(L.poset, labels, name);
}

inline Json matrix_dump(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

inline std::string rational_string(const Rational& r) { return r.str(); }

inline Json rep_dump(const QuiverRep& M) {
  Json j;
  j["dims"] = M.dims;
  j["arrows"] = Json::array();
  for (std::size_t a = 0; a < M.arrows.size(); ++a) {
    j["arrows"].push_back(Json{{"arrow", a},
                               {"from", M.arrows[a].from},
                               {"to", M.arrows[a].to},
                               {"shape", {M.mats[a].rows(), M.mats[a].cols()}},
                               {"matrix", matrix_dump(M.mats[a])}});
  }
  return j;
}

inline Json potential_dump(const Potential& S) {
  Json j = Json::array();
  for (const auto& t : S.terms) j.push_back(Json{{"coeff", rational_string(t.coeff)}, {"cycle", t.cycle}});
  return j;
}

}  // namespace clocklat::report
