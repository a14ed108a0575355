// Command-line front end. Exit status: 0 ok, 1 certification counterexample,
// 2 input error.

#include "clocklat/bms.hpp"
#include "clocklat/io.hpp"
#include "clocklat/kauffman.hpp"
#include "clocklat/quiver_rep.hpp"
#include "clocklat/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

namespace fs = std::filesystem;
using namespace clocklat;
using report::Json;

namespace {

constexpr int kOk = 0;
constexpr int kCounterexample = 1;
constexpr int kInputError = 2;

struct Config {
  std::string verb;
  std::string input;
  std::string weight_file;
  std::string format = "dump";
  std::string out;
  std::size_t bound_lattice = 500;
  std::size_t bound_candidates = 10'000'000;
  std::uint64_t seed = 0;
  std::optional<std::size_t> state_index;
  bool phantom = false;
};

struct Output {
  Json result;
  std::optional<std::string> dot;
  bool ok = true;  // false: a certification check failed
};

struct Loaded {
  std::string text;
  io::MapFile file;
  Weight weight;
  std::string weight_source;
  std::string weight_hash;
  std::optional<LinkDiagram> diagram;
  std::optional<DecoratedGraph> graph;
};

Loaded load(const Config& cfg, bool need_weight = true) {
  Loaded L{io::read_file(cfg.input), {}, {}, {}, {}, {}, {}};
  L.file = io::parse_map(L.text);
  if (!need_weight) return L;
  if (!cfg.weight_file.empty()) {
    auto wt = io::read_file(cfg.weight_file);
    L.weight = io::parse_weight(wt, L.file.map);
    L.weight_source = fs::path(cfg.weight_file).filename().string();
    L.weight_hash = io::sha256_hex(wt);
  } else if (auto e = L.file.marked_edge()) {
    L.weight = kauffman_weight(L.file.map, *e);
    L.weight_source = "kauffman";
    bool four = true;
    for (VertexId v = 0; v < L.file.map.num_vertices(); ++v) four = four && L.file.map.degree(v) == 4;
    if (four) L.diagram.emplace(L.file.map, *e);
  } else {
    fail(Errc::MissingValue, "no --weight given and the map has no marked_edge");
  }
  L.graph.emplace(L.file.map, L.weight);
  return L;
}

const LinkDiagram& require_diagram(const Loaded& L) {
  if (!L.diagram) {
    if (!L.file.marked_edge()) fail(Errc::MissingValue, "diagram verbs need a marked_edge");
    LinkDiagram check(L.file.map, *L.file.marked_edge());  // throws the precise error
  }
  return *L.diagram;
}

CertifyOptions certify_options(const Config& cfg) {
  CertifyOptions c;
  c.exhaustive_bound = cfg.bound_lattice;
  c.seed = cfg.seed;
  return c;
}

BmsLatticeOptions bms_options(const Config& cfg) {
  BmsLatticeOptions o;
  o.certify = certify_options(cfg);
  return o;
}

SubrepOptions subrep_options(const Config& cfg) {
  SubrepOptions o;
  o.max_candidates = cfg.bound_candidates;
  o.certify = certify_options(cfg);
  return o;
}

AngularFunction pick_function(const DecoratedGraph& G, const Config& cfg) {
  auto fs = enumerate_compatible(G);
  if (fs.empty()) fail(Errc::EmptyStateSet, "no compatible functions");
  std::size_t i = cfg.state_index.value_or(0);
  if (i >= fs.size()) fail(Errc::ParseError, "--state-index out of range (" + std::to_string(fs.size()) + " states)");
  return fs[i];
}

/// With --state-index i: (h_i, minimum of its component, d). Otherwise the
/// top of BMS+[min] for the component of the first compatible function.
BmsState pick_state(const DecoratedGraph& G, const Config& cfg) {
  auto h = pick_function(G, cfg);
  auto cm = component_minimum(G, h);
  if (cfg.state_index) return make_bms(G, h, cm.f_minus, cm.d);
  return bms_plus_lattice(G, cm.f_minus, bms_options(cfg)).maximum();
}

std::string bms_label(const BmsState& s) {
  std::string out = "d=";
  for (std::size_t i = 0; i < s.d.size(); ++i) out += (i ? "," : "") + std::to_string(s.d[i]);
  return out;
}

Json bms_lattice_json(const FiniteLattice<BmsState>& L) {
  return report::lattice_dump<BmsState>(L, [](const BmsState& s) { return report::bms_dump(s); });
}

std::string bms_lattice_dot(const FiniteLattice<BmsState>& L, const std::string& name) {
  return report::lattice_dot<BmsState>(L, bms_label, name);
}

Json invisible_json(const InvisibleSubgraph& inv) {
  Json j;
  Json arrows = Json::array(), edges = Json::array();
  for (std::size_t a = 0; a < inv.arrows.size(); ++a) {
    if (inv.arrows[a]) arrows.push_back(a);
  }
  for (std::size_t e = 0; e < inv.edges.size(); ++e) {
    if (inv.edges[e]) edges.push_back(e);
  }
  j["arrows"] = arrows;
  j["edges"] = edges;
  j["component_arrows"] = inv.component_arrows;
  j["component_edges"] = inv.component_edges;
  return j;
}

std::vector<EdgeId> anti_movable_edges(const DecoratedGraph& G, const BmsState& s) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < G.num_edges(); ++e) {
    if (bms_anti_movable(G, s, e)) out.push_back(e);
  }
  return out;
}

bool has_zero_weight(const Weight& w) {
  return std::count(w.vertex.begin(), w.vertex.end(), 0) + std::count(w.face.begin(), w.face.end(), 0) > 0;
}

// Full battery on one map; every entry of "checks" must be true.
Json check_one(const fs::path& path, const Config& cfg, bool& all_ok) {
  Config local = cfg;
  local.input = path.string();
  auto wfile = fs::path(path).replace_extension(".weight");
  local.weight_file = fs::exists(wfile) ? wfile.string() : "";
  Json j;
  j["file"] = path.filename().string();
  Json checks = Json::object();
  auto record = [&](const std::string& name, bool ok) {
    checks[name] = ok;
    all_ok = all_ok && ok;
  };
  try {
    auto L = load(local);
    const auto& G = *L.graph;
    j["weight"] = L.weight_source;
    auto Lg = build_L_graph(G);
    j["states"] = Lg.nodes.size();
    j["nilpotency"] = nilpotency_degree(G);
    if (L.diagram) {
      const auto& D = *L.diagram;
      auto a = enumerate_kauffman_states(D), b = enumerate_kauffman_states_direct(D);
      record("kauffman_enumerations_agree", a == b);
      auto K = kauffman_graph(D);
      std::set<std::tuple<AngularFunction, AngularFunction, std::size_t>> ek, el;
      for (const auto& e : K.edges) ek.insert({chi(D, K.nodes[e.from]), chi(D, K.nodes[e.to]), e.label});
      for (const auto& e : Lg.edges) el.insert({Lg.nodes[e.from], Lg.nodes[e.to], e.label});
      record("kauffman_moves_match", ek == el && K.nodes.size() == Lg.nodes.size());
      record("nilpotency_zero", nilpotency_degree(G) == 0);
      auto prime = is_prime_diagram(D);
      j["prime"] = prime.prime;
      if (prime.prime) {
        record("gamma_inv_connected", gamma_inv_connected(G).connected);
        auto C = clock_lattice(D, bms_options(local));
        record("clock_lattice_certified", C.size() == Lg.nodes.size());
      } else {
        bool refused = false;
        try {
          clock_lattice(D, bms_options(local));
        } catch (const Error& e) {
          refused = e.code() == Errc::NotPrime;
        }
        record("clock_refuses_non_prime", refused);
        j["separating_pair"] = {prime.witness->first, prime.witness->second};
      }
    }
    if (nilpotency_degree(G) != 0) {
      j["note"] = "positive nilpotency degree; lattice checks skipped";
      j["checks"] = checks;
      return j;
    }
    bool comps = true;
    for (const auto& r : verify_component_structure(G, Lg, bms_options(local))) {
      comps = comps && r.certified && r.vertices_match && r.edges_match && r.pointwise;
    }
    record("components_certified", comps);

    auto S = canonical_potential(G.quiver(), G.weight());
    bool phantom = has_zero_weight(G.weight());
    auto S2 = S + phantom_potential(G.quiver(), G.weight(), 2, Rational(1, 3));
    bool jac = true, jac2 = true, nil = true, indec = true, quot = true, iso = true;
    auto parts = connected_components(Lg);
    std::vector<char> done(parts.count, 0);
    for (std::size_t i = 0; i < Lg.nodes.size(); ++i) {
      if (done[parts.component_of[i]]) continue;
      done[parts.component_of[i]] = 1;
      auto cm = component_minimum(G, Lg.nodes[i]);
      auto lat = bms_plus_lattice(G, cm.f_minus, bms_options(local));
      for (const auto& s : lat.elements) {
        auto M = state_module(G, s);
        jac = jac && check_jacobian(G.quiver(), M, S).ok();
        if (phantom) jac2 = jac2 && check_jacobian(G.quiver(), M, S2).ok();
        nil = nil && is_nilpotent(M);
        if (G.weight().characteristic()) {
          auto q = simple_quotients(M);
          quot = quot && q == anti_movable_edges(G, s);
          if (!s.d.zero()) indec = indec && is_indecomposable(M, G.weight()).agree();
        }
      }
      if (G.weight().characteristic()) iso = iso && verify_subrep_isomorphism(G, lat.maximum(), subrep_options(local)).ok();
    }
    record("jacobian_canonical", jac);
    if (phantom) record("jacobian_with_phantom", jac2);
    record("modules_nilpotent", nil);
    if (G.weight().characteristic()) {
      record("indecomposability_methods_agree", indec);
      record("simple_quotients_match", quot);
      record("subrep_isomorphism", iso);
    }
  } catch (const Error& e) {
    j["error"] = e.what();
    record("no_error", false);
  }
  j["checks"] = checks;
  return j;
}

Output run_verb(const Config& cfg) {
  Output out;
  const std::string& v = cfg.verb;
  if (v == "check-all") {
    std::vector<fs::path> maps;
    for (const auto& entry : fs::directory_iterator(cfg.input)) {
      if (entry.path().extension() == ".map") maps.push_back(entry.path());
    }
    std::sort(maps.begin(), maps.end());
    bool all_ok = true;
    Json per = Json::array();
    for (const auto& p : maps) per.push_back(check_one(p, cfg, all_ok));
    out.result["diagrams"] = per;
    out.result["all_passed"] = all_ok;
    out.ok = all_ok;
    return out;
  }
  if (v == "medial") {
    auto L = load(cfg, false);
    out.result = report::map_dump(L.file.map);
    MedialQuiver q(L.file.map);
    out.result["self_check"] = q.self_check().value_or("ok");
    out.dot = report::quiver_dot(q);
    return out;
  }
  if (v == "prime-check") {
    auto L = load(cfg, false);
    auto p = is_prime_diagram(L.file.map);
    out.result["prime"] = p.prime;
    if (p.witness) out.result["separating_pair"] = {p.witness->first, p.witness->second};
    return out;
  }
  auto L = load(cfg);
  const auto& G = *L.graph;
  out.result["weight"] = report::weight_dump(G.weight());
  if (v == "states" || v == "move-graph") {
    auto Lg = build_L_graph(G);
    out.result["graph"] = report::state_graph_dump(Lg);
    out.dot = report::state_graph_dot(Lg);
  } else if (v == "invisible") {
    auto g0 = require_compatible(G);
    out.result["invisible"] = invisible_json(invisible_subgraph(G, g0));
    auto inv_edges = invisible_subgraph(G, g0);
    if (!inv_edges.empty()) {
      auto r = gamma_inv_connected(G, g0);
      out.result["gamma_inv"] = Json{{"components", r.components}, {"connected", r.connected}};
    }
  } else if (v == "nilpotency") {
    out.result["nilpotency_degree"] = nilpotency_degree(G);
  } else if (v == "bms-lattice") {
    auto g = cfg.state_index ? pick_function(G, cfg) : component_minimum(G, pick_function(G, cfg)).f_minus;
    auto lat = bms_plus_lattice(G, g, bms_options(cfg));
    out.result["base"] = report::function_dump(g);
    out.result["lattice"] = bms_lattice_json(lat);
    out.result["pointwise_meet_join"] = lattice_matches_pointwise(G, lat);
    out.ok = lattice_matches_pointwise(G, lat);
    out.dot = bms_lattice_dot(lat, "bms");
  } else if (v == "component") {
    auto h = pick_function(G, cfg);
    auto cm = component_minimum(G, h);
    out.result["function"] = report::function_dump(h);
    out.result["minimum"] = report::function_dump(cm.f_minus);
    out.result["d"] = cm.d.values;
    Json comps = Json::array();
    for (const auto& r : verify_component_structure(G, build_L_graph(G), bms_options(cfg))) {
      comps.push_back(Json{{"size", r.size},
                           {"minimum", r.minimum.values},
                           {"certified", r.certified},
                           {"vertices_match", r.vertices_match},
                           {"edges_match", r.edges_match},
                           {"pointwise", r.pointwise}});
      out.ok = out.ok && r.certified && r.vertices_match && r.edges_match && r.pointwise;
    }
    out.result["components"] = comps;
  } else if (v == "subobjects") {
    auto s = pick_state(G, cfg);
    auto lat = plus_subobjects(G, s, bms_options(cfg));
    out.result["state"] = report::bms_dump(s);
    out.result["lattice"] = bms_lattice_json(lat);
    out.dot = bms_lattice_dot(lat, "subobjects");
  } else if (v == "clock" || v == "kauffman-states") {
    const auto& D = require_diagram(L);
    out.result["marked_edge"] = D.marked_edge();
    out.result["marked_faces"] = D.marked_faces();
    auto dump = [&](const KauffmanState& K) { return report::kauffman_dump(D, K); };
    if (v == "clock") {
      auto lat = clock_lattice(D, bms_options(cfg));
      out.result["lattice"] = report::lattice_dump<KauffmanState>(lat, dump);
      out.dot = report::lattice_dot<KauffmanState>(
          lat,
          [](const KauffmanState& K) {
            std::string s;
            for (std::size_t i = 0; i < K.angles.size(); ++i) s += (i ? "," : "") + std::to_string(K.angles[i]);
            return s;
          },
          "clock");
    } else {
      Json states = Json::array();
      for (const auto& K : enumerate_kauffman_states(D)) states.push_back(dump(K));
      out.result["states"] = states;
    }
  } else if (v == "module" || v == "jacobian-check" || v == "endo" || v == "subreps" || v == "verify-iso") {
    auto s = pick_state(G, cfg);
    auto M = state_module(G, s);
    out.result["state"] = report::bms_dump(s);
    if (v == "module") {
      out.result["module"] = report::rep_dump(M);
      out.result["nilpotent"] = is_nilpotent(M);
      out.dot = report::quiver_dot(G.quiver(), M.dims);
    } else if (v == "jacobian-check") {
      auto S = canonical_potential(G.quiver(), G.weight());
      if (cfg.phantom) S = S + phantom_potential(G.quiver(), G.weight());
      out.result["potential"] = report::potential_dump(S);
      auto rep = check_jacobian(G.quiver(), M, S);
      out.result["arrows_checked"] = rep.arrows_checked;
      Json bad = Json::array();
      for (const auto& r : rep.nonzero) bad.push_back(r.arrow);
      out.result["nonzero_residuals"] = bad;
      out.ok = rep.ok();
    } else if (v == "endo") {
      auto R = endomorphism_ring(M);
      out.result["dimension"] = R.dim();
      out.result["radical_dimension"] = R.radical_dim;
      out.result["local"] = R.local;
      auto ind = is_indecomposable(M, G.weight());
      if (ind.by_support) out.result["indecomposable_by_support"] = *ind.by_support;
      out.result["indecomposable_by_endomorphisms"] = ind.by_endomorphisms;
      out.result["methods_agree"] = ind.agree();
      out.ok = ind.agree();
    } else if (v == "subreps") {
      auto lat = enumerate_subreps(G.quiver(), M, G.weight(), subrep_options(cfg));
      out.result["lattice"] = report::lattice_dump<PrefixFamily>(lat, [](const PrefixFamily& p) { return Json(p.k); });
      out.dot = report::lattice_dot<PrefixFamily>(
          lat,
          [](const PrefixFamily& p) {
            std::string s = "k=";
            for (std::size_t i = 0; i < p.k.size(); ++i) s += (i ? "," : "") + std::to_string(p.k[i]);
            return s;
          },
          "subreps");
    } else {
      auto c = verify_subrep_isomorphism(G, s, subrep_options(cfg));
      out.result["certificate"] = Json{{"plus_subobjects", c.plus_size},
                                       {"subrepresentations", c.subrep_size},
                                       {"bijective", c.bijective},
                                       {"order_isomorphism", c.order_isomorphism},
                                       {"grading", c.grading}};
      out.ok = c.ok();
    }
  } else {
    fail(Errc::ParseError, "unknown verb " + v);
  }
  return out;
}

std::string input_hash(const Config& cfg) {
  if (fs::is_directory(cfg.input)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(cfg.input)) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::string all;
    for (const auto& f : files) all += f.filename().string() + "\n" + io::read_file(f.string());
    return io::sha256_hex(all);
  }
  return io::sha256_hex(io::read_file(cfg.input));
}

int emit(const Config& cfg, const Output& out) {
  std::string hash = input_hash(cfg);
  std::string text;
  if (cfg.format == "dot") {
    if (!out.dot) fail(Errc::ParseError, "verb '" + cfg.verb + "' has no graph output");
    text = "// input sha256 " + hash + " seed " + std::to_string(cfg.seed) + "\n" + *out.dot;
  } else {
    Json env;
    env["verb"] = cfg.verb;
    env["input"] = Json{{"file", fs::path(cfg.input).filename().string()}, {"sha256", hash}};
    if (!cfg.weight_file.empty()) {
      env["weight_file"] = Json{{"file", fs::path(cfg.weight_file).filename().string()},
                                {"sha256", io::sha256_hex(io::read_file(cfg.weight_file))}};
    }
    env["seed"] = cfg.seed;
    env["ok"] = out.ok;
    env["result"] = out.result;
    text = env.dump(2) + "\n";
  }
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) fail(Errc::ParseError, "cannot write " + cfg.out);
    f << text;
  }
  return out.ok ? kOk : kCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar-map states, move lattices and their quiver representations"};
  app.require_subcommand(1);
  Config cfg;
  const std::vector<std::pair<std::string, std::string>> verbs = {
      {"medial", "faces, angles and the medial quiver"},
      {"states", "compatible angular functions"},
      {"move-graph", "graph of counterclockwise moves"},
      {"invisible", "invisible arrows and the graph of invisible cycles"},
      {"nilpotency", "nilpotency degree"},
      {"bms-lattice", "lattice BMS+[g]"},
      {"component", "component minima and their lattices"},
      {"subobjects", "plus-subobjects of a BMS state"},
      {"clock", "clock lattice of a prime diagram"},
      {"prime-check", "look for a separating pair of edges"},
      {"kauffman-states", "Kauffman states as angle lists"},
      {"module", "state module of a BMS state"},
      {"jacobian-check", "cyclic-derivative residuals"},
      {"endo", "endomorphism ring and indecomposability"},
      {"subreps", "lattice of subrepresentations"},
      {"verify-iso", "plus-subobjects versus subrepresentations"},
      {"check-all", "run every check over a directory of maps"},
  };
  for (const auto& [name, help] : verbs) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", cfg.input, name == "check-all" ? "directory of .map files" : "map file")->required();
    sub->add_option("--weight", cfg.weight_file, "weight file (default: Kauffman weight of marked_edge)");
    sub->add_option("--format", cfg.format, "dump or dot")->check(CLI::IsMember({"dump", "dot"}));
    sub->add_option("--out", cfg.out, "write the report here instead of stdout");
    sub->add_option("--bound-lattice", cfg.bound_lattice, "largest lattice checked exhaustively for distributivity")
        ->check(CLI::PositiveNumber);
    sub->add_option("--bound-candidates", cfg.bound_candidates, "largest candidate space for subrepresentations")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for sampled checks");
    sub->add_option("--state-index", cfg.state_index, "pick the i-th compatible function");
    sub->add_flag("--phantom", cfg.phantom, "add a phantom potential (jacobian-check)");
    sub->callback([&cfg, name = name] { cfg.verb = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }
  try {
    return emit(cfg, run_verb(cfg));
  } catch (const Error& e) {
    std::cerr << cfg.input << ": " << e.what() << "\n";
    return e.code() == Errc::CertificationFailed ? kCounterexample : kInputError;
  } catch (const std::exception& e) {
    std::cerr << cfg.input << ": " << e.what() << "\n";
    return kInputError;
  }
}
