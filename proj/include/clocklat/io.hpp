#pragma once

// Text formats for maps and weights (YAML subset), plus the input hash.
// Needs yaml-cpp and OpenSSL at link time.

#include "clocklat/error.hpp"
#include "clocklat/planar_map.hpp"
#include "clocklat/states.hpp"

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>
#include <string>

namespace clocklat::io {

struct MapFile {
  PlanarMap map;
  std::optional<DartLabel> marked_dart;

  std::optional<EdgeId> marked_edge() const {
    if (!marked_dart) return std::nullopt;
    return map.edge_of(*map.find_dart(*marked_dart));
  }
};

namespace detail {

inline std::string where(const YAML::Node& n) {
  auto m = n.Mark();
  if (m.is_null()) return "";
  return " (line " + std::to_string(m.line + 1) + ", column " + std::to_string(m.column + 1) + ")";
}

template <class T>
T scalar_as(const YAML::Node& n, const std::string& what) {
  if (!n.IsScalar()) fail(Errc::ParseError, what + " must be a scalar" + where(n));
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    fail(Errc::ParseError, what + " is not a valid number: '" + n.Scalar() + "'" + where(n));
  }
}

inline YAML::Node load(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    fail(Errc::ParseError, std::string("syntax error: ") + e.what());
  }
}

}  // namespace detail

/// `vertices: [[dart, ...], ...]` (clockwise per vertex), `edges: [[d, d], ...]`,
/// optional `marked_edge: <dart label>`.
inline MapFile parse_map(const std::string& text) {
  YAML::Node root = detail::load(text);
  if (!root.IsMap()) fail(Errc::ParseError, "map file must be a key-value document");
  for (const auto& kv : root) {
    auto key = kv.first.as<std::string>();
    if (key != "vertices" && key != "edges" && key != "marked_edge") {
      fail(Errc::ParseError, "unknown key '" + key + "'" + detail::where(kv.first));
    }
  }
  auto vs = root["vertices"];
  auto es = root["edges"];
  if (!vs || !vs.IsSequence()) fail(Errc::ParseError, "missing or malformed 'vertices' list");
  if (!es || !es.IsSequence()) fail(Errc::ParseError, "missing or malformed 'edges' list");
  std::vector<std::vector<DartLabel>> rotation;
  for (const auto& v : vs) {
    if (!v.IsSequence()) fail(Errc::ParseError, "each vertex must be a list of darts" + detail::where(v));
    auto& row = rotation.emplace_back();
    for (const auto& d : v) row.push_back(detail::scalar_as<DartLabel>(d, "dart"));
  }
  std::vector<std::array<DartLabel, 2>> pairs;
  for (const auto& e : es) {
    if (!e.IsSequence() || e.size() != 2) fail(Errc::ParseError, "each edge must be a pair of darts" + detail::where(e));
    pairs.push_back({detail::scalar_as<DartLabel>(e[0], "dart"), detail::scalar_as<DartLabel>(e[1], "dart")});
  }
  MapFile out{PlanarMap::build(rotation, pairs), std::nullopt};
  if (auto me = root["marked_edge"]) {
    DartLabel d = detail::scalar_as<DartLabel>(me, "marked_edge");
    if (!out.map.find_dart(d)) fail(Errc::UnknownEdge, "marked_edge names unknown dart " + std::to_string(d));
    out.marked_dart = d;
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string serialize_map(const PlanarMap& m, std::optional<DartLabel> marked_dart = {}) {
  std::ostringstream os;
  os << "vertices: [";
  auto rot = m.rotation_labels();
  for (std::size_t v = 0; v < rot.size(); ++v) {
    os << (v ? ", " : "") << "[";
    for (std::size_t i = 0; i < rot[v].size(); ++i) os << (i ? ", " : "") << rot[v][i];
    os << "]";
  }
  os << "]\nedges: [";
  auto es = m.edge_labels();
  for (std::size_t e = 0; e < es.size(); ++e) os << (e ? ", " : "") << "[" << es[e][0] << ", " << es[e][1] << "]";
  os << "]\n";
  if (marked_dart) os << "marked_edge: " << *marked_dart << "\n";
  return os.str();
}

/// Keys `v<i>` / `f<i>` (canonical ids) or `v@<dart>` / `f@<dart>` (the
/// vertex at a dart, the face traced through it), plus optional `default`.
inline Weight parse_weight(const std::string& text, const PlanarMap& m) {
  YAML::Node root = detail::load(text);
  if (!root.IsMap()) fail(Errc::ParseError, "weight file must be a key-value document");
  std::optional<int> fallback;
  std::vector<std::optional<int>> v(m.num_vertices()), f(m.num_faces());
  for (const auto& kv : root) {
    auto key = kv.first.as<std::string>();
    int value = detail::scalar_as<int>(kv.second, "value of '" + key + "'");
    if (key == "default") {
      fallback = value;
      continue;
    }
    if (key.size() < 2 || (key[0] != 'v' && key[0] != 'f')) {
      fail(Errc::ParseError, "unknown key '" + key + "'" + detail::where(kv.first));
    }
    std::size_t id = 0;
    try {
      if (key[1] == '@') {
        auto dart = m.find_dart(std::stoll(key.substr(2)));
        if (!dart) fail(Errc::ParseError, "key '" + key + "' names an unknown dart" + detail::where(kv.first));
        id = key[0] == 'v' ? m.vertex_of(*dart) : m.face_of(*dart);
      } else {
        std::size_t used = 0;
        id = std::stoull(key.substr(1), &used);
        if (used != key.size() - 1) throw std::invalid_argument(key);
      }
    } catch (const std::logic_error&) {
      fail(Errc::ParseError, "malformed key '" + key + "'" + detail::where(kv.first));
    }
    auto& slot = key[0] == 'v' ? v : f;
    if (id >= slot.size()) fail(Errc::ParseError, "key '" + key + "' is out of range" + detail::where(kv.first));
    if (slot[id]) fail(Errc::ParseError, "key '" + key + "' assigns an element twice" + detail::where(kv.first));
    slot[id] = value;
  }
  Weight w;
  auto fill = [&](const std::vector<std::optional<int>>& src, std::vector<int>& dst, char tag) {
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (!src[i] && !fallback) fail(Errc::MissingValue, std::string("no weight for ") + tag + std::to_string(i));
      dst.push_back(src[i].value_or(fallback.value_or(0)));
    }
  };
  fill(v, w.vertex, 'v');
  fill(f, w.face, 'f');
  return w;
}

inline std::string serialize_weight(const Weight& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.vertex.size(); ++i) os << "v" << i << ": " << w.vertex[i] << "\n";
  for (std::size_t i = 0; i < w.face.size(); ++i) os << "f" << i << ": " << w.face[i] << "\n";
  return os.str();
}

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    fail(Errc::ParseError, "hashing failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

}  // namespace clocklat::io
