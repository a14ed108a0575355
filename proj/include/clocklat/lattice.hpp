#pragma once

// Finite posets and certification of graded distributive lattices.

#include "clocklat/graph_util.hpp"
#include "clocklat/state_graph.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <regex>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace clocklat {

/// A finite poset stored as its full order relation plus the cover relation.
class FinitePoset {
 public:
  /// The reflexive-transitive closure of `edges`. Covers are the edges that
  /// survive transitive reduction. A cyclic edge set yields a poset whose
  /// `antisymmetry_violation()` is set.
  static FinitePoset from_edges(std::size_t n, std::span<const graph::Arc> edges);

  /// Builds the poset from an explicit order predicate.
  static FinitePoset from_order(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq);

  std::size_t size() const { return leq_.size(); }
  bool leq(std::size_t x, std::size_t y) const { return leq_[x][y] != 0; }
  bool less(std::size_t x, std::size_t y) const { return x != y && leq(x, y); }
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const { return covers_; }
  std::optional<std::pair<std::size_t, std::size_t>> antisymmetry_violation() const { return violation_; }
  std::size_t down_size(std::size_t x) const { return down_size_[x]; }

 private:
  void finish(std::span<const std::pair<std::size_t, std::size_t>> candidates);

  std::vector<std::vector<char>> leq_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::vector<std::size_t> down_size_;
  std::optional<std::pair<std::size_t, std::size_t>> violation_;
};

inline FinitePoset FinitePoset::from_edges(std::size_t n, std::span<const graph::Arc> edges) {
  FinitePoset p;
  p.leq_.assign(n, std::vector<char>(n, 0));
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& a : edges) adj[a.from].push_back(a.to);
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    auto& row = p.leq_[s];
    row[s] = 1;
    stack.assign(1, s);
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : adj[x]) {
        if (!row[y]) {
          row[y] = 1;
          stack.push_back(y);
        }
      }
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (const auto& a : edges) {
    if (a.from != a.to) candidates.emplace_back(a.from, a.to);
  }
  p.finish(candidates);
  return p;
}

inline FinitePoset FinitePoset::from_order(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq) {
  FinitePoset p;
  p.leq_.assign(n, std::vector<char>(n, 0));
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      p.leq_[x][y] = (x == y || leq(x, y)) ? 1 : 0;
      if (x != y && p.leq_[x][y]) candidates.emplace_back(x, y);
    }
  }
  p.finish(candidates);
  return p;
}

inline void FinitePoset::finish(std::span<const std::pair<std::size_t, std::size_t>> candidates) {
  const std::size_t n = leq_.size();
  down_size_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (leq_[y][x]) ++down_size_[x];
      if (!violation_ && x < y && leq_[x][y] && leq_[y][x]) violation_ = std::make_pair(x, y);
    }
  }
  if (violation_) return;
  for (auto [x, y] : candidates) {
    bool cover = true;
    for (std::size_t z = 0; z < n && cover; ++z) {
      if (z != x && z != y && leq_[x][z] && leq_[z][y]) cover = false;
    }
    if (cover) covers_.emplace_back(x, y);
  }
  std::sort(covers_.begin(), covers_.end());
  covers_.erase(std::unique(covers_.begin(), covers_.end()), covers_.end());
}

/// Length of the longest chain ending at each element.
inline std::vector<long long> rank_function(const FinitePoset& p) {
  std::vector<std::size_t> order(p.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return p.down_size(a) < p.down_size(b); });
  std::vector<long long> rank(p.size(), 0);
  std::vector<std::vector<std::size_t>> lower(p.size());
  for (auto [x, y] : p.covers()) lower[y].push_back(x);
  for (std::size_t y : order) {
    for (std::size_t x : lower[y]) rank[y] = std::max(rank[y], rank[x] + 1);
  }
  return rank;
}

struct LatticeCertificate {
  std::size_t size = 0;
  std::size_t minimum = 0;
  std::size_t maximum = 0;
  long long grade_min = 0;
  long long grade_max = 0;
  std::vector<std::vector<std::size_t>> meet;
  std::vector<std::vector<std::size_t>> join;
  bool exhaustive = true;  // false: distributivity was sampled
  std::size_t triples_checked = 0;
};

struct Counterexample {
  enum class Kind { Empty, NotAntisymmetric, NoJoin, NoMeet, BadGrading, NotDistributive };
  Kind kind;
  std::vector<std::size_t> witness;

  std::string describe() const {
    static const char* names[] = {"empty poset", "order is not antisymmetric", "no join", "no meet",
                                  "cover does not raise grade by one", "distributive law fails"};
    std::ostringstream os;
    os << names[static_cast<int>(kind)];
    if (!witness.empty()) {
      os << " at (";
      for (std::size_t i = 0; i < witness.size(); ++i) os << (i ? ", " : "") << witness[i];
      os << ")";
    }
    return os.str();
  }
};

using CertifyResult = std::variant<LatticeCertificate, Counterexample>;

struct CertifyOptions {
  std::size_t exhaustive_bound = 500;  // above this, distributivity is sampled
  std::size_t samples = 200000;
  std::uint64_t seed = 0;
};

namespace detail {

// Least element of {z : pred(z)} if it exists.
template <class Pred>
std::optional<std::size_t> least_of(const FinitePoset& p, Pred pred) {
  std::optional<std::size_t> best;
  for (std::size_t z = 0; z < p.size(); ++z) {
    if (pred(z) && (!best || p.down_size(z) < p.down_size(*best))) best = z;
  }
  if (!best) return best;
  for (std::size_t z = 0; z < p.size(); ++z) {
    if (pred(z) && !p.leq(*best, z)) return std::nullopt;
  }
  return best;
}

template <class Pred>
std::optional<std::size_t> greatest_of(const FinitePoset& p, Pred pred) {
  std::optional<std::size_t> best;
  for (std::size_t z = 0; z < p.size(); ++z) {
    if (pred(z) && (!best || p.down_size(z) > p.down_size(*best))) best = z;
  }
  if (!best) return best;
  for (std::size_t z = 0; z < p.size(); ++z) {
    if (pred(z) && !p.leq(z, *best)) return std::nullopt;
  }
  return best;
}

}  // namespace detail

/// Checks that `p` is a lattice, that every cover raises `grade` by exactly
/// one, and both distributive laws. Returns meet/join tables or the first
/// failing witness. Exhaustive over all triples up to `exhaustive_bound`
/// elements (cubic cost), seeded sampling above.
inline CertifyResult certify_graded_distributive_lattice(const FinitePoset& p, std::span<const long long> grade,
                                                         const CertifyOptions& opt = {}) {
  using K = Counterexample::Kind;
  const std::size_t n = p.size();
  if (n == 0) return Counterexample{K::Empty, {}};
  if (auto v = p.antisymmetry_violation()) return Counterexample{K::NotAntisymmetric, {v->first, v->second}};

  LatticeCertificate cert;
  cert.size = n;
  cert.meet.assign(n, std::vector<std::size_t>(n, 0));
  cert.join.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      auto j = detail::least_of(p, [&](std::size_t z) { return p.leq(x, z) && p.leq(y, z); });
      if (!j) return Counterexample{K::NoJoin, {x, y}};
      auto m = detail::greatest_of(p, [&](std::size_t z) { return p.leq(z, x) && p.leq(z, y); });
      if (!m) return Counterexample{K::NoMeet, {x, y}};
      cert.join[x][y] = cert.join[y][x] = *j;
      cert.meet[x][y] = cert.meet[y][x] = *m;
    }
  }
  cert.minimum = cert.maximum = 0;
  for (std::size_t x = 1; x < n; ++x) {
    cert.minimum = cert.meet[cert.minimum][x];
    cert.maximum = cert.join[cert.maximum][x];
  }

  for (auto [x, y] : p.covers()) {
    if (grade[y] != grade[x] + 1) return Counterexample{K::BadGrading, {x, y}};
  }
  cert.grade_min = *std::min_element(grade.begin(), grade.begin() + static_cast<std::ptrdiff_t>(n));
  cert.grade_max = *std::max_element(grade.begin(), grade.begin() + static_cast<std::ptrdiff_t>(n));

  auto check = [&](std::size_t x, std::size_t y, std::size_t z) -> bool {
    const auto& M = cert.meet;
    const auto& J = cert.join;
    return J[x][M[y][z]] == M[J[x][y]][J[x][z]] && M[x][J[y][z]] == J[M[x][y]][M[x][z]];
  };
  if (n <= opt.exhaustive_bound) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          if (!check(x, y, z)) return Counterexample{K::NotDistributive, {x, y, z}};
        }
      }
    }
    cert.triples_checked = n * n * n;
  } else {
    cert.exhaustive = false;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t i = 0; i < opt.samples; ++i) {
      std::size_t x = pick(rng), y = pick(rng), z = pick(rng);
      if (!check(x, y, z)) return Counterexample{K::NotDistributive, {x, y, z}};
    }
    cert.triples_checked = opt.samples;
  }
  return cert;
}

/// True iff phi is a bijection p -> q with x <= y exactly when phi(x) <= phi(y).
inline bool verify_order_isomorphism(const FinitePoset& p, const FinitePoset& q, std::span<const std::size_t> phi) {
  if (p.size() != q.size() || phi.size() != p.size()) return false;
  std::vector<char> hit(q.size(), 0);
  for (std::size_t x : phi) {
    if (x >= q.size() || hit[x]) return false;
    hit[x] = 1;
  }
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (p.leq(x, y) != q.leq(phi[x], phi[y])) return false;
    }
  }
  return true;
}

template <class Node>
graph::Partition connected_components(const StateGraph<Node>& g) {
  auto arcs = g.arcs();
  return graph::weak_components(g.nodes.size(), arcs);
}

/// A certified lattice together with the objects it orders.
template <class T>
struct FiniteLattice {
  std::vector<T> elements;
  FinitePoset poset;
  std::vector<long long> grade;
  LatticeCertificate certificate;

  std::size_t size() const { return elements.size(); }
  const T& minimum() const { return elements[certificate.minimum]; }
  const T& maximum() const { return elements[certificate.maximum]; }
};

/// Hasse diagram in DOT. `labels` may be empty, in which case ids are used.
inline std::string hasse_export(const FinitePoset& p, std::span<const std::string> labels = {},
                                const std::string& name = "hasse") {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=BT;\n";
  for (std::size_t x = 0; x < p.size(); ++x) {
    os << "  n" << x << " [label=\"" << (labels.empty() ? std::to_string(x) : labels[x]) << "\"];\n";
  }
  for (auto [x, y] : p.covers()) os << "  n" << x << " -> n" << y << ";\n";
  os << "}\n";
  return os.str();
}

struct ParsedHasse {
  std::size_t num_nodes = 0;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
};

/// Reads back the node count and cover arcs of a diagram written by hasse_export.
inline ParsedHasse parse_hasse(const std::string& dot) {
  static const std::regex node_re(R"(^\s*n(\d+)\s*\[)");
  static const std::regex arc_re(R"(^\s*n(\d+)\s*->\s*n(\d+)\s*;)");
  ParsedHasse out;
  std::istringstream in(dot);
  std::string line;
  std::smatch m;
  while (std::getline(in, line)) {
    if (std::regex_search(line, m, arc_re)) {
      out.covers.emplace_back(std::stoul(m[1]), std::stoul(m[2]));
    } else if (std::regex_search(line, m, node_re)) {
      out.num_nodes = std::max<std::size_t>(out.num_nodes, std::stoul(m[1]) + 1);
    }
  }
  std::sort(out.covers.begin(), out.covers.end());
  return out;
}

}  // namespace clocklat
