#pragma once

// Representations of the medial quiver: potentials and cyclic derivatives,
// the state module of a BMS state, endomorphism rings and subrepresentations.

#include "clocklat/bms.hpp"
#include "clocklat/error.hpp"
#include "clocklat/lattice.hpp"
#include "clocklat/linalg.hpp"
#include "clocklat/states.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace clocklat {

/// (+)^c (-)^k as a rows x cols matrix: an identity block at rows [0, r) and
/// columns [k, k + r), r = cols - k. Zero when k > cols or c > rows.
inline IntMatrix plus_minus_matrix(std::size_t c, std::size_t k, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  if (k > cols || c > rows) return m;
  if (cols - k != rows - c) {
    fail(Errc::ShapeMismatch, "(+)^" + std::to_string(c) + "(-)^" + std::to_string(k) + " cannot be " +
                                  std::to_string(rows) + "x" + std::to_string(cols));
  }
  for (std::size_t i = 0; i < cols - k; ++i) m(i, k + i) = 1;
  return m;
}

inline IntMatrix jordan_block(std::size_t n) { return plus_minus_matrix(1, 1, n, n); }

struct PotentialTerm {
  Rational coeff;
  std::vector<ArrowId> cycle;
};

struct Potential {
  std::vector<PotentialTerm> terms;

  friend Potential operator+(Potential a, const Potential& b) {
    a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
    return a;
  }
};

inline void require_cycle(const MedialQuiver& q, const std::vector<ArrowId>& c) {
  if (c.empty()) fail(Errc::NotACycle, "empty cycle");
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= q.num_arrows()) fail(Errc::NotACycle, "unknown arrow " + std::to_string(c[i]));
    if (q.target(c[i]) != q.source(c[(i + 1) % c.size()])) {
      fail(Errc::NotACycle, "arrows " + std::to_string(c[i]) + " and " + std::to_string(c[(i + 1) % c.size()]) +
                                " do not compose");
    }
  }
}

namespace detail {

inline std::vector<ArrowId> repeat(const std::vector<ArrowId>& c, std::size_t p) {
  std::vector<ArrowId> out;
  for (std::size_t i = 0; i < p; ++i) out.insert(out.end(), c.begin(), c.end());
  return out;
}

}  // namespace detail

/// Sum over the support of ω: +1/p Q(v)^p for vertices, -1/p Q(f)^p for faces,
/// with p = lcm(support values) / ω(x).
inline Potential canonical_potential(const MedialQuiver& q, const Weight& w) {
  long long xi = 0;
  for (int x : w.vertex) {
    if (x > 0) xi = xi ? std::lcm(xi, (long long)x) : x;
  }
  for (int x : w.face) {
    if (x > 0) xi = xi ? std::lcm(xi, (long long)x) : x;
  }
  if (xi == 0) fail(Errc::EmptySupport, "weight vanishes everywhere");
  Potential S;
  auto add = [&](const std::vector<ArrowId>& cycle, int value, int sign) {
    if (value == 0) return;
    long long p = xi / value;
    S.terms.push_back({Rational(sign, p), detail::repeat(cycle, static_cast<std::size_t>(p))});
  };
  for (VertexId v = 0; v < w.vertex.size(); ++v) add(q.vertex_cycles()[v], w.vertex[v], 1);
  for (FaceId f = 0; f < w.face.size(); ++f) add(q.face_cycles()[f], w.face[f], -1);
  return S;
}

/// Sum of Q(x)^power over the zero set of ω (vertex cycles with +coeff, face
/// cycles with -coeff). Adding it to the canonical potential keeps the
/// potential admissible.
inline Potential phantom_potential(const MedialQuiver& q, const Weight& w, std::size_t power = 1,
                                   Rational coeff = 1) {
  Potential S;
  for (VertexId v = 0; v < w.vertex.size(); ++v) {
    if (w.vertex[v] == 0) S.terms.push_back({coeff, detail::repeat(q.vertex_cycles()[v], power)});
  }
  for (FaceId f = 0; f < w.face.size(); ++f) {
    if (w.face[f] == 0) S.terms.push_back({-coeff, detail::repeat(q.face_cycles()[f], power)});
  }
  return S;
}

struct PathTerm {
  Rational coeff;
  std::vector<ArrowId> path;
  EdgeId start;  // needed when the path is empty
};

/// One rotated remainder per occurrence of `a` in each cycle.
inline std::vector<PathTerm> cyclic_derivative(const MedialQuiver& q, const Potential& S, ArrowId a) {
  std::vector<PathTerm> out;
  for (const auto& t : S.terms) {
    const auto& c = t.cycle;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] != a) continue;
      PathTerm pt{t.coeff, {}, q.target(a)};
      for (std::size_t i = 1; i < c.size(); ++i) pt.path.push_back(c[(k + i) % c.size()]);
      out.push_back(std::move(pt));
    }
  }
  return out;
}

struct QuiverRep {
  std::vector<std::size_t> dims;
  std::vector<graph::Arc> arrows;  // source -> target
  std::vector<IntMatrix> mats;     // dims[target] x dims[source]

  std::size_t total_dim() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }

  void validate() const {
    if (mats.size() != arrows.size()) fail(Errc::ShapeMismatch, "one matrix per arrow expected");
    for (std::size_t a = 0; a < arrows.size(); ++a) {
      if (mats[a].rows() != dims[arrows[a].to] || mats[a].cols() != dims[arrows[a].from]) {
        fail(Errc::ShapeMismatch, "arrow " + std::to_string(a) + " carries a " + mats[a].shape() + " matrix");
      }
    }
  }
};

inline QuiverRep zero_rep(const MedialQuiver& q) {
  QuiverRep M{std::vector<std::size_t>(q.num_vertices(), 0), q.arcs(), {}};
  M.mats.assign(q.num_arrows(), IntMatrix(0, 0));
  return M;
}

/// The one-dimensional module concentrated at e.
inline QuiverRep simple_module(const MedialQuiver& q, EdgeId e) {
  QuiverRep M = zero_rep(q);
  M.dims[e] = 1;
  for (ArrowId a = 0; a < q.num_arrows(); ++a) M.mats[a] = IntMatrix(M.dims[q.target(a)], M.dims[q.source(a)]);
  return M;
}

inline QuiverRep state_module(const DecoratedGraph& G, const BmsState& s) {
  const auto& q = G.quiver();
  QuiverRep M{{}, q.arcs(), {}};
  for (int x : s.d.values) M.dims.push_back(static_cast<std::size_t>(x));
  for (ArrowId a = 0; a < q.num_arrows(); ++a) {
    M.mats.push_back(plus_minus_matrix(s.f_plus[a], s.f_minus[a], M.dims[q.target(a)], M.dims[q.source(a)]));
  }
  return M;
}

inline QuiverRep direct_sum(const QuiverRep& A, const QuiverRep& B) {
  if (A.arrows.size() != B.arrows.size() || A.dims.size() != B.dims.size()) {
    fail(Errc::ShapeMismatch, "direct sum of representations of different quivers");
  }
  QuiverRep M{{}, A.arrows, {}};
  for (std::size_t e = 0; e < A.dims.size(); ++e) M.dims.push_back(A.dims[e] + B.dims[e]);
  for (std::size_t a = 0; a < A.arrows.size(); ++a) {
    const auto &x = A.mats[a], &y = B.mats[a];
    IntMatrix m(x.rows() + y.rows(), x.cols() + y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) m(i, j) = x(i, j);
    }
    for (std::size_t i = 0; i < y.rows(); ++i) {
      for (std::size_t j = 0; j < y.cols(); ++j) m(x.rows() + i, x.cols() + j) = y(i, j);
    }
    M.mats.push_back(std::move(m));
  }
  return M;
}

/// M_path = M_{a_l} ... M_{a_1}; the first arrow of `path` acts first.
inline IntMatrix evaluate_path(const QuiverRep& M, const std::vector<ArrowId>& path, std::optional<EdgeId> start = {}) {
  if (path.empty()) {
    if (!start) fail(Errc::ShapeMismatch, "empty path needs a start vertex");
    return IntMatrix::identity(M.dims[*start]);
  }
  if (start && M.arrows[path.front()].from != *start) fail(Errc::ShapeMismatch, "path does not start at the vertex");
  IntMatrix acc = M.mats[path.front()];
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (M.arrows[path[i - 1]].to != M.arrows[path[i]].from) {
      fail(Errc::ShapeMismatch, "arrows " + std::to_string(path[i - 1]) + " and " + std::to_string(path[i]) +
                                    " do not compose");
    }
    acc = M.mats[path[i]] * acc;
  }
  return acc;
}

struct JacobianResidual {
  ArrowId arrow;
  RatMatrix residual;
};

struct JacobianReport {
  std::size_t arrows_checked = 0;
  std::vector<JacobianResidual> nonzero;

  bool ok() const { return nonzero.empty(); }
};

/// Evaluates every cyclic derivative of S on M; all must vanish.
inline JacobianReport check_jacobian(const MedialQuiver& q, const QuiverRep& M, const Potential& S) {
  for (const auto& t : S.terms) require_cycle(q, t.cycle);
  JacobianReport rep;
  for (ArrowId a = 0; a < q.num_arrows(); ++a) {
    RatMatrix sum(M.dims[q.source(a)], M.dims[q.target(a)]);
    for (const auto& pt : cyclic_derivative(q, S, a)) {
      sum = sum + pt.coeff * evaluate_path(M, pt.path, pt.start).cast<Rational>();
    }
    ++rep.arrows_checked;
    if (!sum.is_zero()) rep.nonzero.push_back({a, std::move(sum)});
  }
  return rep;
}

/// Iterates W_{k+1}(t) = sum of M_a W_k(s) from W_0 = everything. The chain
/// decreases; M is nilpotent iff it reaches zero.
inline bool is_nilpotent(const QuiverRep& M) {
  const std::size_t n = M.dims.size();
  std::vector<RatMatrix> W(n);
  std::size_t total = 0;
  for (std::size_t e = 0; e < n; ++e) {
    W[e] = RatMatrix::identity(M.dims[e]);
    total += M.dims[e];
  }
  while (total > 0) {
    std::vector<RatMatrix> next(n);
    for (std::size_t e = 0; e < n; ++e) next[e] = RatMatrix(M.dims[e], 0);
    for (std::size_t a = 0; a < M.arrows.size(); ++a) {
      auto [s, t] = M.arrows[a];
      next[t] = hconcat(next[t], M.mats[a].cast<Rational>() * W[s]);
    }
    std::size_t new_total = 0;
    for (std::size_t e = 0; e < n; ++e) {
      next[e] = column_space(next[e]);
      new_total += next[e].cols();
    }
    if (new_total == total) return false;
    total = new_total;
    W = std::move(next);
  }
  return true;
}

struct EndomorphismRing {
  std::vector<std::vector<RatMatrix>> basis;  // per basis element, one matrix per vertex
  std::size_t radical_dim = 0;
  bool local = false;

  std::size_t dim() const { return basis.size(); }
};

/// Solves F_t M_a = M_a F_s for every arrow. The radical is the kernel of the
/// trace form tr(xy) taken on the defining representation, which is faithful,
/// so over characteristic zero it equals the Jacobson radical. The zero
/// module counts as not local.
inline EndomorphismRing endomorphism_ring(const QuiverRep& M) {
  const std::size_t n = M.dims.size();
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t e = 0; e < n; ++e) offset[e + 1] = offset[e] + M.dims[e] * M.dims[e];
  auto var = [&](std::size_t e, std::size_t i, std::size_t j) { return offset[e] + i * M.dims[e] + j; };

  std::size_t eqs = 0;
  for (auto [s, t] : M.arrows) eqs += M.dims[t] * M.dims[s];
  RatMatrix A(eqs, offset[n]);
  std::size_t row = 0;
  for (std::size_t a = 0; a < M.arrows.size(); ++a) {
    auto [s, t] = M.arrows[a];
    const auto& m = M.mats[a];
    for (std::size_t i = 0; i < M.dims[t]; ++i) {
      for (std::size_t j = 0; j < M.dims[s]; ++j, ++row) {
        for (std::size_t k = 0; k < M.dims[t]; ++k) {
          if (m(k, j) != 0) A(row, var(t, i, k)) += m(k, j);
        }
        for (std::size_t k = 0; k < M.dims[s]; ++k) {
          if (m(i, k) != 0) A(row, var(s, k, j)) -= m(i, k);
        }
      }
    }
  }

  EndomorphismRing R;
  for (const auto& v : nullspace(A)) {
    std::vector<RatMatrix> F;
    for (std::size_t e = 0; e < n; ++e) {
      RatMatrix f(M.dims[e], M.dims[e]);
      for (std::size_t i = 0; i < M.dims[e]; ++i) {
        for (std::size_t j = 0; j < M.dims[e]; ++j) f(i, j) = v[var(e, i, j)];
      }
      F.push_back(std::move(f));
    }
    R.basis.push_back(std::move(F));
  }
  const std::size_t b = R.dim();
  RatMatrix gram(b, b);
  for (std::size_t x = 0; x < b; ++x) {
    for (std::size_t y = x; y < b; ++y) {
      Rational tr = 0;
      for (std::size_t e = 0; e < n; ++e) {
        auto p = R.basis[x][e] * R.basis[y][e];
        for (std::size_t i = 0; i < p.rows(); ++i) tr += p(i, i);
      }
      gram(x, y) = gram(y, x) = tr;
    }
  }
  std::size_t semisimple = rank(gram);
  R.radical_dim = b - semisimple;
  R.local = M.total_dim() > 0 && semisimple == 1;
  return R;
}

inline std::vector<EdgeId> support(const QuiverRep& M) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < M.dims.size(); ++e) {
    if (M.dims[e] > 0) out.push_back(e);
  }
  return out;
}

/// Weak connectivity of the full subquiver on the support; false when empty.
inline bool support_connected(const QuiverRep& M) {
  auto supp = support(M);
  if (supp.empty()) return false;
  std::vector<std::size_t> local(M.dims.size(), 0);
  for (std::size_t i = 0; i < supp.size(); ++i) local[supp[i]] = i;
  std::vector<graph::Arc> arcs;
  for (auto [s, t] : M.arrows) {
    if (M.dims[s] > 0 && M.dims[t] > 0) arcs.push_back({local[s], local[t]});
  }
  return graph::weak_components(supp.size(), arcs).count == 1;
}

struct IndecomposabilityReport {
  std::optional<bool> by_support;  // empty when the weight is not characteristic
  bool by_endomorphisms = false;

  bool agree() const { return !by_support || *by_support == by_endomorphisms; }
  bool value() const { return by_support.value_or(by_endomorphisms); }
};

inline IndecomposabilityReport is_indecomposable(const QuiverRep& M, const Weight& w) {
  IndecomposabilityReport r;
  if (w.characteristic()) r.by_support = support_connected(M);
  r.by_endomorphisms = endomorphism_ring(M).local;
  return r;
}

/// Vertices e with a non-zero map M -> S_e: the incoming arrows do not span M_e.
inline std::vector<EdgeId> simple_quotients(const QuiverRep& M) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < M.dims.size(); ++e) {
    if (M.dims[e] == 0) continue;
    RatMatrix img(M.dims[e], 0);
    for (std::size_t a = 0; a < M.arrows.size(); ++a) {
      if (M.arrows[a].to == e) img = hconcat(img, M.mats[a].cast<Rational>());
    }
    if (rank(img) < M.dims[e]) out.push_back(e);
  }
  return out;
}

/// Per vertex, the number of leading coordinates spanned.
struct PrefixFamily {
  std::vector<std::size_t> k;

  std::size_t total() const { return std::accumulate(k.begin(), k.end(), std::size_t{0}); }
  auto operator<=>(const PrefixFamily&) const = default;
};

inline bool prefix_closed(const QuiverRep& M, const PrefixFamily& P, std::size_t arrow) {
  auto [s, t] = M.arrows[arrow];
  const auto& m = M.mats[arrow];
  for (std::size_t j = 0; j < P.k[s]; ++j) {
    for (std::size_t i = P.k[t]; i < m.rows(); ++i) {
      if (m(i, j) != 0) return false;
    }
  }
  return true;
}

/// At every supported vertex some vertex or face cycle through it must act as
/// the full nilpotent Jordan block. Returns the first vertex where none does.
inline std::optional<EdgeId> jordan_premise_failure(const MedialQuiver& q, const QuiverRep& M) {
  for (EdgeId e = 0; e < M.dims.size(); ++e) {
    if (M.dims[e] == 0) continue;
    const IntMatrix J = jordan_block(M.dims[e]);
    bool found = false;
    auto try_cycles = [&](const std::vector<std::vector<ArrowId>>& cycles) {
      for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size() && !found; ++i) {
          if (q.source(c[i]) != e) continue;
          std::vector<ArrowId> rot(c.begin() + i, c.end());
          rot.insert(rot.end(), c.begin(), c.begin() + i);
          found = evaluate_path(M, rot, e) == J;
        }
      }
    };
    try_cycles(q.vertex_cycles());
    try_cycles(q.face_cycles());
    if (!found) return e;
  }
  return std::nullopt;
}

struct SubrepOptions {
  std::size_t max_candidates = 10'000'000;
  CertifyOptions certify;
};

/// All subrepresentations of a state module for a characteristic weight,
/// as prefix families closed under every arrow, ordered pointwise.
inline FiniteLattice<PrefixFamily> enumerate_subreps(const MedialQuiver& q, const QuiverRep& M, const Weight& w,
                                                     const SubrepOptions& opt = {}) {
  if (!w.characteristic()) fail(Errc::NotCharacteristicWeight, "subrepresentation enumeration needs a 0/1 weight");
  M.validate();
  if (auto bad = jordan_premise_failure(q, M)) {
    fail(Errc::CandidateSpaceTooLarge,
         "no cycle acts as a Jordan block at vertex " + std::to_string(*bad) + "; prefix families may not be all");
  }
  double candidates = 1;
  for (auto d : M.dims) candidates *= static_cast<double>(d + 1);
  if (candidates > static_cast<double>(opt.max_candidates)) {
    fail(Errc::CandidateSpaceTooLarge, "candidate space exceeds " + std::to_string(opt.max_candidates));
  }
  const std::size_t n = M.dims.size();
  // arrows checked once both endpoints are assigned
  std::vector<std::vector<std::size_t>> ready(n);
  for (std::size_t a = 0; a < M.arrows.size(); ++a) ready[std::max(M.arrows[a].from, M.arrows[a].to)].push_back(a);

  std::vector<PrefixFamily> found;
  PrefixFamily cur{std::vector<std::size_t>(n, 0)};
  auto rec = [&](auto&& self, std::size_t e) -> void {
    if (e == n) {
      found.push_back(cur);
      return;
    }
    for (std::size_t k = 0; k <= M.dims[e]; ++k) {
      cur.k[e] = k;
      bool ok = true;
      for (auto a : ready[e]) ok = ok && prefix_closed(M, cur, a);
      if (ok) self(self, e + 1);
    }
    cur.k[e] = 0;
  };
  rec(rec, 0);

  std::sort(found.begin(), found.end(), [](const PrefixFamily& a, const PrefixFamily& b) {
    return a.total() != b.total() ? a.total() < b.total() : a < b;
  });
  FiniteLattice<PrefixFamily> L;
  L.poset = FinitePoset::from_order(found.size(), [&](std::size_t x, std::size_t y) {
    for (std::size_t e = 0; e < n; ++e) {
      if (found[x].k[e] > found[y].k[e]) return false;
    }
    return true;
  });
  for (const auto& p : found) L.grade.push_back(static_cast<long long>(p.total()));
  auto res = certify_graded_distributive_lattice(L.poset, L.grade, opt.certify);
  if (auto* ce = std::get_if<Counterexample>(&res)) {
    fail(Errc::CertificationFailed, "subrepresentation lattice: " + ce->describe());
  }
  L.certificate = std::get<LatticeCertificate>(std::move(res));
  L.elements = std::move(found);
  return L;
}

/// Inclusion M(sub) -> M(s) for a plus-subobject: the plus-map at each vertex.
inline std::vector<IntMatrix> subobject_inclusion(const BmsState& sub, const BmsState& s) {
  std::vector<IntMatrix> out;
  for (EdgeId e = 0; e < s.d.size(); ++e) {
    if (sub.d[e] > s.d[e]) fail(Errc::ShapeMismatch, "sub-state is larger at edge " + std::to_string(e));
    out.push_back(plus_minus_matrix(s.d[e] - sub.d[e], 0, s.d[e], sub.d[e]));
  }
  return out;
}

inline bool inclusion_intertwines(const DecoratedGraph& G, const BmsState& sub, const BmsState& s) {
  auto A = state_module(G, sub), B = state_module(G, s);
  auto iota = subobject_inclusion(sub, s);
  for (ArrowId a = 0; a < A.arrows.size(); ++a) {
    auto [src, tgt] = A.arrows[a];
    if (B.mats[a] * iota[src] != iota[tgt] * A.mats[a]) return false;
  }
  return true;
}

struct SubrepIsoCertificate {
  std::size_t plus_size = 0;
  std::size_t subrep_size = 0;
  bool bijective = false;
  bool order_isomorphism = false;
  bool grading = false;

  bool ok() const { return bijective && order_isomorphism && grading; }
};

/// Maps each plus-subobject (f', f_minus, d') to the prefix family k = d' and
/// checks that this is an order isomorphism onto the subrepresentations.
inline SubrepIsoCertificate verify_subrep_isomorphism(const DecoratedGraph& G, const BmsState& s,
                                                      const SubrepOptions& opt = {}) {
  if (!G.weight().characteristic()) fail(Errc::NotCharacteristicWeight, "weight is not characteristic");
  BmsLatticeOptions bopt;
  bopt.certify = opt.certify;
  auto plus = plus_subobjects(G, s, bopt);
  auto subs = enumerate_subreps(G.quiver(), state_module(G, s), G.weight(), opt);
  SubrepIsoCertificate c;
  c.plus_size = plus.size();
  c.subrep_size = subs.size();
  std::vector<std::size_t> phi;
  std::vector<char> hit(subs.size(), 0);
  c.bijective = plus.size() == subs.size();
  for (const auto& x : plus.elements) {
    PrefixFamily p;
    for (int v : x.d.values) p.k.push_back(static_cast<std::size_t>(v));
    auto it = std::find(subs.elements.begin(), subs.elements.end(), p);
    if (it == subs.elements.end()) {
      c.bijective = false;
      break;
    }
    std::size_t idx = static_cast<std::size_t>(it - subs.elements.begin());
    if (hit[idx]) c.bijective = false;
    hit[idx] = 1;
    phi.push_back(idx);
  }
  if (c.bijective) {
    c.order_isomorphism = verify_order_isomorphism(plus.poset, subs.poset, phi);
    c.grading = true;
    for (std::size_t i = 0; i < phi.size(); ++i) c.grading = c.grading && plus.grade[i] == subs.grade[phi[i]];
  }
  return c;
}

}  // namespace clocklat
