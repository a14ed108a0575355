#include "clocklat/quiver_rep.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace clocklat;
using namespace testing_support;

namespace {

Errc error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::ParseError;
}

// The defining maps: (+) includes C^n as the first n coordinates of C^{n+1};
// (-) drops the first coordinate of C^n and shifts the rest down.
IntMatrix plus_n(std::size_t n) {
  IntMatrix m(n + 1, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix minus_n(std::size_t n) {
  IntMatrix m(n - 1, n);
  for (std::size_t i = 1; i < n; ++i) m(i - 1, i) = 1;
  return m;
}

// Applies a word of signs right to left (the last sign acts first).
std::optional<IntMatrix> word_matrix(const std::string& word, std::size_t n) {
  IntMatrix acc = IntMatrix::identity(n);
  std::size_t dim = n;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it == '+') {
      acc = plus_n(dim) * acc;
      ++dim;
    } else {
      if (dim == 0) return std::nullopt;
      acc = minus_n(dim) * acc;
      --dim;
    }
  }
  return acc;
}

BmsState top_state(const DecoratedGraph& G) {
  auto cm = component_minimum(G, enumerate_compatible(G).front());
  return bms_plus_lattice(G, cm.f_minus).maximum();
}

std::vector<BmsState> all_lattice_states(const DecoratedGraph& G) {
  std::vector<BmsState> out;
  auto L = build_L_graph(G);
  auto parts = connected_components(L);
  std::vector<char> done(parts.count, 0);
  for (std::size_t i = 0; i < L.nodes.size(); ++i) {
    if (done[parts.component_of[i]]++) continue;
    auto lat = bms_plus_lattice(G, component_minimum(G, L.nodes[i]).f_minus);
    out.insert(out.end(), lat.elements.begin(), lat.elements.end());
  }
  return out;
}

std::vector<EdgeId> anti_movable(const DecoratedGraph& G, const BmsState& s) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < G.num_edges(); ++e) {
    if (bms_anti_movable(G, s, e)) out.push_back(e);
  }
  return out;
}

bool is_upper_toeplitz(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i > j && m(i, j) != 0) return false;
      if (i > 0 && j > 0 && m(i, j) != m(i - 1, j - 1)) return false;
    }
  }
  return true;
}

}  // namespace

TEST(PlusMinus, Examples) {
  IntMatrix J3(3, 3);
  J3(0, 1) = J3(1, 2) = 1;
  EXPECT_EQ(plus_minus_matrix(1, 1, 3, 3), J3);
  EXPECT_EQ(plus_minus_matrix(0, 0, 4, 4), IntMatrix::identity(4));
  IntMatrix want(4, 3);
  want(0, 1) = want(1, 2) = 1;
  EXPECT_EQ(plus_minus_matrix(2, 1, 4, 3), want);
  EXPECT_EQ(plus_minus_matrix(2, 1, 4, 3), plus_n(3) * plus_n(2) * minus_n(3));
  EXPECT_TRUE(plus_minus_matrix(0, 4, 2, 3).is_zero());
  EXPECT_TRUE(plus_minus_matrix(5, 0, 2, 3).is_zero());
  EXPECT_EQ(plus_minus_matrix(0, 0, 0, 0).rows(), 0u);
  EXPECT_EQ(error_of([] { plus_minus_matrix(1, 0, 3, 3); }), Errc::ShapeMismatch);
}

TEST(PlusMinus, EveryWordEqualsTheSortedProduct) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t c = rng() % 4, k = rng() % 4, n = rng() % 5;
    std::string word = std::string(c, '+') + std::string(k, '-');
    std::shuffle(word.begin(), word.end(), rng);
    auto m = word_matrix(word, n);
    if (!m) continue;  // the word would pass through a negative dimension
    EXPECT_EQ(*m, plus_minus_matrix(c, k, n + c - k, n)) << word << " on " << n;
  }
}

TEST(Potential, CharacteristicWeightHasUnitCoefficients) {
  auto D = load_diagram("trefoil");
  auto S = canonical_potential(D.graph().quiver(), D.weight());
  EXPECT_EQ(S.terms.size(), 6u);  // three vertices, three unmarked faces
  for (const auto& t : S.terms) EXPECT_TRUE(t.coeff == 1 || t.coeff == -1);
  EXPECT_EQ(S.terms[0].cycle, D.graph().quiver().vertex_cycles()[0]);
}

TEST(Potential, TriangleExponentsAndCoefficients) {
  auto G = load_example("triangle");
  const auto& q = G.quiver();
  auto S = canonical_potential(q, G.weight());
  ASSERT_EQ(S.terms.size(), 5u);
  // vertices (1,1,2) and faces (2,2); lcm 2
  std::vector<Rational> coeff;
  std::vector<std::size_t> power;
  for (std::size_t i = 0; i < 5; ++i) {
    coeff.push_back(S.terms[i].coeff);
    std::size_t base = i < 3 ? q.vertex_cycles()[i].size() : q.face_cycles()[i - 3].size();
    power.push_back(S.terms[i].cycle.size() / base);
  }
  EXPECT_EQ(power, (std::vector<std::size_t>{2, 2, 1, 1, 1}));
  EXPECT_EQ(coeff, (std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(1), Rational(-1), Rational(-1)}));
}

TEST(Potential, EmptySupport) {
  auto m = load_map("examples/digon.map").map;
  MedialQuiver q(m);
  EXPECT_EQ(error_of([&] { canonical_potential(q, Weight{{0, 0}, {0, 0}}); }), Errc::EmptySupport);
}

TEST(CyclicDerivative, Examples) {
  auto m = load_map("corpus/trefoil.map").map;
  MedialQuiver q(m);
  const ArrowId a = 0, b = 1, c = 2, x = 3;
  Potential one{{{Rational(1), {a, b, c}}}};
  auto d1 = cyclic_derivative(q, one, a);
  ASSERT_EQ(d1.size(), 1u);
  EXPECT_EQ(d1[0].path, (std::vector<ArrowId>{b, c}));

  Potential two{{{Rational(2), {a, b, a, c}}}};
  auto d2 = cyclic_derivative(q, two, a);
  ASSERT_EQ(d2.size(), 2u);
  EXPECT_EQ(d2[0].path, (std::vector<ArrowId>{b, a, c}));
  EXPECT_EQ(d2[1].path, (std::vector<ArrowId>{c, a, b}));
  EXPECT_EQ(d2[1].coeff, 2);

  EXPECT_TRUE(cyclic_derivative(q, one, x).empty());
}

TEST(CyclicDerivative, BasePointDoesNotMatter) {
  auto D = load_diagram("figure_eight");
  const auto& q = D.graph().quiver();
  auto cyc = q.face_cycles()[2];
  Potential s1{{{Rational(1), cyc}}};
  std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
  Potential s2{{{Rational(1), cyc}}};
  for (ArrowId a = 0; a < q.num_arrows(); ++a) {
    auto x = cyclic_derivative(q, s1, a), y = cyclic_derivative(q, s2, a);
    ASSERT_EQ(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i].path, y[i].path);
  }
}

TEST(StateModule, TrivialStateGivesZero) {
  auto D = load_diagram("trefoil");
  auto g = enumerate_compatible(D.graph()).front();
  auto M = state_module(D.graph(), trivial_bms(D.graph(), g));
  EXPECT_EQ(M.total_dim(), 0u);
  EXPECT_TRUE(is_nilpotent(M));
  EXPECT_TRUE(simple_quotients(M).empty());
}

TEST(StateModule, DimsAndEntries) {
  auto D = load_diagram("trefoil");
  auto s = top_state(D.graph());
  auto M = state_module(D.graph(), s);
  M.validate();
  for (EdgeId e = 0; e < M.dims.size(); ++e) EXPECT_EQ(static_cast<int>(M.dims[e]), s.d[e]);
  for (const auto& m : M.mats) {
    for (auto x : m.data()) EXPECT_TRUE(x == 0 || x == 1);
  }
}

TEST(StateModule, VertexCyclesActAsPlusMinusPowers) {
  for (const auto& name : {"trefoil", "figure_eight", "torus_2_5"}) {
    auto D = load_diagram(name);
    const auto& G = D.graph();
    const auto& q = G.quiver();
    for (const auto& s : all_lattice_states(G)) {
      auto M = state_module(G, s);
      for (VertexId v = 0; v < q.vertex_cycles().size(); ++v) {
        const auto& c = q.vertex_cycles()[v];
        std::size_t d = M.dims[q.source(c[0])];
        std::size_t w = static_cast<std::size_t>(G.weight().vertex[v]);
        EXPECT_EQ(evaluate_path(M, c), plus_minus_matrix(w, w, d, d));
      }
    }
  }
}

TEST(StateModule, PathConvention) {
  auto D = load_diagram("torus_2_5");
  auto s = top_state(D.graph());
  auto M = state_module(D.graph(), s);
  const auto& q = D.graph().quiver();
  // find two composable arrows whose matrices are not square
  for (ArrowId a = 0; a < q.num_arrows(); ++a) {
    for (ArrowId b : q.outgoing(q.target(a))) {
      if (M.dims[q.source(a)] == M.dims[q.target(a)] && M.dims[q.target(a)] == M.dims[q.target(b)]) continue;
      if (M.dims[q.source(a)] == M.dims[q.target(b)]) continue;
      EXPECT_EQ(evaluate_path(M, {a, b}), M.mats[b] * M.mats[a]);
      EXPECT_EQ(error_of([&] { (void)(M.mats[a] * M.mats[b]); }), Errc::ShapeMismatch);
      return;
    }
  }
  FAIL() << "no non-square composable pair";
}

TEST(StateModule, EmptyPathIsIdentity) {
  auto D = load_diagram("trefoil");
  auto M = state_module(D.graph(), top_state(D.graph()));
  for (EdgeId e = 0; e < M.dims.size(); ++e) EXPECT_EQ(evaluate_path(M, {}, e), IntMatrix::identity(M.dims[e]));
  EXPECT_EQ(evaluate_path(M, {3}), M.mats[3]);
  EXPECT_EQ(error_of([&] { evaluate_path(M, {0, 0}); }), Errc::ShapeMismatch);
}

TEST(Jacobian, CorpusStatesSatisfyRelations) {
  for (const auto& name : corpus_names()) {
    auto D = load_diagram(name);
    const auto& G = D.graph();
    const auto& q = G.quiver();
    auto S = canonical_potential(q, G.weight());
    auto S2 = S + phantom_potential(q, G.weight(), 1) + phantom_potential(q, G.weight(), 3, Rational(2, 5));
    for (const auto& s : all_lattice_states(G)) {
      auto M = state_module(G, s);
      EXPECT_TRUE(check_jacobian(q, M, S).ok()) << name;
      EXPECT_TRUE(check_jacobian(q, M, S2).ok()) << name;
    }
  }
}

TEST(Jacobian, NonCharacteristicTriangle) {
  auto G = load_example("triangle");
  const auto& q = G.quiver();
  auto S = canonical_potential(q, G.weight());
  int checked = 0;
  for (const auto& g : enumerate_compatible(G)) {
    for (EdgeId e = 0; e < G.num_edges(); ++e) {
      if (!is_e_movable(G, g, e)) continue;
      DimensionVector d{std::vector<int>(G.num_edges(), 0)};
      d.values[e] = 1;
      auto s = make_bms(G, mov_e(G, g, e), g, d);
      EXPECT_TRUE(check_jacobian(q, state_module(G, s), S).ok());
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Jacobian, CorruptedEntryIsCaught) {
  auto D = load_diagram("figure_eight");
  const auto& G = D.graph();
  auto M = state_module(G, top_state(G));
  auto S = canonical_potential(G.quiver(), G.weight());
  ASSERT_TRUE(check_jacobian(G.quiver(), M, S).ok());
  bool flipped = false;
  for (auto& m : M.mats) {
    if (m.rows() > 0 && m.cols() > 0) {
      m(m.rows() - 1, 0) = 1 - m(m.rows() - 1, 0);
      flipped = true;
      break;
    }
  }
  ASSERT_TRUE(flipped);
  EXPECT_FALSE(check_jacobian(G.quiver(), M, S).ok());
}

TEST(Nilpotency, IdentityOnACycleIsNot) {
  auto D = load_diagram("trefoil");
  const auto& q = D.graph().quiver();
  QuiverRep M = zero_rep(q);
  for (auto& d : M.dims) d = 1;
  for (auto& m : M.mats) m = IntMatrix::identity(1);
  EXPECT_FALSE(is_nilpotent(M));
  EXPECT_TRUE(is_nilpotent(zero_rep(q)));
  for (const auto& s : all_lattice_states(D.graph())) EXPECT_TRUE(is_nilpotent(state_module(D.graph(), s)));
}

TEST(Endomorphisms, SmallCases) {
  auto D = load_diagram("trefoil");
  const auto& q = D.graph().quiver();
  auto zero = endomorphism_ring(zero_rep(q));
  EXPECT_EQ(zero.dim(), 0u);
  EXPECT_FALSE(zero.local);
  auto simple = endomorphism_ring(simple_module(q, 2));
  EXPECT_EQ(simple.dim(), 1u);
  EXPECT_TRUE(simple.local);
}

TEST(Endomorphisms, TopStatesAreLocalWithToeplitzBlocks) {
  for (const auto& name : {"trefoil", "figure_eight", "torus_2_6"}) {
    auto D = load_diagram(name);
    auto M = state_module(D.graph(), top_state(D.graph()));
    auto R = endomorphism_ring(M);
    EXPECT_TRUE(R.local) << name;
    EXPECT_EQ(R.dim() - R.radical_dim, 1u);
    for (const auto& F : R.basis) {
      for (const auto& block : F) EXPECT_TRUE(is_upper_toeplitz(block)) << name;
    }
  }
}

TEST(Indecomposable, MethodsAgreeOnCorpus) {
  for (const auto& name : corpus_names()) {
    auto D = load_diagram(name);
    for (const auto& s : all_lattice_states(D.graph())) {
      if (s.d.zero()) continue;
      auto r = is_indecomposable(state_module(D.graph(), s), D.weight());
      ASSERT_TRUE(r.by_support.has_value());
      EXPECT_TRUE(r.agree()) << name;
    }
  }
}

TEST(Indecomposable, SumOfDistantSimplesSplits) {
  auto D = load_diagram("figure_eight");
  const auto& q = D.graph().quiver();
  // two quiver vertices with no arrow between them
  std::optional<std::pair<EdgeId, EdgeId>> pair;
  for (EdgeId x = 0; x < q.num_vertices() && !pair; ++x) {
    for (EdgeId y = x + 1; y < q.num_vertices() && !pair; ++y) {
      bool adjacent = false;
      for (ArrowId a = 0; a < q.num_arrows(); ++a) {
        auto s = q.source(a), t = q.target(a);
        adjacent = adjacent || (s == x && t == y) || (s == y && t == x);
      }
      if (!adjacent) pair = std::pair{x, y};
    }
  }
  ASSERT_TRUE(pair);
  auto M = direct_sum(simple_module(q, pair->first), simple_module(q, pair->second));
  auto r = is_indecomposable(M, D.weight());
  EXPECT_EQ(r.by_support, false);
  EXPECT_FALSE(r.by_endomorphisms);
  EXPECT_EQ(endomorphism_ring(M).dim(), 2u);
}

TEST(Indecomposable, DisconnectedSupportStates) {
  // a connected sum: moves on the two summands commute and can leave a gap
  auto D = load_diagram("granny");
  int found = 0;
  for (const auto& s : all_lattice_states(D.graph())) {
    auto M = state_module(D.graph(), s);
    if (s.d.zero() || support_connected(M)) continue;
    auto r = is_indecomposable(M, D.weight());
    EXPECT_EQ(r.by_support, false);
    EXPECT_FALSE(r.by_endomorphisms);
    EXPECT_GE(endomorphism_ring(M).dim() - endomorphism_ring(M).radical_dim, 2u);
    ++found;
  }
  EXPECT_EQ(found, 2);
}

TEST(Indecomposable, NonCharacteristicSkipsSupportMethod) {
  auto G = load_example("triangle");
  auto g = enumerate_compatible(G).front();
  for (EdgeId e = 0; e < G.num_edges(); ++e) {
    if (!is_e_movable(G, g, e)) continue;
    DimensionVector d{std::vector<int>(G.num_edges(), 0)};
    d.values[e] = 1;
    auto M = state_module(G, make_bms(G, mov_e(G, g, e), g, d));
    auto r = is_indecomposable(M, G.weight());
    EXPECT_FALSE(r.by_support.has_value());
    EXPECT_TRUE(r.by_endomorphisms);
    EXPECT_EQ(error_of([&] { enumerate_subreps(G.quiver(), M, G.weight()); }), Errc::NotCharacteristicWeight);
    return;
  }
  FAIL() << "no movable edge";
}

TEST(SimpleQuotients, MatchAntiMovableEdges) {
  for (const auto& name : corpus_names()) {
    auto D = load_diagram(name);
    const auto& G = D.graph();
    for (const auto& s : all_lattice_states(G)) {
      EXPECT_EQ(simple_quotients(state_module(G, s)), anti_movable(G, s)) << name;
      for (EdgeId e = 0; e < G.num_edges(); ++e) {
        if (!bms_movable(G, s, e)) continue;
        auto q = simple_quotients(state_module(G, bms_mov_e(G, s, e)));
        EXPECT_NE(std::find(q.begin(), q.end(), e), q.end());
      }
    }
  }
}

TEST(ShortExactSequence, InclusionsIntertwine) {
  for (const auto& name : {"trefoil", "figure_eight", "granny"}) {
    auto D = load_diagram(name);
    const auto& G = D.graph();
    for (const auto& s : all_lattice_states(G)) {
      for (EdgeId e = 0; e < G.num_edges(); ++e) {
        if (!bms_movable(G, s, e)) continue;
        auto t = bms_mov_e(G, s, e);
        EXPECT_EQ(state_module(G, t).total_dim(), state_module(G, s).total_dim() + 1);
        EXPECT_TRUE(inclusion_intertwines(G, s, t)) << name;
      }
    }
  }
}

TEST(Subreps, LatticeSizes) {
  auto T = load_diagram("trefoil");
  auto tl = enumerate_subreps(T.graph().quiver(), state_module(T.graph(), top_state(T.graph())), T.weight());
  EXPECT_EQ(tl.size(), 3u);
  EXPECT_EQ(tl.poset.covers().size(), 2u);
  auto F = load_diagram("figure_eight");
  auto fl = enumerate_subreps(F.graph().quiver(), state_module(F.graph(), top_state(F.graph())), F.weight());
  EXPECT_EQ(fl.size(), 5u);
  auto z = enumerate_subreps(T.graph().quiver(), zero_rep(T.graph().quiver()), T.weight());
  EXPECT_EQ(z.size(), 1u);
}

TEST(Subreps, PrefixClosureAgreesWithRankTest) {
  // a prefix family is a subrepresentation iff M_a(span P_s) lies in span P_t
  auto D = load_diagram("torus_2_4");
  auto M = state_module(D.graph(), top_state(D.graph()));
  auto lat = enumerate_subreps(D.graph().quiver(), M, D.weight());
  std::set<PrefixFamily> found(lat.elements.begin(), lat.elements.end());
  auto prefix = [](std::size_t dim, std::size_t k) {
    RatMatrix p(dim, k);
    for (std::size_t i = 0; i < k; ++i) p(i, i) = 1;
    return p;
  };
  PrefixFamily P{std::vector<std::size_t>(M.dims.size(), 0)};
  std::size_t total = 0;
  for (;;) {
    bool closed = true;
    for (std::size_t a = 0; a < M.arrows.size() && closed; ++a) {
      auto [s, t] = M.arrows[a];
      auto Pt = prefix(M.dims[t], P.k[t]);
      auto img = M.mats[a].cast<Rational>() * prefix(M.dims[s], P.k[s]);
      closed = rank(hconcat(Pt, img)) == rank(Pt);
    }
    EXPECT_EQ(closed, found.count(P) > 0);
    ++total;
    std::size_t i = 0;
    while (i < P.k.size() && P.k[i] == M.dims[i]) P.k[i++] = 0;
    if (i == P.k.size()) break;
    ++P.k[i];
  }
  EXPECT_GT(total, found.size());
}

TEST(Subreps, Refusals) {
  auto D = load_diagram("figure_eight");
  const auto& q = D.graph().quiver();
  auto M = state_module(D.graph(), top_state(D.graph()));
  SubrepOptions tiny;
  tiny.max_candidates = 2;
  EXPECT_EQ(error_of([&] { enumerate_subreps(q, M, D.weight(), tiny); }), Errc::CandidateSpaceTooLarge);
  // identity everywhere: no cycle acts nilpotently, so prefixes are not enough
  QuiverRep I = zero_rep(q);
  for (auto& d : I.dims) d = 1;
  for (auto& m : I.mats) m = IntMatrix::identity(1);
  EXPECT_EQ(error_of([&] { enumerate_subreps(q, I, D.weight()); }), Errc::CandidateSpaceTooLarge);
}

TEST(Subreps, IsomorphicToPlusSubobjects) {
  for (const auto& [name, n] : std::vector<std::pair<std::string, std::size_t>>{{"trefoil", 3}, {"figure_eight", 5}}) {
    auto D = load_diagram(name);
    auto c = verify_subrep_isomorphism(D.graph(), top_state(D.graph()));
    EXPECT_TRUE(c.ok()) << name;
    EXPECT_EQ(c.plus_size, n);
    EXPECT_EQ(c.subrep_size, n);
  }
  auto D = load_diagram("trefoil");
  auto g = enumerate_compatible(D.graph()).front();
  auto c = verify_subrep_isomorphism(D.graph(), trivial_bms(D.graph(), g));
  EXPECT_TRUE(c.ok());
  EXPECT_EQ(c.plus_size, 1u);
}

TEST(Subreps, IsomorphismOnEveryCorpusState) {
  for (const auto& name : corpus_names()) {
    auto D = load_diagram(name);
    for (const auto& s : all_lattice_states(D.graph())) {
      EXPECT_TRUE(verify_subrep_isomorphism(D.graph(), s).ok()) << name;
    }
  }
}
