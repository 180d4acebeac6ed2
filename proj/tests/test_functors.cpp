#include "shadowtrace/functors.hpp"
#include "shadowtrace/samplers.hpp"

#include <gtest/gtest.h>

using namespace shadowtrace;

namespace {

FinSet set(const std::string& name, int n) { return FinSet{name, n}; }

// Random fiberwise endomorphism of the span m.
Span::TwoCell random_endo(const Span& b, const SpanCell& m, Rng& rng) {
  std::vector<int> map(m.apex());
  for (int a = 0; a < m.apex(); ++a) {
    std::vector<int> fiber;
    for (int x = 0; x < m.apex(); ++x)
      if (m.left()[x] == m.left()[a] && m.right()[x] == m.right()[a]) fiber.push_back(x);
    map[a] = fiber[uniform(rng, 0, static_cast<int>(fiber.size()) - 1)];
  }
  return b.make(b.letter(m), b.letter(m), map);
}

}  // namespace

TEST(Linearization, UnitSpanGoesToUnitRank) {
  Linearization L;
  auto R = set("R", 3);
  SpanCell id(R, R, {0, 1, 2}, {0, 1, 2});
  EXPECT_EQ(L.letter(id).ranks(), (std::vector<int>{1, 0, 0, 0, 1, 0, 0, 0, 1}));
  auto u = L.one(L.source().unit(R));
  EXPECT_TRUE(u.empty());
  EXPECT_EQ(L.target().ranks(u), (std::vector<int>{1, 0, 0, 0, 1, 0, 0, 0, 1}));
  auto two = L.two(L.source().identity(L.source().unit(R)));
  EXPECT_TRUE(L.target().equal(two, L.target().identity(u)));
}

TEST(Linearization, FiberCounts) {
  Linearization L;
  SpanCell m(set("R", 2), set("S", 2), {0, 0, 0, 1, 1}, {0, 1, 1, 0, 1});
  EXPECT_EQ(L.letter(m).ranks(), (std::vector<int>{1, 2, 1, 1}));
  SpanCell full(set("R", 2), set("S", 3), {0, 0, 0, 1, 1, 1}, {0, 1, 2, 0, 1, 2});
  EXPECT_EQ(L.letter(full).ranks(), (std::vector<int>(6, 1)));
}

TEST(Linearization, CompositeRanksCountPullbacks) {
  Linearization L;
  SpanSampler s(3);
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    auto R = s.zero(rng), S = s.zero(rng), T = s.zero(rng);
    auto w = s.instance().letter(s.rich(rng, R, S)) * s.instance().letter(s.rich(rng, S, T));
    auto apex = s.instance().apex(w);
    std::vector<int> counts(R.size * T.size, 0);
    for (int k = 0; k < apex.size(); ++k) ++counts[apex.left[k] * T.size + apex.right[k]];
    EXPECT_EQ(L.target().ranks(L.one(w)), counts);
  }
}

TEST(Linearization, PreservesComposition) {
  Linearization L;
  SpanSampler s(3);
  const auto& b = s.instance();
  const auto& m = L.target();
  Rng rng(4);
  int checked = 0;
  for (int t = 0; t < 200 && checked < 60; ++t) {
    auto R = s.zero(rng), S = s.zero(rng), T = s.zero(rng);
    auto w1 = s.word(rng, R, S, 2), w2 = s.word(rng, S, T, 2);
    auto [f, finv] = s.automorphism(rng, w1);
    auto [g, ginv] = s.automorphism(rng, w2);
    auto h = s.map(rng, w1, w1);
    if (!h) continue;
    EXPECT_TRUE(m.equal(L.two(b.vcompose(*h, f)), m.vcompose(L.two(*h), L.two(f))));
    EXPECT_TRUE(m.equal(L.two(b.hcompose(f, g)), m.hcompose(L.two(f), L.two(g))));
    EXPECT_TRUE(m.equal(L.two(b.identity(w1 * w2)), m.identity(L.one(w1 * w2))));
    ++checked;
  }
  EXPECT_EQ(checked, 60);
}

TEST(Linearization, PhiOnGraphIndexesFixedPoints) {
  Linearization L;
  auto R = set("R", 5);
  std::vector<int> f{2, 1, 0, 3, 3};
  SpanCell graph(R, R, {0, 1, 2, 3, 4}, f);
  auto w = L.source().letter(graph);
  auto phi = L.phi(w);
  std::vector<int> fixed;
  for (int r = 0; r < 5; ++r)
    if (f[r] == r) fixed.push_back(r);
  ASSERT_EQ(phi.tgt().generators(), static_cast<Index>(fixed.size()));
  ASSERT_EQ(phi.src().generators(), static_cast<Index>(fixed.size()));
  // ⟨Z[graph f]⟩ has one generator per diagonal fiber, ordered by r; φ sends
  // it to the matching fixed point.
  EXPECT_TRUE(phi.dense() == Matrix<Rational>::Identity(2, 2));
}

TEST(Linearization, PhiIsAPermutation) {
  Linearization L;
  SpanSampler s(3);
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    auto R = s.zero(rng);
    auto w = s.word(rng, R, R, 3);
    auto p = L.phi(w).dense();
    ASSERT_EQ(p.rows(), p.cols());
    for (Index i = 0; i < p.rows(); ++i) {
      Rational rs = 0, cs = 0;
      for (Index j = 0; j < p.cols(); ++j) {
        rs += p(i, j);
        cs += p(j, i);
      }
      EXPECT_EQ(rs, 1);
      EXPECT_EQ(cs, 1);
    }
  }
}

TEST(Linearization, CoherenceSquare) {
  Linearization L;
  SpanSampler s(3);
  Rng rng(7);
  for (int t = 0; t < 60; ++t) {
    auto R = s.zero(rng), S = s.zero(rng);
    EXPECT_TRUE(L.coherent(s.word(rng, R, S, 2), s.word(rng, S, R, 2)));
  }
}

TEST(Linearization, PreservesTraces) {
  Linearization L;
  SpanSampler s(3);
  const auto& b = s.instance();
  Rng rng(8);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 100; ++t) {
    auto R = s.zero(rng), S = s.zero(rng);
    auto d = make_dual(b, b.letter(s.dualizable(rng, R, S)));
    auto Q = s.word(rng, R, R, 1), P = s.word(rng, S, S, 1);
    auto f = s.map(rng, Q * d.M, d.M * P);
    if (!f) continue;
    EXPECT_TRUE(L.preserves_trace(*f, d));
    ++checked;
  }
  EXPECT_EQ(checked, 100);
}

TEST(Linearization, EndomorphismTraceCountsFiberFixedPoints) {
  Linearization L;
  SpanSampler s(3);
  const auto& m = L.target();
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    auto R = s.zero(rng), S = s.zero(rng);
    auto cell = s.rich(rng, R, S);
    auto f = random_endo(L.source(), cell, rng);
    auto tr = trace(m, L.two(f), make_dual(m, L.one(f.dom())));
    Matrix<Rational> want = Matrix<Rational>::Zero(S.size, R.size);
    for (int a = 0; a < cell.apex(); ++a)
      if (f.map()[a] == a) want(cell.right()[a], cell.left()[a]) += 1;
    EXPECT_TRUE(tr.dense() == want);
  }
}

TEST(Rationalization, FreeShadowKeepsRank) {
  Rationalization Q;
  auto p = Rationalization::on_shadow(ShadowPresentation::free(Ring::Z, 4));
  EXPECT_EQ(p.ring(), Ring::Q);
  EXPECT_EQ(p.free_rank(), 4);
}

TEST(Rationalization, TorsionDies) {
  SparseQ rel(2, 1);
  rel.insert(1, 0) = 2;
  auto z = ShadowPresentation::with_relations(Ring::Z, 2, rel);
  EXPECT_EQ(z.free_rank(), 1);
  EXPECT_EQ(z.torsion(), (std::vector<Integer>{2}));
  auto q = Rationalization::on_shadow(z);
  EXPECT_EQ(q.free_rank(), 1);
  EXPECT_TRUE(q.torsion().empty());
}

TEST(Rationalization, SignRepresentationShadow) {
  // λ(g) = -g on Z[Z/2]: the shadow is Z/2 ⊕ Z/2, rationally zero.
  GRBimod b;
  Rationalization Q;
  auto z2 = make_group(FiniteGroup::cyclic(2));
  GroupCell g{z2, Ring::Z};
  GRMatrix e = GRMatrix::identity(z2, 1), s(z2, 1, 1);
  s.add(1, 0, 0, -1);
  auto w = b.letter(Bimodule(g, g, 1, {e, s}));
  auto p = b.shadow(w);
  EXPECT_EQ(p.free_rank(), 0);
  EXPECT_EQ(p.torsion(), (std::vector<Integer>{2, 2}));
  EXPECT_EQ(b.shadow(Q.one(w)).free_rank(), 0);
  EXPECT_EQ(Rationalization::on_shadow(p).free_rank(), 0);
}

TEST(Rationalization, HattoriStallingsPipelines) {
  Rationalization Q;
  GRBimodSampler s(Ring::Z, 2, 3);
  const auto& b = s.instance();
  Rng rng(12);
  for (int t = 0; t < 30; ++t) {
    auto H = s.zero(rng);
    Index n = uniform(rng, 1, 2);
    GRMatrix f = s.random_matrix(rng, H.group, n, n);
    // Integral trace in the instance, then rationalized.
    auto M = b.letter(GRBimod::free_module(s.trivial(), H, static_cast<int>(n)));
    auto zt = Rationalization::on_shadow(trace(b, b.make(M, M, f), make_dual(b, M)));
    // Rational trace of the rationalized input.
    auto qM = Q.one(M);
    auto qt = trace(b, b.make(qM, qM, f), make_dual(b, qM));
    EXPECT_TRUE(Q.phi(b.unit(H)).dense() == Matrix<Rational>::Identity(H.group->order(), H.group->order()));
    EXPECT_TRUE((Q.phi(b.unit(H)) * qt).equals(zt * Q.phi(b.unit(s.trivial()))));
    EXPECT_EQ(hattori_stallings(f, Ring::Z).coeff, hattori_stallings(f, Ring::Q).coeff);
  }
}

TEST(Rationalization, CoherenceSquare) {
  Rationalization Q;
  GRBimodSampler s(Ring::Z, 2, 2);
  Rng rng(13);
  for (int t = 0; t < 40; ++t) {
    auto R = s.zero(rng), S = s.zero(rng);
    EXPECT_TRUE(Q.coherent(s.word(rng, R, S, 1), s.word(rng, S, R, 1)));
  }
}

TEST(Rationalization, PreservesTraces) {
  Rationalization Q;
  GRBimodSampler s(Ring::Z, 2, 2);
  const auto& b = s.instance();
  Rng rng(14);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 50; ++t) {
    auto R = s.dual_zero(rng), S = s.zero(rng);
    auto d = make_dual(b, b.letter(s.dualizable(rng, R, S)));
    auto Qw = s.word(rng, R, R, 1), P = s.word(rng, S, S, 1);
    auto f = s.map(rng, Qw * d.M, d.M * P);
    if (!f) continue;
    EXPECT_TRUE(Q.preserves_trace(*f, d));
    ++checked;
  }
  EXPECT_EQ(checked, 50);
}

TEST(ScalarExtension, ComponentsDescendAndAreEquivariant) {
  ScalarExtension a;
  GRBimodSampler s(Ring::Z, 2, 2);
  const auto& b = s.instance();
  Rng rng(15);
  for (int t = 0; t < 30; ++t) {
    auto R = s.zero(rng), S = s.zero(rng);
    auto w = s.word(rng, R, S, 2);
    EXPECT_NO_THROW(a.component(w));
    auto u = s.word(rng, R, R, 2);
    EXPECT_TRUE(a.on_shadow(u).descends());
    EXPECT_EQ(b.shadow(u).free_rank(), b.shadow(a.rationalization().one(u)).free_rank());
  }
}

TEST(ScalarExtension, DualsInvert) {
  ScalarExtension a;
  GRBimodSampler s(Ring::Z, 2, 2);
  const auto& b = s.instance();
  Rng rng(16);
  for (int t = 0; t < 30; ++t) {
    auto S = s.zero(rng);
    auto d = make_dual(b, b.letter(s.dualizable(rng, s.trivial(), S)));
    EXPECT_TRUE(a.duals_invert(d));
    auto inv = a.inverse_by_mate(d);
    EXPECT_TRUE(inv.dom() == b.letter(a.component(d.M.src())) * a.rationalization().one(d.M));
  }
}

TEST(ScalarExtension, CubeOnRandomTwoCells) {
  ScalarExtension a;
  GRBimodSampler s(Ring::Z, 2, 2);
  const auto& b = s.instance();
  Rng rng(17);
  int checked = 0;
  for (int t = 0; t < 200 && checked < 30; ++t) {
    auto R = s.dual_zero(rng), S = s.zero(rng);
    auto d = make_dual(b, b.letter(s.dualizable(rng, R, S)));
    auto P = s.word(rng, S, S, 1);
    auto f = s.map(rng, d.M, d.M * P);
    if (!f) continue;
    auto faces = cube_faces(a, *f, d);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_TRUE(faces.holds[i]) << CubeFaces::names[i];
    ++checked;
  }
  EXPECT_EQ(checked, 30);
}

TEST(ScalarExtension, ReidemeisterCube) {
  ScalarExtension a;
  Rng rng(18);
  for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()}) {
    auto gp = make_group(g);
    std::vector<std::vector<int>> autos;
    for (const auto& psi : homomorphisms(g, g))
      if (is_automorphism(g, psi)) autos.push_back(psi);
    for (int t = 0; t < 5; ++t) {
      const auto& psi = autos[uniform(rng, 0, static_cast<int>(autos.size()) - 1)];
      auto c = random_complex(rng, gp, psi, Ring::Z, 2, 2);
      auto faces = reidemeister_cube(a, c);
      for (std::size_t i = 0; i < 6; ++i) EXPECT_TRUE(faces.holds[i]) << CubeFaces::names[i];
    }
  }
}
