#include "shadowtrace/invariants.hpp"
#include "shadowtrace/smith.hpp"
#include "shadowtrace/trace.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace shadowtrace;

namespace {

// Orbits of h ↦ g h ψ(g)^-1, by union-find over all pairs.
int twisted_class_count_oracle(const FiniteGroup& g, const std::vector<int>& psi) {
  std::vector<int> parent(g.order());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int x = 0; x < g.order(); ++x)
    for (int h = 0; h < g.order(); ++h) parent[find(h)] = find(g.mul(g.mul(x, h), g.inv(psi[x])));
  int n = 0;
  for (int h = 0; h < g.order(); ++h) n += find(h) == h;
  return n;
}

// Z/3 with generator 1; g ↦ g^2.
std::vector<int> square_map() { return {0, 2, 1}; }

Matrix<Rational> dense(std::initializer_list<std::initializer_list<int>> rows) {
  Matrix<Rational> m(rows.size(), rows.begin()->size());
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (int v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST(Classes, CountsMatchOracle) {
  auto s3 = make_group(FiniteGroup::symmetric3());
  EXPECT_EQ(conjugacy_classes(s3).count(), 3);
  auto z3 = make_group(FiniteGroup::cyclic(3));
  EXPECT_EQ(twisted_conjugacy_classes(z3, square_map()).count(), 1);
  for (int n = 1; n <= 6; ++n) {
    auto zn = make_group(FiniteGroup::cyclic(n));
    EXPECT_EQ(conjugacy_classes(zn).count(), n);
  }
  for (const auto& g : {FiniteGroup::cyclic(4), FiniteGroup::cyclic(6), FiniteGroup::symmetric3()}) {
    auto gp = make_group(g);
    for (const auto& psi : homomorphisms(g, g))
      EXPECT_EQ(twisted_conjugacy_classes(gp, psi).count(), twisted_class_count_oracle(g, psi));
  }
}

TEST(Classes, TwistedUnitShadowRank) {
  GRBimod b;
  auto z3 = make_group(FiniteGroup::cyclic(3));
  GroupCell h{z3, Ring::Z};
  auto p = b.shadow(b.letter(GRBimod::twisted_unit(h, square_map())));
  EXPECT_EQ(p.free_rank(), twisted_conjugacy_classes(z3, square_map()).count());
  auto s3 = make_group(FiniteGroup::symmetric3());
  GroupCell k{s3, Ring::Z};
  for (const auto& psi : homomorphisms(*s3, *s3)) {
    if (!is_automorphism(*s3, psi)) continue;
    auto q = b.shadow(b.letter(GRBimod::twisted_unit(k, psi)));
    EXPECT_EQ(q.free_rank(), twisted_class_count_oracle(*s3, psi));
    EXPECT_TRUE(q.torsion().empty());
  }
}

TEST(Smith, SmallExample) {
  Matrix<Integer> a(2, 2);
  a << 2, 4, 6, 8;
  auto s = smith_normal_form(a);
  EXPECT_EQ(s.invariant_factors(), (std::vector<Integer>{2, 4}));
  EXPECT_TRUE(s.U * a * s.V == s.D);
}

TEST(Smith, RandomProperty) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> size(1, 4), entry(-6, 6);
  for (int t = 0; t < 200; ++t) {
    Matrix<Integer> a(size(rng), size(rng));
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
    auto s = smith_normal_form(a);
    ASSERT_TRUE(s.U * a * s.V == s.D);
    auto d = s.invariant_factors();
    for (std::size_t k = 0; k + 1 < d.size(); ++k)
      if (d[k + 1] != 0) EXPECT_EQ(d[k + 1] % d[k], 0);
    for (Index i = 0; i < s.D.rows(); ++i)
      for (Index j = 0; j < s.D.cols(); ++j)
        if (i != j) EXPECT_EQ(s.D(i, j), 0);
  }
}

TEST(HattoriStallings, Identity) {
  auto z2 = make_group(FiniteGroup::cyclic(2));
  auto x = hattori_stallings(GRMatrix::identity(z2, 3), Ring::Z);
  EXPECT_EQ(x.coeff, (std::vector<Rational>{3, 0}));
  EXPECT_EQ(x.describe(), "3[e]");
}

TEST(HattoriStallings, GroupElementCoefficients) {
  auto z2 = make_group(FiniteGroup::cyclic(2));
  GRMatrix f(z2, 1, 1);
  f.add(0, 0, 0, 2);
  f.add(1, 0, 0, 3);
  auto x = hattori_stallings(f, Ring::Z);
  EXPECT_EQ(x.describe(), "2[e] + 3[g1]");
  EXPECT_EQ(x.augmentation(), 5);
}

TEST(HattoriStallings, ProjectiveSummand) {
  auto z2 = make_group(FiniteGroup::cyclic(2));
  IdempotentModule p(GRMatrix::embed(z2, dense({{1, 0}, {0, 0}})), Ring::Z);
  EXPECT_EQ(hattori_stallings(p.idempotent(), p).describe(), "1[e]");
  EXPECT_THROW(IdempotentModule(GRMatrix::embed(z2, dense({{1, 1}, {0, 2}})), Ring::Z), TypeError);
  EXPECT_THROW(hattori_stallings(GRMatrix::identity(z2, 2), p), TypeError);
}

TEST(HattoriStallings, RationalIdempotentOverQG) {
  // e = (1 + g)/2 in QZ/2 has HS(e) = 1/2[e] + 1/2[g].
  auto z2 = make_group(FiniteGroup::cyclic(2));
  GRMatrix e(z2, 1, 1);
  e.add(0, 0, 0, Rational(1, 2));
  e.add(1, 0, 0, Rational(1, 2));
  IdempotentModule p(e, Ring::Q);
  auto x = hattori_stallings(e, p);
  EXPECT_EQ(x.coeff, (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
  EXPECT_THROW(IdempotentModule(e, Ring::Z), TypeError);
}

TEST(TwistedTrace, IdentityTwistIsHattoriStallings) {
  auto s3 = make_group(FiniteGroup::symmetric3());
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    GRMatrix f(s3, 2, 2);
    for (int h = 0; h < 6; ++h)
      for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) f.add(h, i, j, static_cast<int>(rng() % 5) - 2);
    f.prune();
    EXPECT_EQ(twisted_trace(f, identity_map(*s3), Ring::Z), hattori_stallings(f, Ring::Z));
  }
}

TEST(TwistedTrace, SquareTwistOnZ3) {
  auto z3 = make_group(FiniteGroup::cyclic(3));
  GRMatrix f(z3, 1, 1);
  f.add(1, 0, 0, 1);
  auto x = twisted_trace(f, square_map(), Ring::Z);
  EXPECT_EQ(x.coeff, (std::vector<Rational>{1}));
  EXPECT_EQ(x.describe(), "1[e]");
  EXPECT_EQ(twisted_trace(GRMatrix(z3, 1, 1), square_map(), Ring::Z).describe(), "0");
}

TEST(TwistedTrace, BicategoricalRouteAgrees) {
  std::mt19937_64 rng(21);
  for (const auto& g : {FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::symmetric3()}) {
    auto gp = make_group(g);
    for (const auto& psi : homomorphisms(g, g)) {
      if (!is_automorphism(g, psi)) continue;
      for (int t = 0; t < 3; ++t) {
        Index n = 1 + rng() % 2;
        GRMatrix f(gp, n, n);
        for (int h = 0; h < g.order(); ++h)
          for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
              if (rng() % 3 == 0) f.add(h, i, j, static_cast<int>(rng() % 7) - 3);
        f.prune();
        EXPECT_EQ(twisted_trace_bicategorical(f, psi, Ring::Z), twisted_trace(f, psi, Ring::Z));
      }
    }
  }
}

TEST(TwistedTrace, ClassMorphismIsShadowOfUnit) {
  GRBimod b;
  auto s3 = make_group(FiniteGroup::symmetric3());
  GroupCell h{s3, Ring::Z};
  GRMatrix f(s3, 1, 1);
  f.add(1, 0, 0, 4);
  f.add(3, 0, 0, -1);
  auto x = hattori_stallings(f, Ring::Z);
  auto m = class_morphism(b, x, h);
  EXPECT_EQ(m.tgt().generators(), 6);
  EXPECT_EQ(m.src().generators(), 1);
  GroupCell one{make_group(FiniteGroup::trivial()), Ring::Z};
  auto M = b.letter(GRBimod::free_module(one, h, 1));
  auto t = trace(b, b.make(M, M, f), make_dual(b, M));
  EXPECT_TRUE(t.equals(m));
}

namespace {

EquivariantChainComplex single_degree(GroupPtr g, GRMatrix f, std::vector<int> psi) {
  EquivariantChainComplex c;
  c.group = g;
  c.ranks = {static_cast<int>(f.rows())};
  c.psi = std::move(psi);
  c.chain_map = {std::move(f)};
  return c;
}

}  // namespace

TEST(Reidemeister, DegreeZeroIdentity) {
  auto z2 = make_group(FiniteGroup::cyclic(2));
  auto c = single_degree(z2, GRMatrix::identity(z2, 1), identity_map(*z2));
  EXPECT_EQ(reidemeister(c).describe(), "1[e]");
  EXPECT_EQ(reidemeister_bicategorical(c).describe(), "1[e]");
}

TEST(Reidemeister, CircleDegreeMap) {
  // C_1 = K, C_0 = K, ∂ = 0; a degree-d self-map of the circle gives 1 - d.
  auto triv = make_group(FiniteGroup::trivial());
  for (int d = -3; d <= 3; ++d) {
    EquivariantChainComplex c;
    c.group = triv;
    c.ranks = {1, 1};
    c.psi = {0};
    c.boundary = {GRMatrix(triv, 1, 1)};
    c.chain_map = {GRMatrix::identity(triv, 1), GRMatrix::embed(triv, dense({{d}}))};
    EXPECT_EQ(lefschetz(c), 1 - d);
    EXPECT_EQ(reidemeister(c).coeff, (std::vector<Rational>{1 - d}));
  }
}

TEST(Reidemeister, CircleAsZ2Cover) {
  // The circle as a Z/2-cover: C_1 = C_0 = KZ/2, ∂ = 1 - g; the identity gives 0.
  auto z2 = make_group(FiniteGroup::cyclic(2));
  EquivariantChainComplex c;
  c.group = z2;
  c.ranks = {1, 1};
  c.psi = identity_map(*z2);
  GRMatrix d(z2, 1, 1);
  d.add(0, 0, 0, 1);
  d.add(1, 0, 0, -1);
  c.boundary = {d};
  c.chain_map = {GRMatrix::identity(z2, 1), GRMatrix::identity(z2, 1)};
  EXPECT_EQ(reidemeister(c).describe(), "0");
  // Multiplication by g commutes with ∂ and gives [g] - [g].
  GRMatrix g(z2, 1, 1);
  g.add(1, 0, 0, 1);
  c.chain_map = {g, g};
  EXPECT_EQ(reidemeister(c).describe(), "0");
}

TEST(Reidemeister, ValidateRejectsBadComplexes) {
  auto z2 = make_group(FiniteGroup::cyclic(2));
  EquivariantChainComplex c;
  c.group = z2;
  c.ranks = {1, 1};
  c.psi = identity_map(*z2);
  GRMatrix d(z2, 1, 1);
  d.add(0, 0, 0, 1);
  c.boundary = {d};
  GRMatrix two = GRMatrix::embed(z2, dense({{2}}));
  c.chain_map = {GRMatrix::identity(z2, 1), two};
  EXPECT_THROW(c.validate(), TypeError);
  c.chain_map = {two, two};
  EXPECT_NO_THROW(c.validate());
  c.chain_map = {GRMatrix::embed(z2, Matrix<Rational>::Constant(1, 1, Rational(1, 2)))};
  EXPECT_THROW(c.validate(), TypeError);
}

TEST(Reidemeister, TrivialGroupEqualsLefschetz) {
  auto triv = make_group(FiniteGroup::trivial());
  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) {
    auto c = random_complex(rng, triv, {0}, Ring::Z);
    auto x = reidemeister(c);
    ASSERT_EQ(x.coeff.size(), 1u);
    EXPECT_EQ(x.coeff[0], lefschetz(c));
  }
}

TEST(Reidemeister, AugmentationCommutes) {
  std::mt19937_64 rng(41);
  for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()}) {
    auto gp = make_group(g);
    auto homs = homomorphisms(g, g);
    for (int t = 0; t < 30; ++t) {
      const auto& psi = homs[rng() % homs.size()];
      auto c = random_complex(rng, gp, psi, t % 2 ? Ring::Q : Ring::Z);
      auto x = reidemeister(c);
      EXPECT_EQ(augment_reidemeister(x), lefschetz(augment(c)));
      if (is_automorphism(g, psi)) EXPECT_EQ(reidemeister_bicategorical(c), x);
    }
  }
}

TEST(Reidemeister, RandomComplexesSpreadOverClasses) {
  auto s3 = make_group(FiniteGroup::symmetric3());
  std::mt19937_64 rng(51);
  int spread = 0;
  for (int t = 0; t < 30; ++t) {
    auto x = reidemeister(random_complex(rng, s3, identity_map(*s3), Ring::Z));
    bool off_identity = false;
    for (int c = 0; c < x.classes.count(); ++c) off_identity = off_identity || (c != x.classes.class_of[0] && x.coeff[c] != 0);
    spread += off_identity;
  }
  EXPECT_GE(spread, 5);
}
