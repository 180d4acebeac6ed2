#include "shadowtrace/evaluator.hpp"

#include <gtest/gtest.h>

using namespace shadowtrace;

namespace {

const FinSet one{"1", 1};

RankCell rank1(int n) { return RankCell(one, one, {n}); }

Matrix<Rational> swap_oracle(int a, int b) {
  Matrix<Rational> p = Matrix<Rational>::Zero(a * b, a * b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) p(j * a + i, i * b + j) = 1;
  return p;
}

// One-object signature with letters M, N and boxes f: M → M, g: N → N.
struct Fixture {
  MatMod<Rational> b;
  ValuedDiagram<MatMod<Rational>> vd;
  Fixture(const Matrix<Rational>& f, const Matrix<Rational>& g) {
    vd.sig.add_zero("X");
    vd.sig.add_one({"M", "X", "X"});
    vd.sig.add_one({"N", "X", "X"});
    vd.sig.add_generator({"f", {"M"}, {"M"}});
    vd.sig.add_generator({"g", {"N"}, {"N"}});
    auto M = b.letter(rank1(static_cast<int>(f.rows()))), N = b.letter(rank1(static_cast<int>(g.rows())));
    vd.val.zero.emplace("X", one);
    vd.val.one.emplace("M", M);
    vd.val.one.emplace("N", N);
    vd.val.two.emplace("f", b.make(M, M, {f}));
    vd.val.two.emplace("g", b.make(N, N, {g}));
  }
};

}  // namespace

TEST(Evaluator, ThetaPowerZeroIsIdentity) {
  MatMod<Rational> b;
  auto w = b.letter(rank1(2)) * b.letter(rank1(3));
  auto id = ShadowMorphism::identity(b.shadow(w));
  EXPECT_TRUE(theta_power(b, w, 0).equals(id));
  EXPECT_TRUE(theta_power(b, w, 2).equals(id));
}

TEST(Evaluator, ThetaPowerMatchesSwapOracle) {
  MatMod<Rational> b;
  auto m = b.letter(rank1(2)), n = b.letter(rank1(3));
  auto t = theta_power(b, m * n, 1);
  EXPECT_TRUE(t.dense() == swap_oracle(2, 3));
  EXPECT_TRUE(t.equals(b.theta(m, n)));
}

TEST(Evaluator, ThetaPowerInverse) {
  MatMod<Rational> b;
  auto w = b.letter(rank1(2)) * b.letter(rank1(3)) * b.letter(rank1(2)) * b.letter(rank1(1));
  const int n = 4;
  for (int k = 0; k <= n; ++k) {
    auto rotated = w.slice(k, n) * w.slice(0, k);
    auto back = theta_power(b, rotated, n - k) * theta_power(b, w, k);
    EXPECT_TRUE(back.equals(ShadowMorphism::identity(b.shadow(w)))) << k;
  }
}

TEST(Evaluator, EmptyDiagramIsIdentityOnUnitShadow) {
  MatMod<Integer> b;
  Signature sig;
  sig.add_zero("R");
  Valuation<MatMod<Integer>> v;
  FinSet r{"R", 3};
  v.zero.emplace("R", r);
  auto t = value(b, sig, v, Diagram{"e", {{}, "R"}, {}});
  EXPECT_TRUE(t.dense() == Matrix<Rational>::Identity(3, 3));
}

TEST(Evaluator, ElementaryLayers) {
  Matrix<Rational> f(2, 2), g(3, 3);
  f << 1, 2, 3, 4;
  g << 0, 1, 0, 0, 0, 1, 5, 0, 0;
  Fixture fx(f, g);
  auto& b = fx.b;
  auto& vd = fx.vd;
  const auto& F = vd.val.two.at("f");
  const auto& G = vd.val.two.at("g");
  auto M = vd.val.one.at("M"), N = vd.val.one.at("N");

  auto wires = Layer::elementary({Slot::wire("M"), Slot::wire("N")});
  EXPECT_TRUE(value_elementary(b, vd.sig, vd.val, wires, {{"M", "N"}, "X"})
                  .equals(ShadowMorphism::identity(b.shadow(M * N))));
  auto single = Layer::elementary({Slot::box("f")});
  EXPECT_TRUE(value_elementary(b, vd.sig, vd.val, single, {{"M"}, "X"}).equals(b.shadow(F)));

  auto both = Layer::elementary({Slot::box("f"), Slot::box("g")});
  auto want = b.shadow(b.vcompose(b.hcompose(F, b.identity(N)), b.hcompose(b.identity(M), G)));
  EXPECT_TRUE(value_elementary(b, vd.sig, vd.val, both, {{"M", "N"}, "X"}).equals(want));

  // Splitting the two-box layer keeps the value.
  vd.diagram = Diagram{"two", {{"M", "N"}, "X"}, {both}};
  Move m{Move::Kind::SplitElementary, 0};
  m.first = {true, false};
  auto split = apply_move(vd.sig, vd.diagram, m);
  ASSERT_EQ(split.layers.size(), 2u);
  EXPECT_TRUE(value(b, vd.sig, vd.val, split).equals(value(b, vd)));
}

TEST(Evaluator, RotationOnlyDiagramIsPermutation) {
  Fixture fx(Matrix<Rational>::Identity(2, 2), Matrix<Rational>::Identity(3, 3));
  fx.vd.diagram = Diagram{"r", {{"M", "N"}, "X"}, {Layer::rotation(1)}};
  EXPECT_TRUE(value(fx.b, fx.vd).dense() == swap_oracle(2, 3));
}

template <class Sampler>
void trace_diagram_agrees(const Sampler& s, int trials, std::uint64_t seed) {
  Rng rng(seed);
  const auto& b = s.instance();
  int checked = 0;
  for (int t = 0; t < trials * 4 && checked < trials; ++t) {
    auto R = s.dual_zero(rng), S = s.zero(rng);
    auto d = make_dual(b, b.letter(s.dualizable(rng, R, S)));
    auto Q = s.word(rng, R, R, 1);
    auto P = b.letter(s.rich(rng, S, S));
    auto f = s.map(rng, Q * d.M, d.M * P);
    if (!f) continue;
    auto vd = build_trace_diagram(b, *f, d);
    ASSERT_EQ(vd.diagram.layers.size(), 4u);
    EXPECT_TRUE(value(b, vd).equals(trace(b, *f, d)));
    ++checked;
  }
  EXPECT_EQ(checked, trials);
}

TEST(Evaluator, TraceDiagramMatchesTrace) {
  trace_diagram_agrees(MatModSampler<Integer>(2, 2, 5), 20, 1);
  trace_diagram_agrees(SpanSampler(3), 20, 2);
  trace_diagram_agrees(GRBimodSampler(Ring::Z, 1, 2), 10, 3);
}

template <class Sampler>
void moves_preserve_value(const Sampler& s, int trials, std::uint64_t seed) {
  Rng rng(seed);
  const auto& b = s.instance();
  for (int t = 0; t < trials; ++t) {
    auto vd = random_diagram(s, rng);
    auto moves = applicable_moves(vd.sig, vd.diagram);
    while (moves.empty()) {
      vd = random_diagram(s, rng);
      moves = applicable_moves(vd.sig, vd.diagram);
    }
    auto m = moves[uniform(rng, 0, static_cast<int>(moves.size()) - 1)];
    auto moved = apply_move(vd.sig, vd.diagram, m);
    EXPECT_EQ(validate(vd.sig, moved), validate(vd.sig, vd.diagram));
    EXPECT_TRUE(value(b, vd.sig, vd.val, moved).equals(value(b, vd))) << m.describe();
    auto nf = normalize(vd.sig, vd.diagram);
    EXPECT_TRUE(value(b, vd.sig, vd.val, nf).equals(value(b, vd)));
  }
}

TEST(Evaluator, MovesPreserveValue) {
  moves_preserve_value(MatModSampler<Integer>(2, 2, 5), 40, 11);
  moves_preserve_value(MatModSampler<Rational>(2, 2, 5), 40, 12);
  moves_preserve_value(SpanSampler(3), 40, 13);
  moves_preserve_value(GRBimodSampler(Ring::Z, 1, 2), 20, 14);
}
