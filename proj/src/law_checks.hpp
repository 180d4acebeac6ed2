#pragma once

#include "shadowtrace/evaluator.hpp"
#include "shadowtrace/laws.hpp"
#include "shadowtrace/samplers.hpp"
#include "shadowtrace/trace.hpp"

#include <string>
#include <vector>

namespace shadowtrace::laws {

using Kind = TrialOutcome::Kind;

inline TrialOutcome pass() { return {Kind::Pass, {}}; }
inline TrialOutcome skip() { return {Kind::Skip, {}}; }
inline TrialOutcome fail(std::string why) { return {Kind::Fail, std::move(why)}; }
inline TrialOutcome expect(bool ok, const std::string& why) { return ok ? pass() : fail(why); }

// Longest random words; bimodule words grow fast.
template <class Sm>
constexpr int kWord = 2;
template <>
constexpr int kWord<GRBimodSampler> = 1;

// Words around a trace and letters in a dualizable word; dense matrices on
// M ⊙ M* grow with the fourth power of the rank.
template <class Sm>
constexpr int kTraceWord = 1;
template <>
constexpr int kTraceWord<SpanSampler> = 2;

template <class Sm>
constexpr int kDualLetters = 2;
template <>
constexpr int kDualLetters<MatModSampler<Integer>> = 1;
template <>
constexpr int kDualLetters<MatModSampler<Rational>> = 1;

template <class Sm>
constexpr int kRotWord = 4;
template <>
constexpr int kRotWord<GRBimodSampler> = 3;

template <class Sm>
using One = typename Sm::B::OneCell;
template <class Sm>
using Two = typename Sm::B::TwoCell;
template <class Sm>
using Zero = typename Sm::B::ZeroCell;

template <class Sm>
Two<Sm> endo(const Sm& s, Rng& rng, const One<Sm>& w) {
  if (uniform(rng, 0, 1) == 1)
    if (auto f = s.map(rng, w, w)) return *f;
  return s.automorphism(rng, w).first;
}

// A map out of w into a fresh word when one turns up, else an endomorphism.
template <class Sm>
Two<Sm> map_out(const Sm& s, Rng& rng, const One<Sm>& w, int len) {
  auto target = s.word(rng, w.src(), w.tgt(), len);
  if (auto f = s.map(rng, w, target)) return *f;
  return endo(s, rng, w);
}

// A dualizable word R ⇸ S of one or two letters with its standard dual.
template <class Sm>
DualPair<typename Sm::B> dual_word(const Sm& s, Rng& rng, const Zero<Sm>& r, const Zero<Sm>& t) {
  const auto& b = s.instance();
  One<Sm> w = b.letter(s.dualizable(rng, r, t));
  if (kDualLetters<Sm> > 1 && uniform(rng, 0, 2) == 0) {
    auto x = s.dual_zero(rng);
    w = b.letter(s.dualizable(rng, r, x)) * b.letter(s.dualizable(rng, x, t));
  }
  return make_dual(b, w);
}

template <class Sm>
One<Sm> rotate(const One<Sm>& w, std::size_t k) {
  return w.slice(k, w.size()) * w.slice(0, k);
}

// ---- shadow axioms ----

template <class Sm>
TrialOutcome strictness(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto R = s.zero(rng), S = s.zero(rng), T = s.zero(rng), U = s.zero(rng);
  auto M = s.word(rng, R, S, kWord<Sm>), N = s.word(rng, S, T, kWord<Sm>), P = s.word(rng, T, U, kWord<Sm>);
  if ((M * N) * P != M * (N * P)) return fail("1-cell composition is not associative");
  if (b.unit(R) * M != M || M * b.unit(S) != M) return fail("unit 1-cell is not a unit");
  auto f = endo(s, rng, M), g = endo(s, rng, N), h = endo(s, rng, P);
  if (!b.equal(b.hcompose(b.hcompose(f, g), h), b.hcompose(f, b.hcompose(g, h))))
    return fail("horizontal composition is not associative");
  return expect(b.equal(b.hcompose(b.identity(b.unit(R)), f), f) && b.equal(b.hcompose(f, b.identity(b.unit(S))), f),
                "identity of the unit is not a horizontal unit");
}

template <class Sm>
TrialOutcome hexagon(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  const int n = kWord<Sm>;
  auto R = s.zero(rng), S = s.zero(rng), T = s.zero(rng);
  auto M = s.word(rng, R, S, n), N = s.word(rng, S, T, n), P = s.word(rng, T, R, n);
  auto lhs = b.theta(N, P * M) * b.theta(M, N * P);
  return expect(lhs.equals(b.theta(M * N, P)), "θ(N,P⊙M)∘θ(M,N⊙P) ≠ θ(M⊙N,P)");
}

template <class Sm>
TrialOutcome unit_left(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto R = s.zero(rng);
  auto M = s.word(rng, R, R, kWord<Sm>);
  auto id = ShadowMorphism::identity(b.shadow(M));
  return expect(b.theta(b.unit(R), M).equals(id), "θ(U,M) is not the identity");
}

template <class Sm>
TrialOutcome unit_right(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto R = s.zero(rng);
  auto M = s.word(rng, R, R, kWord<Sm>);
  auto id = ShadowMorphism::identity(b.shadow(M));
  return expect(b.theta(M, b.unit(R)).equals(id), "θ(M,U) is not the identity");
}

template <class Sm>
TrialOutcome theta_involution(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto R = s.zero(rng), S = s.zero(rng);
  auto M = s.word(rng, R, S, kWord<Sm>), N = s.word(rng, S, R, kWord<Sm>);
  auto id = ShadowMorphism::identity(b.shadow(M * N));
  return expect((b.theta(N, M) * b.theta(M, N)).equals(id), "θ(N,M)∘θ(M,N) is not the identity");
}

template <class Sm>
TrialOutcome interchange(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto R = s.zero(rng), S = s.zero(rng), T = s.zero(rng);
  auto M = s.word(rng, R, S, kWord<Sm>), N = s.word(rng, S, T, kWord<Sm>);
  auto f1 = endo(s, rng, M), f2 = endo(s, rng, M), g1 = endo(s, rng, N), g2 = endo(s, rng, N);
  auto lhs = b.vcompose(b.hcompose(f2, g2), b.hcompose(f1, g1));
  auto rhs = b.hcompose(b.vcompose(f2, f1), b.vcompose(g2, g1));
  return expect(b.equal(lhs, rhs), "(f2⊙g2)∘(f1⊙g1) ≠ (f2∘f1)⊙(g2∘g1)");
}

template <class Sm>
TrialOutcome shadow_functoriality(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto R = s.zero(rng);
  auto M = s.word(rng, R, R, kWord<Sm>);
  auto f = endo(s, rng, M), g = endo(s, rng, M);
  if (!b.shadow(b.identity(M)).equals(ShadowMorphism::identity(b.shadow(M))))
    return fail("⟨id⟩ is not the identity");
  if (!b.shadow(f).descends()) return fail("⟨f⟩ does not respect the relations");
  return expect(b.shadow(b.vcompose(g, f)).equals(b.shadow(g) * b.shadow(f)), "⟨g∘f⟩ ≠ ⟨g⟩∘⟨f⟩");
}

template <class Sm>
TrialOutcome theta_naturality(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  const int n = kWord<Sm>;
  auto R = s.zero(rng), S = s.zero(rng);
  auto M = s.word(rng, R, S, n), N = s.word(rng, S, R, n);
  auto f = map_out(s, rng, M, n), g = map_out(s, rng, N, n);
  auto lhs = b.shadow(b.hcompose(g, f)) * b.theta(M, N);
  auto rhs = b.theta(f.cod(), g.cod()) * b.shadow(b.hcompose(f, g));
  return expect(lhs.equals(rhs), "⟨g⊙f⟩∘θ ≠ θ∘⟨f⊙g⟩");
}

// ---- trace laws ----

template <class Sm>
TrialOutcome cyclicity(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto R = s.dual_zero(rng), S = s.zero(rng);
  auto dM = dual_word(s, rng, R, S);
  auto dN = uniform(rng, 0, 1) ? dM : dual_word(s, rng, R, S);
  auto f = s.map(rng, dM.M, dN.M);
  if (!f) return skip();
  auto g = s.map(rng, dN.M, dM.M);
  if (!g) return skip();
  auto lhs = trace(b, b.vcompose(*f, *g), dN);
  auto rhs = trace(b, b.vcompose(*g, *f), dM);
  return expect(lhs.equals(rhs), "tr(f∘g) ≠ tr(g∘f)");
}

template <class Sm>
TrialOutcome tightening(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  const int n = kTraceWord<Sm>;
  auto R = s.dual_zero(rng), S = s.zero(rng);
  auto d = dual_word(s, rng, R, S);
  auto Q = s.word(rng, R, R, n), P = s.word(rng, S, S, n);
  auto f = s.map(rng, Q * d.M, d.M * P);
  if (!f) return skip();
  // g: Q' → Q and h: P → P'.
  auto Q2 = s.word(rng, R, R, n);
  auto g = s.map(rng, Q2, Q);
  if (!g) g = endo(s, rng, Q);
  auto h = map_out(s, rng, P, n);
  auto idM = b.identity(d.M);
  auto lhs = b.shadow(h) * trace(b, *f, d) * b.shadow(*g);
  auto rhs = trace(b, b.vcompose(b.hcompose(idM, h), b.vcompose(*f, b.hcompose(*g, idM))), d);
  return expect(lhs.equals(rhs), "⟨h⟩∘tr(f)∘⟨g⟩ ≠ tr((id⊙h)∘f∘(g⊙id))");
}

template <class Sm>
TrialOutcome sliding(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  const int n = kTraceWord<Sm>;
  auto R = s.dual_zero(rng), X = s.dual_zero(rng), S = s.zero(rng), Y = s.zero(rng);
  auto dM = dual_word(s, rng, R, S), dN = dual_word(s, rng, X, Y);
  auto Q = s.word(rng, X, R, n), K = s.word(rng, R, X, n);
  One<Sm> P = b.letter(s.rich(rng, Y, S)), L = b.letter(s.rich(rng, S, Y));
  auto f = s.map(rng, Q * dM.M, dN.M * P);
  if (!f) return skip();
  auto g = s.map(rng, K * dN.M, dM.M * L);
  if (!g) return skip();
  auto tr1 = trace(b, b.vcompose(b.hcompose(*f, b.identity(L)), b.hcompose(b.identity(Q), *g)), dN);
  auto tr2 = trace(b, b.vcompose(b.hcompose(*g, b.identity(P)), b.hcompose(b.identity(K), *f)), dM);
  return expect((b.theta(P, L) * tr1).equals(tr2 * b.theta(Q, K)), "sliding square does not commute");
}

template <class Sm>
TrialOutcome trace_unit(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto R = s.zero(rng);
  auto Q = s.word(rng, R, R, kTraceWord<Sm>);
  auto f = map_out(s, rng, Q, kTraceWord<Sm>);
  return expect(trace(b, f, unit_dual(b, R)).equals(b.shadow(f)), "trace over the unit ≠ ⟨f⟩");
}

template <class Sm>
TrialOutcome composition(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto R = s.dual_zero(rng), S = s.dual_zero(rng), T = s.zero(rng);
  auto dM = dual_word(s, rng, R, S), dN = dual_word(s, rng, S, T);
  auto Q = s.word(rng, R, R, kTraceWord<Sm>);
  One<Sm> P = b.letter(s.rich(rng, S, S)), L = b.letter(s.rich(rng, T, T));
  auto f = s.map(rng, Q * dM.M, dM.M * P);
  if (!f) return skip();
  auto g = s.map(rng, P * dN.M, dN.M * L);
  if (!g) return skip();
  auto dMN = compose_duals(b, dM, dN);
  auto lhs = trace(b, b.vcompose(b.hcompose(b.identity(dM.M), *g), b.hcompose(*f, b.identity(dN.M))), dMN);
  auto rhs = trace(b, *g, dN) * trace(b, *f, dM);
  return expect(lhs.equals(rhs), "tr((id⊙g)(f⊙id)) ≠ tr(g)∘tr(f)");
}

template <class Sm>
TrialOutcome mate_law(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto R = s.dual_zero(rng), S = s.zero(rng);
  auto d = dual_word(s, rng, R, S);
  auto Q = s.word(rng, R, R, kTraceWord<Sm>);
  One<Sm> P = b.letter(s.rich(rng, S, S));
  auto f = s.map(rng, Q * d.M, d.M * P);
  if (!f) return skip();
  auto m = mate(b, *f, d, d);
  if (!b.equal(unmate(b, m, d, d), *f)) return fail("unmate∘mate ≠ id");
  return expect(left_trace(b, m, d).equals(trace(b, *f, d)), "left trace of the mate ≠ tr(f)");
}

template <class Sm>
TrialOutcome dual_independence(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto R = s.dual_zero(rng), S = s.zero(rng);
  auto d = dual_word(s, rng, R, S);
  auto Q = s.word(rng, R, R, kTraceWord<Sm>), P = s.word(rng, S, S, kTraceWord<Sm>);
  auto f = s.map(rng, Q * d.M, d.M * P);
  if (!f) return skip();
  // Change M* by an automorphism a: η' = (1⊙a)η, ε' = ε(a⁻¹⊙1).
  auto [a, ainv] = s.automorphism(rng, d.Mdual);
  DualPair<typename Sm::B> d2{d.M, d.Mdual, b.vcompose(b.hcompose(b.identity(d.M), a), d.coev),
                              b.vcompose(d.ev, b.hcompose(ainv, b.identity(d.M)))};
  if (!triangle_identities_hold(b, d2)) return fail("twisted dual fails the triangle identities");
  return expect(trace(b, *f, d2).equals(trace(b, *f, d)), "trace depends on the dual");
}

// ---- diagram laws ----

template <class Sm>
TrialOutcome theta_addition(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto R = s.zero(rng);
  auto w = s.word(rng, R, R, kRotWord<Sm>);
  const int n = static_cast<int>(w.size());
  if (n == 0) return skip();
  for (int k = 0; k <= n; ++k) {
    auto first = theta_power(b, w, k);
    auto rot = rotate<Sm>(w, static_cast<std::size_t>(k % n));
    for (int m = 0; m <= n; ++m)
      if (!(theta_power(b, rot, m) * first).equals(theta_power(b, w, (k + m) % n)))
        return fail("θ_" + std::to_string(m) + "∘θ_" + std::to_string(k) + " ≠ θ_" + std::to_string((k + m) % n) +
                    " on " + std::to_string(n) + " letters");
  }
  return pass();
}

template <class Sm>
TrialOutcome theta_tuple_naturality(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto R = s.zero(rng);
  auto w = s.word(rng, R, R, kRotWord<Sm>);
  const std::size_t n = w.size();
  if (n == 0) return skip();
  std::vector<Two<Sm>> f;
  for (const auto& p : w.letters()) {
    One<Sm> m = b.letter(p);
    One<Sm> target = b.letter(s.letter(rng, p.src(), p.tgt()));
    auto g = s.map(rng, m, target);
    f.push_back(g ? *g : endo(s, rng, m));
  }
  auto fold = [&](std::size_t k) {
    Two<Sm> acc = b.identity(b.unit(w.zero_at(k)));
    for (std::size_t i = 0; i < n; ++i) acc = b.hcompose(acc, f[(k + i) % n]);
    return acc;
  };
  auto F = fold(0);
  for (std::size_t k = 0; k <= n; ++k) {
    auto lhs = b.shadow(fold(k % n)) * theta_power(b, w, static_cast<int>(k));
    auto rhs = theta_power(b, F.cod(), static_cast<int>(k)) * b.shadow(F);
    if (!lhs.equals(rhs)) return fail("θ_" + std::to_string(k) + " is not natural");
  }
  return pass();
}

template <class Sm>
TrialOutcome theta_combination(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto R = s.zero(rng);
  auto w = s.word(rng, R, R, kRotWord<Sm>);
  const std::size_t n = w.size();
  if (n == 0) return skip();
  // Random composition of n into blocks.
  std::vector<One<Sm>> parts;
  std::vector<int> ends{0};
  std::size_t start = 0;
  while (start < n) {
    std::size_t len = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(n - start)));
    parts.push_back(w.slice(start, start + len));
    start += len;
    ends.push_back(static_cast<int>(start));
  }
  for (std::size_t j = 0; j <= parts.size(); ++j)
    if (!theta_power(b, parts, w.src(), static_cast<int>(j)).equals(theta_power(b, w, ends[j])))
      return fail("block rotation " + std::to_string(j) + " ≠ θ_" + std::to_string(ends[j]));
  return pass();
}

template <class Sm>
TrialOutcome deformation(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto vd = random_diagram(s, rng);
  auto moves = applicable_moves(vd.sig, vd.diagram);
  if (moves.empty()) return skip();
  const auto& mv = moves[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(moves.size()) - 1))];
  auto moved = apply_move(vd.sig, vd.diagram, mv);
  auto before = value(b, vd.sig, vd.val, vd.diagram);
  auto after = value(b, vd.sig, vd.val, moved);
  return expect(before.equals(after), "value changed under " + mv.describe());
}

template <class Sm>
TrialOutcome trace_diagram(const Sm& s, Rng& rng) {
  const auto& b = s.instance();
  auto R = s.dual_zero(rng), S = s.zero(rng);
  auto d = dual_word(s, rng, R, S);
  auto Q = s.word(rng, R, R, kTraceWord<Sm>), P = s.word(rng, S, S, kTraceWord<Sm>);
  auto f = s.map(rng, Q * d.M, d.M * P);
  if (!f) return skip();
  return expect(value(b, build_trace_diagram(b, *f, d)).equals(trace(b, *f, d)), "diagram value ≠ tr(f)");
}

template <class Sm>
TrialOutcome generic(LawId law, const Sm& s, Rng& rng) {
  switch (law) {
    case LawId::Strictness: return strictness(s, rng);
    case LawId::Hexagon: return hexagon(s, rng);
    case LawId::UnitLeft: return unit_left(s, rng);
    case LawId::UnitRight: return unit_right(s, rng);
    case LawId::ThetaInvolution: return theta_involution(s, rng);
    case LawId::Interchange: return interchange(s, rng);
    case LawId::ShadowFunctoriality: return shadow_functoriality(s, rng);
    case LawId::ThetaNaturality: return theta_naturality(s, rng);
    case LawId::Cyclicity: return cyclicity(s, rng);
    case LawId::Tightening: return tightening(s, rng);
    case LawId::Sliding: return sliding(s, rng);
    case LawId::Unit: return trace_unit(s, rng);
    case LawId::Composition: return composition(s, rng);
    case LawId::Mate: return mate_law(s, rng);
    case LawId::DualIndependence: return dual_independence(s, rng);
    case LawId::ThetaAddition: return theta_addition(s, rng);
    case LawId::ThetaTupleNaturality: return theta_tuple_naturality(s, rng);
    case LawId::ThetaCombination: return theta_combination(s, rng);
    case LawId::Deformation: return deformation(s, rng);
    case LawId::TraceDiagram: return trace_diagram(s, rng);
    default: return fail("law " + law_name(law) + " has no generic check");
  }
}

// Per-instance entry points, one translation unit each.
TrialOutcome matmod_z_trial(LawId law, Rng& rng);
TrialOutcome matmod_q_trial(LawId law, Rng& rng);
TrialOutcome span_trial(LawId law, Rng& rng);
TrialOutcome grbimod_trial(LawId law, Ring ring, Rng& rng);

}  // namespace shadowtrace::laws
