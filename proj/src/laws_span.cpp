#include "law_checks.hpp"

#include "shadowtrace/functors.hpp"

namespace shadowtrace::laws {

TrialOutcome span_trial(LawId law, Rng& rng) {
  static const SpanSampler s(4);
  static const Linearization lin;
  switch (law) {
    case LawId::Functoriality: {
      auto R = s.zero(rng), S = s.zero(rng);
      auto d = dual_word(s, rng, R, S);
      auto Q = s.word(rng, R, R, 1), P = s.word(rng, S, S, 1);
      auto f = s.map(rng, Q * d.M, d.M * P);
      if (!f) return skip();
      return expect(lin.preserves_trace(*f, d), "φ∘tr(Lf) ≠ L(tr f)∘φ");
    }
    case LawId::Coherence: {
      auto R = s.zero(rng), S = s.zero(rng);
      auto M = s.word(rng, R, S, 2), N = s.word(rng, S, R, 2);
      return expect(lin.coherent(M, N), "φ does not commute with θ");
    }
    default:
      return generic(law, s, rng);
  }
}

}  // namespace shadowtrace::laws
