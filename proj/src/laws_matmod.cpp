#include "law_checks.hpp"

namespace shadowtrace::laws {

TrialOutcome matmod_z_trial(LawId law, Rng& rng) {
  static const MatModSampler<Integer> s(3, 3, 9);
  return generic(law, s, rng);
}

TrialOutcome matmod_q_trial(LawId law, Rng& rng) {
  static const MatModSampler<Rational> s(3, 3, 9);
  return generic(law, s, rng);
}

}  // namespace shadowtrace::laws
