#include "law_checks.hpp"

#include "shadowtrace/functors.hpp"
#include "shadowtrace/invariants.hpp"

namespace shadowtrace::laws {

namespace {

struct GroupChoice {
  GroupPtr group;
  std::vector<int> psi;
};

// A group from the sampler with a random endomorphism, or automorphism when
// `invertible` is set.
GroupChoice random_twist(const GRBimodSampler& s, Rng& rng, bool invertible) {
  const auto& gs = s.groups();
  const auto& g = gs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(gs.size()) - 1))].group;
  std::vector<std::vector<int>> psis;
  for (auto& psi : homomorphisms(*g, *g))
    if (!invertible || is_automorphism(*g, psi)) psis.push_back(std::move(psi));
  return {g, psis[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(psis.size()) - 1))]};
}

std::string failed_faces(const CubeFaces& faces) {
  std::string out;
  for (std::size_t i = 0; i < faces.holds.size(); ++i)
    if (!faces.holds[i]) out += (out.empty() ? "" : ", ") + std::string(CubeFaces::names[i]);
  return out;
}

}  // namespace

TrialOutcome grbimod_trial(LawId law, Ring ring, Rng& rng) {
  static const GRBimodSampler sz(Ring::Z, 2, 3);
  static const GRBimodSampler sq(Ring::Q, 2, 3);
  static const Rationalization rat;
  static const ScalarExtension ext;
  const GRBimodSampler& s = ring == Ring::Z ? sz : sq;
  const auto& b = s.instance();
  switch (law) {
    case LawId::Functoriality: {
      auto S = s.zero(rng);
      auto d = make_dual(b, b.letter(s.dualizable(rng, s.trivial(), S)));
      auto Q = s.word(rng, s.trivial(), s.trivial(), 1), P = s.word(rng, S, S, 1);
      auto f = s.map(rng, Q * d.M, d.M * P);
      if (!f) return skip();
      return expect(rat.preserves_trace(*f, d), "φ∘tr(Gf) ≠ G(tr f)∘φ");
    }
    case LawId::Coherence: {
      auto R = s.zero(rng), S = s.zero(rng);
      return expect(rat.coherent(s.word(rng, R, S, 1), s.word(rng, S, R, 1)), "φ does not commute with θ");
    }
    case LawId::DualsInvert: {
      auto d = dual_word(s, rng, s.trivial(), s.zero(rng));
      return expect(ext.duals_invert(d), "α_M and the mate of α_M* are not inverse");
    }
    case LawId::Cube: {
      auto [g, psi] = random_twist(s, rng, true);
      auto faces = reidemeister_cube(ext, random_complex(rng, g, psi, Ring::Z, 2, 2));
      return expect(faces.all(), "cube faces fail: " + failed_faces(faces));
    }
    case LawId::Augmentation: {
      auto [g, psi] = random_twist(s, rng, false);
      auto c = random_complex(rng, g, psi, ring, 3, 3);
      auto r = reidemeister(c);
      return expect(augment_reidemeister(r) == lefschetz(augment(c)),
                    "augmented Reidemeister trace " + r.describe() + " ≠ Lefschetz number");
    }
    default:
      return generic(law, s, rng);
  }
}

}  // namespace shadowtrace::laws
