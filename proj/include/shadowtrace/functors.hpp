#pragma once

#include "shadowtrace/grbimod.hpp"
#include "shadowtrace/invariants.hpp"
#include "shadowtrace/matmod.hpp"
#include "shadowtrace/span.hpp"
#include "shadowtrace/trace.hpp"

#include <array>
#include <string>
#include <vector>

namespace shadowtrace {

/// Z-linearization Span → MatMod<Integer>. Identity on 0-cells, fiber counts
/// on letters, 0/1 matrices on 2-cells. Letterwise on words, so the
/// composition comparison is the identity.
class Linearization {
 public:
  Linearization() = default;

  const Span& source() const { return span_; }
  const MatMod<Integer>& target() const { return mat_; }

  RankCell letter(const SpanCell& m) const;
  MatMod<Integer>::OneCell one(const Span::OneCell& w) const;
  MatMod<Integer>::TwoCell two(const Span::TwoCell& f) const;
  DualPair<MatMod<Integer>> dual(const DualPair<Span>& d) const;

  // Position of each apex element of w in the shadow basis of one(w), or -1
  // when the element is not a fixed point.
  std::vector<Index> shadow_basis(const Span::OneCell& w) const;
  // ⟨Z[W]⟩ → Z[Fix W]; a permutation matrix.
  ShadowMorphism phi(const Span::OneCell& w) const;

  // φ_NM ∘ θ(LM, LN) = θ(M, N) ∘ φ_MN.
  bool coherent(const Span::OneCell& m, const Span::OneCell& n) const;
  // φ_P ∘ tr(Lf) = tr(f) ∘ φ_Q, with tr(Lf) computed from the image of d and
  // again from the standard MatMod dual of LM.
  bool preserves_trace(const Span::TwoCell& f, const DualPair<Span>& d) const;

  // (block (r,t), index inside the block) of each apex element of w.
  struct Coordinate {
    int r = 0, t = 0;
    Index index = 0;
  };
  std::vector<Coordinate> coordinates(const Span::OneCell& w) const;

 private:
  Span span_;
  MatMod<Integer> mat_;
};

/// Rationalization GRBimod(Z) → GRBimod(Q): same ranks and matrices read
/// over Q. The shadow comparison is the identity matrix onto the retagged
/// integral presentation.
class Rationalization {
 public:
  const GRBimod& instance() const { return b_; }

  GroupCell zero(const GroupCell& g) const { return {g.group, Ring::Q}; }
  Bimodule letter(const Bimodule& m) const;
  GRBimod::OneCell one(const GRBimod::OneCell& w) const;
  GRBimod::TwoCell two(const GRBimod::TwoCell& f) const;
  DualPair<GRBimod> dual(const DualPair<GRBimod>& d) const;

  // Tensoring a presentation with Q.
  static ShadowPresentation on_shadow(const ShadowPresentation& p) { return retag(p, Ring::Q); }
  static ShadowMorphism on_shadow(const ShadowMorphism& f) { return retag(f, Ring::Q, Ring::Q); }
  ShadowMorphism phi(const GRBimod::OneCell& w) const;

  bool coherent(const GRBimod::OneCell& m, const GRBimod::OneCell& n) const;
  bool preserves_trace(const GRBimod::TwoCell& f, const DualPair<GRBimod>& d) const;

 private:
  GRBimod b_;
};

/// Extension of scalars Z → Q as a transformation from the inclusion of
/// GRBimod(Z) to rationalization. α_G is QG viewed as a ZG-QG bimodule and
/// every α_W is the identity matrix.
class ScalarExtension {
 public:
  const GRBimod& instance() const { return b_; }
  const Rationalization& rationalization() const { return rat_; }

  Bimodule component(const GroupCell& g) const;
  // α_W : W ⊙ α_S → α_R ⊙ G(W).
  GRBimod::TwoCell component(const GRBimod::OneCell& w) const;
  // The mate of α_{M*} under the duals of M and G(M): α_R ⊙ G(M) → M ⊙ α_S.
  GRBimod::TwoCell inverse_by_mate(const DualPair<GRBimod>& d) const;
  // Both composites of α_M with the mate of α_{M*} are identities.
  bool duals_invert(const DualPair<GRBimod>& d) const;

  // ⟨W⟩ over Z → ⟨G(W)⟩ over Q induced by α; identity on generators.
  ShadowMorphism on_shadow(const GRBimod::OneCell& w) const;

 private:
  GRBimod b_;
  Rationalization rat_;
};

// The six faces of the cube of traces for f: Q ⊙ M → M ⊙ P in GRBimod(Z),
// with F the inclusion and G rationalization.
struct CubeFaces {
  static constexpr std::array<const char*, 6> names = {"top", "bottom", "back", "front", "left", "right"};
  std::array<bool, 6> holds{};
  bool all() const {
    for (bool h : holds)
      if (!h) return false;
    return true;
  }
};

// Traces of the two routes in each face. Each face is checked separately.
CubeFaces cube_faces(const ScalarExtension& a, const GRBimod::TwoCell& f, const DualPair<GRBimod>& d);

// The cube summed over the degrees of a Reidemeister instance, including the
// statement that the integral Reidemeister trace rationalizes to the rational
// one. psi must be an automorphism.
CubeFaces reidemeister_cube(const ScalarExtension& a, const EquivariantChainComplex& c);

}  // namespace shadowtrace
