#pragma once

#include "shadowtrace/grbimod.hpp"
#include "shadowtrace/group.hpp"
#include "shadowtrace/trace.hpp"

#include <random>
#include <string>
#include <vector>

namespace shadowtrace {

/// An element of K[twisted conjugacy classes of G], indexed by class.
struct ClassVector {
  TwistedConjClasses classes;
  Ring ring = Ring::Z;
  std::vector<Rational> coeff;

  static ClassVector zero(TwistedConjClasses classes, Ring ring);
  // Adds c to the class of group element h.
  void add(int h, const Rational& c) { coeff[classes.class_of[h]] += c; }
  Rational augmentation() const;
  // "2[e] + 3[g1]", classes named by their minimal representative.
  std::string describe() const;

  friend bool operator==(const ClassVector& a, const ClassVector& b) {
    return a.classes.class_of == b.classes.class_of && a.coeff == b.coeff;
  }
  friend ClassVector operator+(ClassVector a, const ClassVector& b);
  friend ClassVector operator*(const Rational& c, ClassVector a);
};

std::string element_name(const FiniteGroup& g, int h);

// A projective module presented as the image of an idempotent e on (KH)^n.
class IdempotentModule {
 public:
  IdempotentModule(GRMatrix e, Ring ring);
  const GRMatrix& idempotent() const { return e_; }
  Ring ring() const { return ring_; }
  Index rank() const { return e_.rows(); }

 private:
  GRMatrix e_;
  Ring ring_;
};

/// Σ f_ii projected to K[conjugacy classes of H].
ClassVector hattori_stallings(const GRMatrix& f, Ring ring);
// Requires f = e f e.
ClassVector hattori_stallings(const GRMatrix& f, const IdempotentModule& p);

/// Σ f_ii projected along the ψ-twisted classes; f is a ψ-semilinear
/// endomorphism of (KH)^n given by its matrix.
ClassVector twisted_trace(const GRMatrix& f, const std::vector<int>& psi, Ring ring);

/// The same element computed as the bicategorical trace of f viewed as a
/// 2-cell M → M⊙R_ψ in GRBimod, for ψ an automorphism.
ClassVector twisted_trace_bicategorical(const GRMatrix& f, const std::vector<int>& psi, Ring ring);

// f as the 2-cell M → M ⊙ R_ψ with M = (KH)^n : 1 ⇸ H, together with the
// standard dual of M. R_ψ is realized as the left twist by ψ^-1.
std::pair<GRBimod::TwoCell, DualPair<GRBimod>> twisted_two_cell(const GRBimod& b, const GRMatrix& f,
                                                                 const std::vector<int>& psi, Ring ring);

/// Hattori-Stallings as a shadow morphism ⟨U_1⟩ → ⟨U_H⟩.
ShadowMorphism class_morphism(const GRBimod& b, const ClassVector& x, const GroupCell& h);

/// Free chain complex of right KG-modules with a ψ-semilinear chain map.
/// boundary[i] is ∂_{i+1}: C_{i+1} → C_i; chain_map[i] acts on C_i.
struct EquivariantChainComplex {
  GroupPtr group;
  Ring ring = Ring::Z;
  std::vector<int> ranks;
  std::vector<GRMatrix> boundary;
  std::vector<int> psi;
  std::vector<GRMatrix> chain_map;

  int top() const { return static_cast<int>(ranks.size()) - 1; }
  // Shapes, integrality, ∂∂ = 0 and F_{i-1} ψ(∂_i) = ∂_i F_i.
  void validate() const;
};

ClassVector reidemeister(const EquivariantChainComplex& c);
ClassVector reidemeister_bicategorical(const EquivariantChainComplex& c);
// Apply the augmentation KG → K everywhere; the group becomes trivial.
EquivariantChainComplex augment(const EquivariantChainComplex& c);
// Alternating sum of traces; the group must be trivial.
Rational lefschetz(const EquivariantChainComplex& c);
Rational augment_reidemeister(const ClassVector& x);

// A random complex with degrees 0..max_degree and ranks in 1..max_rank:
// an integral complex with a chain map, conjugated by monomial matrices over
// KG. Requires psi to be an endomorphism of g.
EquivariantChainComplex random_complex(std::mt19937_64& rng, const GroupPtr& g, const std::vector<int>& psi, Ring ring,
                                       int max_degree = 3, int max_rank = 3);

}  // namespace shadowtrace
