#pragma once

#include "shadowtrace/bicategory.hpp"
#include "shadowtrace/group_ring.hpp"

#include <string>
#include <vector>

namespace shadowtrace {

// A finite group G together with a ground ring K, standing for KG.
struct GroupCell {
  GroupPtr group;
  Ring ring = Ring::Z;

  std::string name() const { return group->name() + "/" + ring_name(ring); }
  friend bool operator==(const GroupCell& a, const GroupCell& b) {
    return a.ring == b.ring && same_group(a.group, b.group);
  }
  friend bool operator!=(const GroupCell& a, const GroupCell& b) { return !(a == b); }
};

using GRMatrix = GroupRingMatrix<Rational>;

// A (KG, K'H)-bimodule that is free of rank n as a right K'H-module; the left
// action is λ(g), an n x n matrix over K'H. Coefficients are stored as
// rationals and must be integral when K' = Z.
class Bimodule {
 public:
  Bimodule() = default;
  Bimodule(GroupCell src, GroupCell tgt, int rank, std::vector<GRMatrix> action);

  const GroupCell& src() const { return src_; }
  const GroupCell& tgt() const { return tgt_; }
  int rank() const { return rank_; }
  const std::vector<GRMatrix>& action() const { return action_; }
  const GRMatrix& action(int g) const { return action_[g]; }

  std::string label;

  friend bool operator==(const Bimodule& a, const Bimodule& b) {
    return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.rank_ == b.rank_ && a.action_ == b.action_;
  }

 private:
  GroupCell src_, tgt_;
  int rank_ = 0;
  std::vector<GRMatrix> action_;
};

/// Group-ring bimodules: 0-cells are group rings KG (K = Z or Q), 1-cells
/// free right modules with a left action, 2-cells equivariant matrices.
class GRBimod {
 public:
  using ZeroCell = GroupCell;
  using Letter = Bimodule;
  using OneCell = Word<GroupCell, Bimodule>;

  class TwoCell {
   public:
    TwoCell() : dom_(GroupCell{}), cod_(GroupCell{}) {}
    TwoCell(OneCell dom, OneCell cod, GRMatrix matrix)
        : dom_(std::move(dom)), cod_(std::move(cod)), matrix_(std::move(matrix)) {}
    const OneCell& dom() const { return dom_; }
    const OneCell& cod() const { return cod_; }
    const GRMatrix& matrix() const { return matrix_; }

   private:
    OneCell dom_, cod_;
    GRMatrix matrix_;
  };

  // Underlying free module of a word: rank and left action over the target.
  struct Module {
    int rank = 0;
    std::vector<GRMatrix> action;
  };

  std::string name() const { return "grbimod"; }
  OneCell unit(const GroupCell& g) const { return OneCell(g); }
  OneCell letter(const Bimodule& m) const { return OneCell(m); }

  Module realize(const OneCell& w) const;

  // Validates shape, integrality and equivariance.
  TwoCell make(const OneCell& dom, const OneCell& cod, GRMatrix matrix) const;
  TwoCell identity(const OneCell& w) const;
  TwoCell vcompose(const TwoCell& g, const TwoCell& f) const;
  TwoCell hcompose(const TwoCell& f, const TwoCell& g) const;
  bool equal(const TwoCell& a, const TwoCell& b) const;

  // Generators of ⟨W⟩ are e_i h, numbered i*|G| + h.
  ShadowPresentation shadow(const OneCell& w) const;
  ShadowMorphism shadow(const TwoCell& f) const;
  ShadowMorphism theta(const OneCell& m, const OneCell& n) const;

  // Duals exist for free modules out of the trivial group, and for the
  // regular-type modules (KG)^m : G ⇸ 1. Both sides need the same ring.
  DualPair<GRBimod> dual_letter(const Bimodule& m) const;

  // Rank-1 bimodule G ⇸ G with λ(g) = φ(g).
  static Bimodule twisted_unit(const GroupCell& g, const std::vector<int>& phi);
  // (KH)^n : 1 ⇸ H with trivial left action.
  static Bimodule free_module(const GroupCell& trivial, const GroupCell& h, int n);
  // K-module (KG)^m : G ⇸ 1 with G acting by left translation.
  static Bimodule regular_representation(const GroupCell& g, const GroupCell& trivial, int m = 1);
};

}  // namespace shadowtrace
