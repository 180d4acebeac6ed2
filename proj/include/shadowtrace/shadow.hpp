#pragma once

#include "shadowtrace/scalar.hpp"
#include "shadowtrace/smith.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace shadowtrace {

/// Cokernel presentation K^gens / im(relations) of a shadow ⟨M⟩.
///
/// Relations are produced on first use; most shadows in the matrix and span
/// instances are free and never need them.
class ShadowPresentation {
 public:
  ShadowPresentation();
  static ShadowPresentation free(Ring ring, Index generators);
  static ShadowPresentation with_relations(Ring ring, Index generators, SparseQ relations);
  static ShadowPresentation lazy(Ring ring, Index generators, std::function<SparseQ()> relations);

  Ring ring() const;
  Index generators() const;
  const SparseQ& relations() const;
  bool has_relations() const;

  // Membership of v in the relation module (over Z or Q as tagged).
  bool in_relations(const Vector<Rational>& v) const;

  // Cokernel invariants: free rank and torsion coefficients d > 1.
  Index free_rank() const;
  std::vector<Integer> torsion() const;
  std::string describe() const;

  // Same ring, generators and relation matrix.
  friend bool operator==(const ShadowPresentation& a, const ShadowPresentation& b);

 private:
  struct Data;
  std::shared_ptr<Data> data_;
};

/// A linear map ⟨M⟩ → ⟨N⟩ given on generators.
class ShadowMorphism {
 public:
  ShadowMorphism() = default;
  ShadowMorphism(ShadowPresentation src, ShadowPresentation tgt, SparseQ map);

  static ShadowMorphism identity(const ShadowPresentation& p);
  static ShadowMorphism zero(const ShadowPresentation& src, const ShadowPresentation& tgt);

  const ShadowPresentation& src() const { return src_; }
  const ShadowPresentation& tgt() const { return tgt_; }
  const SparseQ& matrix() const { return map_; }
  Matrix<Rational> dense() const { return Matrix<Rational>(map_); }

  // Relations of the source land in the relations of the target.
  bool descends() const;

  // Equality of the induced maps on the quotients.
  bool equals(const ShadowMorphism& other) const;

  friend ShadowMorphism operator*(const ShadowMorphism& g, const ShadowMorphism& f);
  friend ShadowMorphism operator+(const ShadowMorphism& a, const ShadowMorphism& b);
  friend ShadowMorphism operator-(const ShadowMorphism& a, const ShadowMorphism& b);
  friend ShadowMorphism operator*(const Rational& c, const ShadowMorphism& a);

 private:
  ShadowPresentation src_, tgt_;
  SparseQ map_;
};

// Change of scalars: same generators and relations, read over `ring`.
ShadowPresentation retag(const ShadowPresentation& p, Ring ring);
ShadowMorphism retag(const ShadowMorphism& f, Ring src_ring, Ring tgt_ring);

}  // namespace shadowtrace
