#pragma once

#include "shadowtrace/bicategory.hpp"

#include <map>
#include <string>
#include <type_traits>
#include <vector>

namespace shadowtrace {

struct FinSet {
  std::string name;
  int size = 0;

  friend bool operator==(const FinSet& a, const FinSet& b) { return a.name == b.name && a.size == b.size; }
  friend bool operator!=(const FinSet& a, const FinSet& b) { return !(a == b); }
};

// An (R x S)-matrix of free modules, given by ranks n_{r,s} (row-major).
class RankCell {
 public:
  RankCell() = default;
  RankCell(FinSet src, FinSet tgt, std::vector<int> ranks);

  const FinSet& src() const { return src_; }
  const FinSet& tgt() const { return tgt_; }
  int rank(int r, int s) const { return ranks_[r * tgt_.size + s]; }
  const std::vector<int>& ranks() const { return ranks_; }

  // Display name; not part of equality.
  std::string label;

  friend bool operator==(const RankCell& a, const RankCell& b) {
    return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.ranks_ == b.ranks_;
  }

 private:
  FinSet src_, tgt_;
  std::vector<int> ranks_;
};

// Basis bookkeeping for a word M1 ⊙ ... ⊙ Mk. Entry (r,t) of the composite is
// the direct sum over inner paths r1..r_{k-1} (lexicographic) of the tensor
// products, each in Kronecker order. Zero-dimensional summands are skipped.
struct MatLayout {
  struct Segment {
    std::vector<int> path;
    std::vector<int> dims;
    Index dim = 0;
    Index offset = 0;
  };
  int rows = 0, cols = 0;
  std::vector<std::vector<Segment>> blocks;
  std::vector<Index> dims;
  std::vector<std::map<std::vector<int>, int>> lookup;

  Index dim(int r, int t) const { return dims[r * cols + t]; }
  const std::vector<Segment>& block(int r, int t) const { return blocks[r * cols + t]; }
  const Segment* find(int r, int t, const std::vector<int>& path) const;
};

/// Matrices of free K-modules. K = Integer gives Mat(ℤ), Rational gives Mat(ℚ).
template <class S>
class MatMod {
 public:
  using Scalar = S;
  using ZeroCell = FinSet;
  using Letter = RankCell;
  using OneCell = Word<FinSet, RankCell>;

  class TwoCell {
   public:
    TwoCell() : dom_(FinSet{}), cod_(FinSet{}) {}
    TwoCell(OneCell dom, OneCell cod, std::vector<Matrix<S>> blocks)
        : dom_(std::move(dom)), cod_(std::move(cod)), blocks_(std::move(blocks)) {}
    const OneCell& dom() const { return dom_; }
    const OneCell& cod() const { return cod_; }
    const Matrix<S>& block(int r, int t) const { return blocks_[r * dom_.tgt().size + t]; }
    const std::vector<Matrix<S>>& blocks() const { return blocks_; }

   private:
    OneCell dom_, cod_;
    std::vector<Matrix<S>> blocks_;
  };

  static constexpr Ring ring = std::is_same_v<S, Integer> ? Ring::Z : Ring::Q;

  std::string name() const { return ring == Ring::Z ? "matmod-z" : "matmod-q"; }
  OneCell unit(const FinSet& r) const { return OneCell(r); }
  OneCell letter(const RankCell& m) const { return OneCell(m); }

  MatLayout layout(const OneCell& w) const;
  // Composite rank matrix n_{r,t}, row-major.
  std::vector<int> ranks(const OneCell& w) const;

  // Validates block shapes against the two layouts.
  TwoCell make(const OneCell& dom, const OneCell& cod, std::vector<Matrix<S>> blocks) const;
  TwoCell identity(const OneCell& w) const;
  TwoCell zero(const OneCell& dom, const OneCell& cod) const;
  TwoCell vcompose(const TwoCell& g, const TwoCell& f) const;
  TwoCell hcompose(const TwoCell& f, const TwoCell& g) const;
  TwoCell add(const TwoCell& a, const TwoCell& b) const;
  bool equal(const TwoCell& a, const TwoCell& b) const;

  ShadowPresentation shadow(const OneCell& w) const;
  ShadowMorphism shadow(const TwoCell& f) const;
  ShadowMorphism theta(const OneCell& m, const OneCell& n) const;

  DualPair<MatMod> dual_letter(const RankCell& m) const;

  // Dense matrix of f on the full basis: entries (r,t) in row-major order of
  // (r,t), each block in layout order.
  Matrix<S> dense(const TwoCell& f) const;
};

extern template class MatMod<Integer>;
extern template class MatMod<Rational>;

}  // namespace shadowtrace
