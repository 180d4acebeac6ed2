#pragma once

#include "shadowtrace/bicategory.hpp"
#include "shadowtrace/matmod.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace shadowtrace {

// A span R <- A -> S of finite sets; the apex is {0..n-1}.
class SpanCell {
 public:
  SpanCell() = default;
  SpanCell(FinSet src, FinSet tgt, std::vector<int> left, std::vector<int> right);

  const FinSet& src() const { return src_; }
  const FinSet& tgt() const { return tgt_; }
  int apex() const { return static_cast<int>(left_.size()); }
  const std::vector<int>& left() const { return left_; }
  const std::vector<int>& right() const { return right_; }

  std::string label;

  friend bool operator==(const SpanCell& a, const SpanCell& b) {
    return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.left_ == b.left_ && a.right_ == b.right_;
  }

 private:
  FinSet src_, tgt_;
  std::vector<int> left_, right_;
};

// Apex of a composite span: compatible tuples in lexicographic order. The
// apex of the empty word at R is R itself, with empty tuples.
struct SpanApex {
  std::vector<std::vector<int>> tuples;
  std::vector<int> left, right;
  std::map<std::pair<int, std::vector<int>>, int> index;

  int size() const { return static_cast<int>(tuples.size()); }
  int find(int left_node, const std::vector<int>& tuple) const;
};

/// Spans of finite sets with pullback composition.
class Span {
 public:
  using ZeroCell = FinSet;
  using Letter = SpanCell;
  using OneCell = Word<FinSet, SpanCell>;

  class TwoCell {
   public:
    TwoCell() : dom_(FinSet{}), cod_(FinSet{}) {}
    TwoCell(OneCell dom, OneCell cod, std::vector<int> map)
        : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {}
    const OneCell& dom() const { return dom_; }
    const OneCell& cod() const { return cod_; }
    // Apex index of the source -> apex index of the target.
    const std::vector<int>& map() const { return map_; }

   private:
    OneCell dom_, cod_;
    std::vector<int> map_;
  };

  std::string name() const { return "span"; }
  OneCell unit(const FinSet& r) const { return OneCell(r); }
  OneCell letter(const SpanCell& m) const { return OneCell(m); }

  SpanApex apex(const OneCell& w) const;

  // Validates that the map commutes with both legs.
  TwoCell make(const OneCell& dom, const OneCell& cod, std::vector<int> map) const;
  TwoCell identity(const OneCell& w) const;
  TwoCell vcompose(const TwoCell& g, const TwoCell& f) const;
  TwoCell hcompose(const TwoCell& f, const TwoCell& g) const;
  bool equal(const TwoCell& a, const TwoCell& b) const;

  // Apex indices with equal legs, in apex order.
  std::vector<int> fixed_points(const OneCell& w) const;
  ShadowPresentation shadow(const OneCell& w) const;
  ShadowMorphism shadow(const TwoCell& f) const;
  ShadowMorphism theta(const OneCell& m, const OneCell& n) const;

  // Defined when the left leg is a bijection.
  DualPair<Span> dual_letter(const SpanCell& m) const;
};

}  // namespace shadowtrace
