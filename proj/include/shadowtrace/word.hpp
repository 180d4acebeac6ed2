#pragma once

#include "shadowtrace/scalar.hpp"

#include <cstddef>
#include <vector>

namespace shadowtrace {

/// A 1-cell of the strict bicategory generated by primitive 1-cells P over
/// 0-cells Z: a composable path. Composition is concatenation and the unit
/// is the empty path, so associativity and unitality hold on the nose.
template <class Z, class P>
class Word {
 public:
  using zero_type = Z;
  using letter_type = P;

  explicit Word(Z at) : src_(at), tgt_(std::move(at)) {}
  explicit Word(P letter) : src_(letter.src()), tgt_(letter.tgt()), letters_{std::move(letter)} {}

  static Word of(const std::vector<P>& letters, const Z& at) {
    Word w(at);
    for (const auto& p : letters) w = w * Word(p);
    return w;
  }

  const Z& src() const { return src_; }
  const Z& tgt() const { return tgt_; }
  const std::vector<P>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool is_endo() const { return src_ == tgt_; }

  // 0-cell in front of letter i (i == size() gives tgt).
  const Z& zero_at(std::size_t i) const { return i == 0 ? src_ : letters_[i - 1].tgt(); }

  // Letters [begin, end), as a word between the adjacent 0-cells.
  Word slice(std::size_t begin, std::size_t end) const {
    Word w(zero_at(begin));
    w.letters_.assign(letters_.begin() + begin, letters_.begin() + end);
    w.tgt_ = zero_at(end);
    return w;
  }

  friend Word operator*(const Word& a, const Word& b) {
    if (!(a.tgt_ == b.src_)) throw TypeError("compose1: target of left factor differs from source of right factor");
    Word w = a;
    w.letters_.insert(w.letters_.end(), b.letters_.begin(), b.letters_.end());
    w.tgt_ = b.tgt_;
    return w;
  }

  friend bool operator==(const Word& a, const Word& b) {
    return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.letters_ == b.letters_;
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

 private:
  Z src_, tgt_;
  std::vector<P> letters_;
};

}  // namespace shadowtrace
