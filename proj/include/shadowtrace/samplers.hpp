#pragma once

#include "shadowtrace/grbimod.hpp"
#include "shadowtrace/matmod.hpp"
#include "shadowtrace/span.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace shadowtrace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi);

// Samplers produce random cells for the law checks. Every sampler offers:
//   zero, dual_zero         0-cells (dual_zero: a valid source of dualizable letters)
//   letter, rich, dualizable primitive 1-cells R ⇸ S; `rich` guarantees that
//                           maps into N⊙rich exist whenever N is dualizable
//   word                    random composable word of letters
//   map                     random 2-cell between given words, if one exists
//   automorphism            invertible 2-cell on a word and its inverse

template <class S>
class MatModSampler {
 public:
  using B = MatMod<S>;
  explicit MatModSampler(int max_set = 3, int max_rank = 3, int max_entry = 9, bool one_object = false)
      : max_set_(max_set), max_rank_(max_rank), max_entry_(max_entry), one_object_(one_object) {}

  const B& instance() const { return b_; }
  FinSet zero(Rng& rng) const;
  FinSet dual_zero(Rng& rng) const { return zero(rng); }
  RankCell letter(Rng& rng, const FinSet& r, const FinSet& s) const;
  RankCell rich(Rng& rng, const FinSet& r, const FinSet& s) const { return letter(rng, r, s); }
  RankCell dualizable(Rng& rng, const FinSet& r, const FinSet& s) const { return letter(rng, r, s); }
  typename B::OneCell word(Rng& rng, const FinSet& r, const FinSet& s, int max_len) const;
  std::optional<typename B::TwoCell> map(Rng& rng, const typename B::OneCell& dom,
                                         const typename B::OneCell& cod) const;
  std::pair<typename B::TwoCell, typename B::TwoCell> automorphism(Rng& rng, const typename B::OneCell& w) const;
  Matrix<S> random_matrix(Rng& rng, Index rows, Index cols) const;

 private:
  B b_;
  int max_set_, max_rank_, max_entry_;
  bool one_object_;
};

class SpanSampler {
 public:
  using B = Span;
  explicit SpanSampler(int max_set = 4) : max_set_(max_set) {}

  const B& instance() const { return b_; }
  FinSet zero(Rng& rng) const;
  FinSet dual_zero(Rng& rng) const { return zero(rng); }
  SpanCell letter(Rng& rng, const FinSet& r, const FinSet& s) const;
  SpanCell rich(Rng& rng, const FinSet& r, const FinSet& s) const;
  SpanCell dualizable(Rng& rng, const FinSet& r, const FinSet& s) const;
  B::OneCell word(Rng& rng, const FinSet& r, const FinSet& s, int max_len) const;
  std::optional<B::TwoCell> map(Rng& rng, const B::OneCell& dom, const B::OneCell& cod) const;
  std::pair<B::TwoCell, B::TwoCell> automorphism(Rng& rng, const B::OneCell& w) const;

 private:
  B b_;
  int max_set_;
};

class GRBimodSampler {
 public:
  using B = GRBimod;
  // Groups Z/2, Z/3 and S3 over the given ring; ranks at most max_rank.
  explicit GRBimodSampler(Ring ring = Ring::Z, int max_rank = 2, int max_entry = 3);

  const B& instance() const { return b_; }
  const std::vector<GroupCell>& groups() const { return groups_; }
  const GroupCell& trivial() const { return trivial_; }
  GroupCell zero(Rng& rng) const;
  GroupCell dual_zero(Rng&) const { return trivial_; }
  Bimodule letter(Rng& rng, const GroupCell& r, const GroupCell& s) const;
  Bimodule rich(Rng& rng, const GroupCell& r, const GroupCell& s) const { return letter(rng, r, s); }
  Bimodule dualizable(Rng& rng, const GroupCell& r, const GroupCell& s) const;
  B::OneCell word(Rng& rng, const GroupCell& r, const GroupCell& s, int max_len) const;
  std::optional<B::TwoCell> map(Rng& rng, const B::OneCell& dom, const B::OneCell& cod) const;
  std::pair<B::TwoCell, B::TwoCell> automorphism(Rng& rng, const B::OneCell& w) const;

  // Random matrix over KH with entries in [-max_entry, max_entry] on random
  // group elements.
  GRMatrix random_matrix(Rng& rng, const GroupPtr& h, Index rows, Index cols) const;
  // Σ_g λ_cod(g) X λ_dom(g^-1): an equivariant map.
  GRMatrix average(const B::Module& dom, const B::Module& cod, const GroupPtr& g, const GRMatrix& x) const;

 private:
  const std::vector<std::vector<int>>& homs(const GroupPtr& a, const GroupPtr& b) const;

  B b_;
  Ring ring_;
  int max_rank_, max_entry_;
  GroupCell trivial_;
  std::vector<GroupCell> groups_;
  GroupPtr z2_;
  std::map<std::pair<std::string, std::string>, std::vector<std::vector<int>>> homs_;
};

extern template class MatModSampler<Integer>;
extern template class MatModSampler<Rational>;

}  // namespace shadowtrace
