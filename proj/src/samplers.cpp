#include "shadowtrace/samplers.hpp"

#include <algorithm>
#include <numeric>

namespace shadowtrace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

namespace {

template <class T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs[uniform(rng, 0, static_cast<int>(xs.size()) - 1)];
}

std::vector<int> permutation(Rng& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

// MatMod

template <class S>
FinSet MatModSampler<S>::zero(Rng& rng) const {
  if (one_object_) return {"X1", 1};
  int n = uniform(rng, 1, max_set_);
  return {"X" + std::to_string(n), n};
}

template <class S>
RankCell MatModSampler<S>::letter(Rng& rng, const FinSet& r, const FinSet& s) const {
  std::vector<int> ranks(r.size * s.size);
  for (auto& n : ranks) n = uniform(rng, one_object_ ? 1 : 0, max_rank_);
  RankCell c(r, s, ranks);
  c.label = "M" + std::to_string(uniform(rng, 0, 999));
  return c;
}

template <class S>
typename MatMod<S>::OneCell MatModSampler<S>::word(Rng& rng, const FinSet& r, const FinSet& s, int max_len) const {
  int len = uniform(rng, r == s ? 0 : 1, std::max(max_len, 1));
  typename B::OneCell w(r);
  FinSet at = r;
  for (int i = 0; i < len; ++i) {
    FinSet next = i + 1 == len ? s : zero(rng);
    w = w * b_.letter(letter(rng, at, next));
    at = next;
  }
  return w;
}

template <class S>
Matrix<S> MatModSampler<S>::random_matrix(Rng& rng, Index rows, Index cols) const {
  Matrix<S> m = Matrix<S>::Zero(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i)
      if (uniform(rng, 0, 1)) m(i, j) = S(uniform(rng, -max_entry_, max_entry_));
  return m;
}

template <class S>
std::optional<typename MatMod<S>::TwoCell> MatModSampler<S>::map(Rng& rng, const typename B::OneCell& dom,
                                                                 const typename B::OneCell& cod) const {
  MatLayout ld = b_.layout(dom), lc = b_.layout(cod);
  std::vector<Matrix<S>> blocks;
  for (std::size_t k = 0; k < ld.dims.size(); ++k) blocks.push_back(random_matrix(rng, lc.dims[k], ld.dims[k]));
  return b_.make(dom, cod, std::move(blocks));
}

template <class S>
std::pair<typename MatMod<S>::TwoCell, typename MatMod<S>::TwoCell> MatModSampler<S>::automorphism(
    Rng& rng, const typename B::OneCell& w) const {
  MatLayout l = b_.layout(w);
  std::vector<Matrix<S>> fwd, inv;
  for (Index d : l.dims) {
    auto p = permutation(rng, static_cast<int>(d));
    Matrix<S> m = Matrix<S>::Zero(d, d);
    for (Index i = 0; i < d; ++i) m(p[i], i) = uniform(rng, 0, 1) ? 1 : -1;
    fwd.push_back(m);
    inv.push_back(m.transpose());
  }
  return {b_.make(w, w, fwd), b_.make(w, w, inv)};
}

template class MatModSampler<Integer>;
template class MatModSampler<Rational>;

// Span

FinSet SpanSampler::zero(Rng& rng) const {
  int n = uniform(rng, 1, max_set_);
  return {"S" + std::to_string(n), n};
}

SpanCell SpanSampler::letter(Rng& rng, const FinSet& r, const FinSet& s) const {
  int n = uniform(rng, 0, max_set_);
  std::vector<int> left(n), right(n);
  for (int a = 0; a < n; ++a) {
    left[a] = uniform(rng, 0, r.size - 1);
    right[a] = uniform(rng, 0, s.size - 1);
  }
  SpanCell c(r, s, left, right);
  c.label = "M" + std::to_string(uniform(rng, 0, 999));
  return c;
}

SpanCell SpanSampler::rich(Rng& rng, const FinSet& r, const FinSet& s) const {
  std::vector<int> left, right;
  for (int x = 0; x < r.size; ++x)
    for (int y = 0; y < s.size; ++y) {
      left.push_back(x);
      right.push_back(y);
    }
  int extra = uniform(rng, 0, 2);
  for (int k = 0; k < extra; ++k) {
    left.push_back(uniform(rng, 0, r.size - 1));
    right.push_back(uniform(rng, 0, s.size - 1));
  }
  SpanCell c(r, s, left, right);
  c.label = "P" + std::to_string(uniform(rng, 0, 999));
  return c;
}

SpanCell SpanSampler::dualizable(Rng& rng, const FinSet& r, const FinSet& s) const {
  std::vector<int> left = permutation(rng, r.size), right(r.size);
  for (auto& y : right) y = uniform(rng, 0, s.size - 1);
  SpanCell c(r, s, left, right);
  c.label = "D" + std::to_string(uniform(rng, 0, 999));
  return c;
}

Span::OneCell SpanSampler::word(Rng& rng, const FinSet& r, const FinSet& s, int max_len) const {
  int len = uniform(rng, r == s ? 0 : 1, std::max(max_len, 1));
  Span::OneCell w(r);
  FinSet at = r;
  for (int i = 0; i < len; ++i) {
    FinSet next = i + 1 == len ? s : zero(rng);
    w = w * b_.letter(letter(rng, at, next));
    at = next;
  }
  return w;
}

std::optional<Span::TwoCell> SpanSampler::map(Rng& rng, const Span::OneCell& dom, const Span::OneCell& cod) const {
  if (dom.src() != cod.src() || dom.tgt() != cod.tgt()) return std::nullopt;
  SpanApex a = b_.apex(dom), c = b_.apex(cod);
  std::vector<int> m(a.size());
  for (int k = 0; k < a.size(); ++k) {
    std::vector<int> cands;
    for (int j = 0; j < c.size(); ++j)
      if (c.left[j] == a.left[k] && c.right[j] == a.right[k]) cands.push_back(j);
    if (cands.empty()) return std::nullopt;
    m[k] = pick(rng, cands);
  }
  return b_.make(dom, cod, std::move(m));
}

std::pair<Span::TwoCell, Span::TwoCell> SpanSampler::automorphism(Rng& rng, const Span::OneCell& w) const {
  SpanApex a = b_.apex(w);
  std::map<std::pair<int, int>, std::vector<int>> fibers;
  for (int k = 0; k < a.size(); ++k) fibers[{a.left[k], a.right[k]}].push_back(k);
  std::vector<int> fwd(a.size()), inv(a.size());
  for (auto& [key, xs] : fibers) {
    auto p = permutation(rng, static_cast<int>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      fwd[xs[i]] = xs[p[i]];
      inv[xs[p[i]]] = xs[i];
    }
  }
  return {b_.make(w, w, fwd), b_.make(w, w, inv)};
}

// GRBimod

GRBimodSampler::GRBimodSampler(Ring ring, int max_rank, int max_entry)
    : ring_(ring), max_rank_(max_rank), max_entry_(max_entry) {
  trivial_ = {make_group(FiniteGroup::trivial()), ring};
  groups_ = {{make_group(FiniteGroup::cyclic(2)), ring},
             {make_group(FiniteGroup::cyclic(3)), ring},
             {make_group(FiniteGroup::symmetric3()), ring}};
  z2_ = groups_[0].group;
  std::vector<GroupPtr> all = {trivial_.group};
  for (const auto& g : groups_) all.push_back(g.group);
  for (const auto& a : all)
    for (const auto& b : all) homs_[{a->name(), b->name()}] = homomorphisms(*a, *b);
}

const std::vector<std::vector<int>>& GRBimodSampler::homs(const GroupPtr& a, const GroupPtr& b) const {
  auto it = homs_.find({a->name(), b->name()});
  if (it == homs_.end()) throw TypeError("sampler: unknown group pair");
  return it->second;
}

GroupCell GRBimodSampler::zero(Rng& rng) const { return pick(rng, groups_); }

Bimodule GRBimodSampler::letter(Rng& rng, const GroupCell& r, const GroupCell& s) const {
  const FiniteGroup& G = *r.group;
  const int n = uniform(rng, 1, max_rank_);
  const auto& psis = homs(r.group, s.group);
  const auto& signs = homs(r.group, z2_);
  std::vector<GRMatrix> act(G.order(), GRMatrix(s.group, n, n));
  if (n == 2 && uniform(rng, 0, 1)) {
    // χ(g) ψ(g) P_ρ(g) with P the swap.
    const auto& psi = pick(rng, psis);
    const auto& chi = pick(rng, signs);
    const auto& rho = pick(rng, signs);
    for (int g = 0; g < G.order(); ++g) {
      Rational c = chi[g] == z2_->identity() ? 1 : -1;
      for (int i = 0; i < 2; ++i) act[g].add(psi[g], rho[g] == z2_->identity() ? i : 1 - i, i, c);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const auto& psi = pick(rng, psis);
      const auto& chi = pick(rng, signs);
      for (int g = 0; g < G.order(); ++g) act[g].add(psi[g], i, i, chi[g] == z2_->identity() ? 1 : -1);
    }
  }
  if (n == 2 && uniform(rng, 0, 1)) {
    int a = uniform(rng, -2, 2);
    bool upper = uniform(rng, 0, 1);
    Matrix<Rational> A = Matrix<Rational>::Identity(2, 2), Ai = A;
    A(upper ? 0 : 1, upper ? 1 : 0) = a;
    Ai(upper ? 0 : 1, upper ? 1 : 0) = -a;
    GRMatrix gA = GRMatrix::embed(s.group, A), gAi = GRMatrix::embed(s.group, Ai);
    for (auto& m : act) m = gA * m * gAi;
  }
  Bimodule b(r, s, n, std::move(act));
  b.label = "M" + std::to_string(uniform(rng, 0, 999));
  return b;
}

Bimodule GRBimodSampler::dualizable(Rng& rng, const GroupCell& r, const GroupCell& s) const {
  if (r.group->order() == 1) {
    Bimodule b = GRBimod::free_module(r, s, uniform(rng, 1, max_rank_));
    b.label = "D" + std::to_string(uniform(rng, 0, 999));
    return b;
  }
  if (s.group->order() == 1) return GRBimod::regular_representation(r, s, 1);
  throw NotDualizable("sampler: no dualizable letter between nontrivial groups");
}

GRBimod::OneCell GRBimodSampler::word(Rng& rng, const GroupCell& r, const GroupCell& s, int max_len) const {
  int len = uniform(rng, r == s ? 0 : 1, std::max(max_len, 1));
  GRBimod::OneCell w(r);
  GroupCell at = r;
  for (int i = 0; i < len; ++i) {
    GroupCell next = i + 1 == len ? s : zero(rng);
    w = w * b_.letter(letter(rng, at, next));
    at = next;
  }
  return w;
}

GRMatrix GRBimodSampler::random_matrix(Rng& rng, const GroupPtr& h, Index rows, Index cols) const {
  GRMatrix m(h, rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      if (uniform(rng, 0, 1)) m.add(uniform(rng, 0, h->order() - 1), i, j, uniform(rng, -max_entry_, max_entry_));
  m.prune();
  return m;
}

GRMatrix GRBimodSampler::average(const GRBimod::Module& dom, const GRBimod::Module& cod, const GroupPtr& g,
                                 const GRMatrix& x) const {
  GRMatrix out(x.group(), x.rows(), x.cols());
  for (int k = 0; k < g->order(); ++k) out = out + cod.action[k] * x * dom.action[g->inv(k)];
  return out;
}

std::optional<GRBimod::TwoCell> GRBimodSampler::map(Rng& rng, const GRBimod::OneCell& dom,
                                                    const GRBimod::OneCell& cod) const {
  if (dom.src() != cod.src() || dom.tgt() != cod.tgt()) return std::nullopt;
  auto a = b_.realize(dom), c = b_.realize(cod);
  GRMatrix x = random_matrix(rng, dom.tgt().group, c.rank, a.rank);
  return b_.make(dom, cod, average(a, c, dom.src().group, x));
}

std::pair<GRBimod::TwoCell, GRBimod::TwoCell> GRBimodSampler::automorphism(Rng& rng, const GRBimod::OneCell& w) const {
  auto m = b_.realize(w);
  const GroupPtr& h = w.tgt().group;
  if (w.src().group->order() == 1) {
    auto p = permutation(rng, m.rank);
    GRMatrix fwd(h, m.rank, m.rank), inv(h, m.rank, m.rank);
    for (int j = 0; j < m.rank; ++j) {
      int x = uniform(rng, 0, h->order() - 1);
      Rational sgn = uniform(rng, 0, 1) ? 1 : -1;
      fwd.add(x, p[j], j, sgn);
      inv.add(h->inv(x), j, p[j], sgn);
    }
    return {b_.make(w, w, fwd), b_.make(w, w, inv)};
  }
  Rational sgn = uniform(rng, 0, 1) ? 1 : -1;
  GRMatrix id = sgn * GRMatrix::identity(h, m.rank);
  return {b_.make(w, w, id), b_.make(w, w, id)};
}

}  // namespace shadowtrace
