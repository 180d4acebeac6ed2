#include "shadowtrace/span.hpp"

#include <functional>

namespace shadowtrace {

SpanCell::SpanCell(FinSet src, FinSet tgt, std::vector<int> left, std::vector<int> right)
    : src_(std::move(src)), tgt_(std::move(tgt)), left_(std::move(left)), right_(std::move(right)) {
  if (left_.size() != right_.size()) throw TypeError("span legs have different domains");
  for (int x : left_)
    if (x < 0 || x >= src_.size) throw TypeError("span left leg leaves " + src_.name);
  for (int x : right_)
    if (x < 0 || x >= tgt_.size) throw TypeError("span right leg leaves " + tgt_.name);
}

int SpanApex::find(int left_node, const std::vector<int>& tuple) const {
  auto it = index.find({left_node, tuple});
  if (it == index.end()) throw TypeError("tuple is not in the apex");
  return it->second;
}

SpanApex Span::apex(const OneCell& w) const {
  SpanApex A;
  const auto& ls = w.letters();
  if (ls.empty()) {
    for (int r = 0; r < w.src().size; ++r) {
      A.tuples.push_back({});
      A.left.push_back(r);
      A.right.push_back(r);
    }
  } else {
    std::vector<int> cur;
    std::function<void(std::size_t, int)> dfs = [&](std::size_t i, int node) {
      if (i == ls.size()) {
        A.tuples.push_back(cur);
        A.left.push_back(ls[0].left()[cur[0]]);
        A.right.push_back(node);
        return;
      }
      for (int a = 0; a < ls[i].apex(); ++a) {
        if (i > 0 && ls[i].left()[a] != node) continue;
        cur.push_back(a);
        dfs(i + 1, ls[i].right()[a]);
        cur.pop_back();
      }
    };
    dfs(0, -1);
  }
  for (int k = 0; k < A.size(); ++k) A.index[{A.left[k], A.tuples[k]}] = k;
  return A;
}

Span::TwoCell Span::make(const OneCell& dom, const OneCell& cod, std::vector<int> map) const {
  if (dom.src() != cod.src() || dom.tgt() != cod.tgt())
    throw TypeError("2-cell source and target have different endpoints");
  SpanApex a = apex(dom), b = apex(cod);
  if (static_cast<int>(map.size()) != a.size()) throw TypeError("span map has the wrong domain size");
  for (int k = 0; k < a.size(); ++k) {
    if (map[k] < 0 || map[k] >= b.size()) throw TypeError("span map leaves the target apex");
    if (a.left[k] != b.left[map[k]] || a.right[k] != b.right[map[k]])
      throw TypeError("span map does not commute with the legs at apex element " + std::to_string(k));
  }
  return TwoCell(dom, cod, std::move(map));
}

Span::TwoCell Span::identity(const OneCell& w) const {
  std::vector<int> m(apex(w).size());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = static_cast<int>(k);
  return TwoCell(w, w, std::move(m));
}

Span::TwoCell Span::vcompose(const TwoCell& g, const TwoCell& f) const {
  if (f.cod() != g.dom()) throw TypeError("vertical composition: target of first 2-cell differs from source of second");
  std::vector<int> m(f.map().size());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = g.map()[f.map()[k]];
  return TwoCell(f.dom(), g.cod(), std::move(m));
}

Span::TwoCell Span::hcompose(const TwoCell& f, const TwoCell& g) const {
  OneCell dom = f.dom() * g.dom(), cod = f.cod() * g.cod();
  SpanApex ad = apex(dom), ac = apex(cod);
  SpanApex a1 = apex(f.dom()), a1c = apex(f.cod()), a2 = apex(g.dom()), a2c = apex(g.cod());
  const std::size_t n1 = f.dom().size();
  std::vector<int> m(ad.size());
  for (int k = 0; k < ad.size(); ++k) {
    const auto& t = ad.tuples[k];
    std::vector<int> t1(t.begin(), t.begin() + n1), t2(t.begin() + n1, t.end());
    int i1 = a1.find(ad.left[k], t1);
    int mid = a1.right[i1];
    int i2 = a2.find(mid, t2);
    int j1 = f.map()[i1], j2 = g.map()[i2];
    std::vector<int> u = a1c.tuples[j1];
    u.insert(u.end(), a2c.tuples[j2].begin(), a2c.tuples[j2].end());
    m[k] = ac.find(ad.left[k], u);
  }
  return TwoCell(dom, cod, std::move(m));
}

bool Span::equal(const TwoCell& a, const TwoCell& b) const {
  return a.dom() == b.dom() && a.cod() == b.cod() && a.map() == b.map();
}

std::vector<int> Span::fixed_points(const OneCell& w) const {
  if (!w.is_endo()) throw TypeError("shadow of a non-endo 1-cell");
  SpanApex a = apex(w);
  std::vector<int> out;
  for (int k = 0; k < a.size(); ++k)
    if (a.left[k] == a.right[k]) out.push_back(k);
  return out;
}

ShadowPresentation Span::shadow(const OneCell& w) const {
  return ShadowPresentation::free(Ring::Z, static_cast<Index>(fixed_points(w).size()));
}

namespace {

std::vector<int> position_of(const std::vector<int>& fixed, int apex_size) {
  std::vector<int> pos(apex_size, -1);
  for (std::size_t i = 0; i < fixed.size(); ++i) pos[fixed[i]] = static_cast<int>(i);
  return pos;
}

}  // namespace

ShadowMorphism Span::shadow(const TwoCell& f) const {
  auto fd = fixed_points(f.dom()), fc = fixed_points(f.cod());
  auto pos = position_of(fc, apex(f.cod()).size());
  std::vector<Eigen::Triplet<Rational>> t;
  for (std::size_t i = 0; i < fd.size(); ++i) t.emplace_back(pos[f.map()[fd[i]]], i, Rational(1));
  SparseQ m(fc.size(), fd.size());
  m.setFromTriplets(t.begin(), t.end());
  return ShadowMorphism(shadow(f.dom()), shadow(f.cod()), std::move(m));
}

ShadowMorphism Span::theta(const OneCell& m, const OneCell& n) const {
  OneCell mn = m * n, nm = n * m;
  SpanApex a = apex(mn), b = apex(nm), am = apex(m);
  auto fa = fixed_points(mn), fb = fixed_points(nm);
  auto pos = position_of(fb, b.size());
  const std::size_t k1 = m.size();
  std::vector<Eigen::Triplet<Rational>> t;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    const auto& tup = a.tuples[fa[i]];
    std::vector<int> t1(tup.begin(), tup.begin() + k1), t2(tup.begin() + k1, tup.end());
    int mid = am.right[am.find(a.left[fa[i]], t1)];
    std::vector<int> u = t2;
    u.insert(u.end(), t1.begin(), t1.end());
    t.emplace_back(pos[b.find(mid, u)], i, Rational(1));
  }
  SparseQ map(fb.size(), fa.size());
  map.setFromTriplets(t.begin(), t.end());
  return ShadowMorphism(shadow(mn), shadow(nm), std::move(map));
}

DualPair<Span> Span::dual_letter(const SpanCell& m) const {
  const int n = m.apex();
  std::vector<int> inv(m.src().size, -1);
  if (n != m.src().size) throw NotDualizable("span " + m.label + ": left leg is not a bijection");
  for (int a = 0; a < n; ++a) {
    if (inv[m.left()[a]] != -1) throw NotDualizable("span " + m.label + ": left leg is not a bijection");
    inv[m.left()[a]] = a;
  }
  SpanCell md(m.tgt(), m.src(), m.right(), m.left());
  md.label = m.label + "*";
  OneCell M(m), Md(md), UR = unit(m.src()), US = unit(m.tgt());
  SpanApex a1 = apex(M * Md), a2 = apex(Md * M);
  std::vector<int> eta(m.src().size);
  for (int r = 0; r < m.src().size; ++r) eta[r] = a1.find(r, {inv[r], inv[r]});
  std::vector<int> ev(a2.size());
  for (int k = 0; k < a2.size(); ++k) ev[k] = a2.left[k];
  return {M, Md, make(UR, M * Md, std::move(eta)), make(Md * M, US, std::move(ev))};
}

}  // namespace shadowtrace
