#include "shadowtrace/grbimod.hpp"

namespace shadowtrace {

namespace {

bool integral(const GRMatrix& m) {
  for (int h = 0; h < m.group()->order(); ++h)
    if (!is_integral(m.coeff(h))) return false;
  return true;
}

}  // namespace

Bimodule::Bimodule(GroupCell src, GroupCell tgt, int rank, std::vector<GRMatrix> action)
    : src_(std::move(src)), tgt_(std::move(tgt)), rank_(rank), action_(std::move(action)) {
  if (src_.ring == Ring::Q && tgt_.ring == Ring::Z) throw TypeError("bimodule: target ring must contain source ring");
  const FiniteGroup& G = *src_.group;
  if (static_cast<int>(action_.size()) != G.order()) throw TypeError("bimodule: one action matrix per element required");
  for (const auto& a : action_) {
    if (!same_group(a.group(), tgt_.group) || a.rows() != rank_ || a.cols() != rank_)
      throw TypeError("bimodule: action matrix has the wrong shape or group");
    if (tgt_.ring == Ring::Z && !integral(a)) throw TypeError("bimodule: non-integral action over Z");
  }
  if (action_[G.identity()] != GRMatrix::identity(tgt_.group, rank_))
    throw TypeError("bimodule: identity does not act trivially");
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h)
      if (action_[G.mul(g, h)] != action_[g] * action_[h])
        throw TypeError("bimodule: action is not multiplicative at (" + std::to_string(g) + "," + std::to_string(h) + ")");
}

GRBimod::Module GRBimod::realize(const OneCell& w) const {
  Module m;
  const auto& G = w.src().group;
  m.rank = 1;
  for (int g = 0; g < G->order(); ++g) m.action.push_back(GRMatrix::embed(G, Matrix<Rational>::Identity(1, 1), g));
  for (const auto& p : w.letters()) {
    for (auto& a : m.action) a = push_through(a, p.action());
    m.rank *= p.rank();
  }
  return m;
}

GRBimod::TwoCell GRBimod::make(const OneCell& dom, const OneCell& cod, GRMatrix matrix) const {
  if (dom.src() != cod.src() || dom.tgt() != cod.tgt())
    throw TypeError("2-cell source and target have different endpoints");
  Module a = realize(dom), b = realize(cod);
  if (!same_group(matrix.group(), dom.tgt().group) || matrix.rows() != b.rank || matrix.cols() != a.rank)
    throw TypeError("2-cell matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                    ", expected " + std::to_string(b.rank) + "x" + std::to_string(a.rank));
  if (dom.tgt().ring == Ring::Z && !integral(matrix)) throw TypeError("2-cell has non-integral entries over Z");
  for (int g : dom.src().group->generators())
    if (matrix * a.action[g] != b.action[g] * matrix)
      throw TypeError("2-cell is not equivariant for generator " + std::to_string(g));
  return TwoCell(dom, cod, std::move(matrix));
}

GRBimod::TwoCell GRBimod::identity(const OneCell& w) const {
  return TwoCell(w, w, GRMatrix::identity(w.tgt().group, realize(w).rank));
}

GRBimod::TwoCell GRBimod::vcompose(const TwoCell& g, const TwoCell& f) const {
  if (f.cod() != g.dom()) throw TypeError("vertical composition: target of first 2-cell differs from source of second");
  return TwoCell(f.dom(), g.cod(), g.matrix() * f.matrix());
}

GRBimod::TwoCell GRBimod::hcompose(const TwoCell& f, const TwoCell& g) const {
  OneCell dom = f.dom() * g.dom(), cod = f.cod() * g.cod();
  Module w2c = realize(g.cod());
  const Index a = f.matrix().cols();
  Sparse<Rational> id(a, a);
  id.setIdentity();
  GRMatrix right = kron(id, g.matrix());
  GRMatrix left = push_through(f.matrix(), w2c.action);
  return TwoCell(dom, cod, left * right);
}

bool GRBimod::equal(const TwoCell& a, const TwoCell& b) const {
  return a.dom() == b.dom() && a.cod() == b.cod() && a.matrix() == b.matrix();
}

ShadowPresentation GRBimod::shadow(const OneCell& w) const {
  if (!w.is_endo()) throw TypeError("shadow of a non-endo 1-cell");
  Module m = realize(w);
  GroupPtr G = w.src().group;
  const int n = m.rank, order = G->order();
  auto action = std::make_shared<std::vector<GRMatrix>>(std::move(m.action));
  // Relations g·x - x·g for x = e_i h and g in a generating set.
  return ShadowPresentation::lazy(w.src().ring, static_cast<Index>(n) * order, [=] {
    std::vector<Eigen::Triplet<Rational>> t;
    Index col = 0;
    for (int g : G->generators()) {
      const GRMatrix& lam = (*action)[g];
      for (int i = 0; i < n; ++i)
        for (int h = 0; h < order; ++h, ++col) {
          for (int k = 0; k < order; ++k)
            for (SparseQ::InnerIterator it(lam.coeff(k), i); it; ++it)
              t.emplace_back(it.row() * order + G->mul(k, h), col, it.value());
          t.emplace_back(static_cast<Index>(i) * order + G->mul(h, g), col, Rational(-1));
        }
    }
    SparseQ rel(static_cast<Index>(n) * order, col);
    rel.setFromTriplets(t.begin(), t.end());
    return rel;
  });
}

ShadowMorphism GRBimod::shadow(const TwoCell& f) const {
  if (!f.dom().is_endo()) throw TypeError("shadow of a 2-cell between non-endo 1-cells");
  const GRMatrix& F = f.matrix();
  const FiniteGroup& G = *F.group();
  const int order = G.order();
  std::vector<Eigen::Triplet<Rational>> t;
  for (int k = 0; k < order; ++k)
    for (Index i = 0; i < F.cols(); ++i)
      for (SparseQ::InnerIterator it(F.coeff(k), i); it; ++it)
        for (int h = 0; h < order; ++h) t.emplace_back(it.row() * order + G.mul(k, h), i * order + h, it.value());
  ShadowPresentation src = shadow(f.dom()), tgt = shadow(f.cod());
  SparseQ m(tgt.generators(), src.generators());
  m.setFromTriplets(t.begin(), t.end());
  return ShadowMorphism(src, tgt, std::move(m));
}

ShadowMorphism GRBimod::theta(const OneCell& m, const OneCell& n) const {
  OneCell mn = m * n, nm = n * m;
  Module a = realize(m), b = realize(n);
  const FiniteGroup& G = *m.src().group;
  const FiniteGroup& H = *m.tgt().group;
  std::vector<Eigen::Triplet<Rational>> t;
  // e_i ⊗ f_j g ↦ f_j ⊗ λ_m(g) e_i
  for (int i = 0; i < a.rank; ++i)
    for (int j = 0; j < b.rank; ++j)
      for (int g = 0; g < G.order(); ++g) {
        Index col = (static_cast<Index>(i) * b.rank + j) * G.order() + g;
        const GRMatrix& lam = a.action[g];
        for (int h = 0; h < H.order(); ++h)
          for (SparseQ::InnerIterator it(lam.coeff(h), i); it; ++it)
            t.emplace_back((static_cast<Index>(j) * a.rank + it.row()) * H.order() + h, col, it.value());
      }
  ShadowPresentation src = shadow(mn), tgt = shadow(nm);
  SparseQ map(tgt.generators(), src.generators());
  map.setFromTriplets(t.begin(), t.end());
  return ShadowMorphism(src, tgt, std::move(map));
}

Bimodule GRBimod::twisted_unit(const GroupCell& g, const std::vector<int>& phi) {
  if (!g.group->is_homomorphism_to(*g.group, phi)) throw TypeError("twist is not an endomorphism");
  std::vector<GRMatrix> act;
  for (int x = 0; x < g.group->order(); ++x)
    act.push_back(GRMatrix::embed(g.group, Matrix<Rational>::Identity(1, 1), phi[x]));
  Bimodule b(g, g, 1, std::move(act));
  b.label = "R_phi";
  return b;
}

Bimodule GRBimod::free_module(const GroupCell& trivial, const GroupCell& h, int n) {
  Bimodule b(trivial, h, n, {GRMatrix::identity(h.group, n)});
  b.label = "free" + std::to_string(n);
  return b;
}

Bimodule GRBimod::regular_representation(const GroupCell& g, const GroupCell& trivial, int m) {
  const FiniteGroup& G = *g.group;
  const int order = G.order();
  std::vector<GRMatrix> act;
  for (int x = 0; x < order; ++x) {
    Matrix<Rational> p = Matrix<Rational>::Zero(m * order, m * order);
    for (int i = 0; i < m; ++i)
      for (int h = 0; h < order; ++h) p(i * order + G.mul(x, h), i * order + h) = 1;
    act.push_back(GRMatrix::embed(trivial.group, p));
  }
  Bimodule b(g, trivial, m * order, std::move(act));
  b.label = "reg";
  return b;
}

DualPair<GRBimod> GRBimod::dual_letter(const Bimodule& m) const {
  if (m.src().ring != m.tgt().ring) throw NotDualizable("bimodule " + m.label + ": source and target rings differ");
  const GroupCell& R = m.src();
  const GroupCell& S = m.tgt();
  if (R.group->order() == 1) {
    // (KH)^n with dual (KH)^n viewed as a K-module of rank n|H|.
    GroupPtr H = S.group;
    const int n = m.rank(), order = H->order(), nd = n * order;
    std::vector<GRMatrix> act;
    for (int h = 0; h < order; ++h) {
      Matrix<Rational> p = Matrix<Rational>::Zero(nd, nd);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < order; ++k) p(i * order + H->mul(h, k), i * order + k) = 1;
      act.push_back(GRMatrix::embed(R.group, p));
    }
    Bimodule md(S, R, nd, std::move(act));
    md.label = m.label + "*";
    OneCell M(m), Md(md);
    GRMatrix eta(R.group, static_cast<Index>(n) * nd, 1);
    for (int j = 0; j < n; ++j) eta.add(0, static_cast<Index>(j) * nd + j * order + H->identity(), 0, 1);
    GRMatrix ev(H, 1, static_cast<Index>(nd) * n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < order; ++k) ev.add(k, 0, (static_cast<Index>(i) * order + k) * n + i, 1);
    return {M, Md, make(unit(R), M * Md, std::move(eta)), make(Md * M, unit(S), std::move(ev))};
  }
  if (S.group->order() == 1) {
    GroupPtr G = R.group;
    const int order = G->order();
    if (m.rank() % order != 0) throw NotDualizable("bimodule " + m.label + ": not a multiple of the regular representation");
    const int mm = m.rank() / order;
    if (!(m == regular_representation(R, S, mm))) throw NotDualizable("bimodule " + m.label + ": not a regular representation");
    Bimodule md(S, R, mm, {GRMatrix::identity(G, mm)});
    md.label = m.label + "*";
    OneCell M(m), Md(md);
    const Index nr = m.rank();
    GRMatrix eta(G, nr * mm, 1);
    for (int i = 0; i < mm; ++i)
      for (int h = 0; h < order; ++h) eta.add(G->inv(h), (static_cast<Index>(i) * order + h) * mm + i, 0, 1);
    GRMatrix ev(S.group, 1, static_cast<Index>(mm) * nr);
    for (int j = 0; j < mm; ++j) ev.add(0, 0, static_cast<Index>(j) * nr + j * order + G->identity(), 1);
    return {M, Md, make(unit(R), M * Md, std::move(eta)), make(Md * M, unit(S), std::move(ev))};
  }
  throw NotDualizable("bimodule " + m.label + ": duals are provided only for modules out of, or regular representations into, the trivial group");
}

}  // namespace shadowtrace
