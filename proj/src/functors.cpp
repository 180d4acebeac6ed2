#include "shadowtrace/functors.hpp"

#include <map>
#include <optional>

namespace shadowtrace {

namespace {

SparseQ identity_sparse(Index n) {
  SparseQ m(n, n);
  m.setIdentity();
  return m;
}

}  // namespace

RankCell Linearization::letter(const SpanCell& m) const {
  std::vector<int> ranks(m.src().size * m.tgt().size, 0);
  for (int a = 0; a < m.apex(); ++a) ++ranks[m.left()[a] * m.tgt().size + m.right()[a]];
  RankCell out(m.src(), m.tgt(), std::move(ranks));
  out.label = m.label;
  return out;
}

MatMod<Integer>::OneCell Linearization::one(const Span::OneCell& w) const {
  MatMod<Integer>::OneCell out(w.src());
  for (const auto& l : w.letters()) out = out * MatMod<Integer>::OneCell(letter(l));
  return out;
}

std::vector<Linearization::Coordinate> Linearization::coordinates(const Span::OneCell& w) const {
  SpanApex A = span_.apex(w);
  const auto& ls = w.letters();
  std::vector<Coordinate> out(A.size());
  if (ls.empty()) {
    for (int k = 0; k < A.size(); ++k) out[k] = {A.left[k], A.right[k], 0};
    return out;
  }
  MatLayout L = mat_.layout(one(w));
  // Position of each apex element inside its (left, right) fiber.
  std::vector<std::vector<int>> pos(ls.size());
  std::vector<RankCell> cells;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    std::map<std::pair<int, int>, int> seen;
    for (int a = 0; a < ls[i].apex(); ++a) pos[i].push_back(seen[{ls[i].left()[a], ls[i].right()[a]}]++);
    cells.push_back(letter(ls[i]));
  }
  for (int k = 0; k < A.size(); ++k) {
    const auto& tup = A.tuples[k];
    int node = A.left[k];
    std::vector<int> path;
    Index kron = 0;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      int next = ls[i].right()[tup[i]];
      kron = kron * cells[i].rank(node, next) + pos[i][tup[i]];
      node = next;
      if (i + 1 < ls.size()) path.push_back(node);
    }
    const auto* seg = L.find(A.left[k], A.right[k], path);
    out[k] = {A.left[k], A.right[k], seg->offset + kron};
  }
  return out;
}

MatMod<Integer>::TwoCell Linearization::two(const Span::TwoCell& f) const {
  auto dom = one(f.dom()), cod = one(f.cod());
  MatLayout ld = mat_.layout(dom), lc = mat_.layout(cod);
  std::vector<Matrix<Integer>> blocks;
  for (int r = 0; r < ld.rows; ++r)
    for (int t = 0; t < ld.cols; ++t) blocks.push_back(Matrix<Integer>::Zero(lc.dim(r, t), ld.dim(r, t)));
  auto cd = coordinates(f.dom()), cc = coordinates(f.cod());
  for (std::size_t k = 0; k < cd.size(); ++k) {
    const auto& x = cd[k];
    const auto& y = cc[f.map()[k]];
    blocks[x.r * ld.cols + x.t](y.index, x.index) = 1;
  }
  return mat_.make(dom, cod, std::move(blocks));
}

DualPair<MatMod<Integer>> Linearization::dual(const DualPair<Span>& d) const {
  return {one(d.M), one(d.Mdual), two(d.coev), two(d.ev)};
}

std::vector<Index> Linearization::shadow_basis(const Span::OneCell& w) const {
  if (!w.is_endo()) throw TypeError("shadow of a non-endo 1-cell");
  MatLayout L = mat_.layout(one(w));
  std::vector<Index> off(L.rows + 1, 0);
  for (int r = 0; r < L.rows; ++r) off[r + 1] = off[r] + L.dim(r, r);
  std::vector<Index> out;
  for (const auto& c : coordinates(w)) out.push_back(c.r == c.t ? off[c.r] + c.index : -1);
  return out;
}

ShadowMorphism Linearization::phi(const Span::OneCell& w) const {
  auto basis = shadow_basis(w);
  auto fixed = span_.fixed_points(w);
  auto src = mat_.shadow(one(w));
  SparseQ m(static_cast<Index>(fixed.size()), src.generators());
  for (std::size_t i = 0; i < fixed.size(); ++i) m.insert(static_cast<Index>(i), basis[fixed[i]]) = 1;
  return ShadowMorphism(src, span_.shadow(w), std::move(m));
}

bool Linearization::coherent(const Span::OneCell& m, const Span::OneCell& n) const {
  auto lhs = phi(n * m) * mat_.theta(one(m), one(n));
  auto rhs = span_.theta(m, n) * phi(m * n);
  return lhs.equals(rhs);
}

bool Linearization::preserves_trace(const Span::TwoCell& f, const DualPair<Span>& d) const {
  auto Q = detail::strip_suffix(f.dom(), d.M, "trace");
  auto P = detail::strip_prefix(f.cod(), d.M, "trace");
  auto rhs = trace(span_, f, d) * phi(Q);
  auto lf = two(f);
  bool image = (phi(P) * trace(mat_, lf, dual(d))).equals(rhs);
  bool standard = (phi(P) * trace(mat_, lf, make_dual(mat_, one(d.M)))).equals(rhs);
  return image && standard;
}

Bimodule Rationalization::letter(const Bimodule& m) const {
  Bimodule out(zero(m.src()), zero(m.tgt()), m.rank(), m.action());
  out.label = m.label;
  return out;
}

GRBimod::OneCell Rationalization::one(const GRBimod::OneCell& w) const {
  GRBimod::OneCell out(zero(w.src()));
  for (const auto& l : w.letters()) out = out * GRBimod::OneCell(letter(l));
  return out;
}

GRBimod::TwoCell Rationalization::two(const GRBimod::TwoCell& f) const {
  return b_.make(one(f.dom()), one(f.cod()), f.matrix());
}

DualPair<GRBimod> Rationalization::dual(const DualPair<GRBimod>& d) const {
  return {one(d.M), one(d.Mdual), two(d.coev), two(d.ev)};
}

ShadowMorphism Rationalization::phi(const GRBimod::OneCell& w) const {
  auto src = b_.shadow(one(w));
  auto tgt = on_shadow(b_.shadow(w));
  return ShadowMorphism(src, tgt, identity_sparse(src.generators()));
}

bool Rationalization::coherent(const GRBimod::OneCell& m, const GRBimod::OneCell& n) const {
  auto lhs = phi(n * m) * b_.theta(one(m), one(n));
  auto rhs = on_shadow(b_.theta(m, n)) * phi(m * n);
  return lhs.equals(rhs);
}

bool Rationalization::preserves_trace(const GRBimod::TwoCell& f, const DualPair<GRBimod>& d) const {
  auto Q = detail::strip_suffix(f.dom(), d.M, "trace");
  auto P = detail::strip_prefix(f.cod(), d.M, "trace");
  auto rhs = on_shadow(trace(b_, f, d)) * phi(Q);
  auto gf = two(f);
  bool image = (phi(P) * trace(b_, gf, dual(d))).equals(rhs);
  bool standard = (phi(P) * trace(b_, gf, make_dual(b_, one(d.M)))).equals(rhs);
  return image && standard;
}

Bimodule ScalarExtension::component(const GroupCell& g) const {
  if (g.ring != Ring::Z) throw TypeError("scalar extension starts from an integral group ring");
  std::vector<GRMatrix> action;
  for (int x = 0; x < g.group->order(); ++x) {
    GRMatrix m(g.group, 1, 1);
    m.add(x, 0, 0, 1);
    action.push_back(std::move(m));
  }
  Bimodule out(g, rat_.zero(g), 1, std::move(action));
  out.label = "alpha_" + g.group->name();
  return out;
}

GRBimod::TwoCell ScalarExtension::component(const GRBimod::OneCell& w) const {
  auto dom = w * GRBimod::OneCell(component(w.tgt()));
  auto cod = GRBimod::OneCell(component(w.src())) * rat_.one(w);
  return b_.make(dom, cod, GRMatrix::identity(w.tgt().group, b_.realize(w).rank));
}

GRBimod::TwoCell ScalarExtension::inverse_by_mate(const DualPair<GRBimod>& d) const {
  return unmate(b_, component(d.Mdual), rat_.dual(d), d);
}

bool ScalarExtension::duals_invert(const DualPair<GRBimod>& d) const {
  auto a = component(d.M);
  auto inv = inverse_by_mate(d);
  return b_.equal(b_.vcompose(inv, a), b_.identity(a.dom())) && b_.equal(b_.vcompose(a, inv), b_.identity(a.cod()));
}

ShadowMorphism ScalarExtension::on_shadow(const GRBimod::OneCell& w) const {
  auto src = b_.shadow(w);
  return ShadowMorphism(src, b_.shadow(rat_.one(w)), identity_sparse(src.generators()));
}

namespace {

// The three traces in the cube for one 2-cell.
struct CubeRoutes {
  ShadowMorphism tr_f;   // in the source bicategory
  ShadowMorphism tr_Ff;  // image under the inclusion, with the image dual
  ShadowMorphism tr_Gf;  // rationalized, with the rationalized dual
};

CubeRoutes routes(const ScalarExtension& a, const GRBimod::TwoCell& f, const DualPair<GRBimod>& d) {
  const auto& b = a.instance();
  const auto& rat = a.rationalization();
  return {trace(b, f, make_dual(b, d.M)), trace(b, f, d), trace(b, rat.two(f), rat.dual(d))};
}

CubeFaces faces(const ScalarExtension& a, const GRBimod::OneCell& Q, const GRBimod::OneCell& P, const CubeRoutes& r) {
  const auto& b = a.instance();
  const auto& rat = a.rationalization();
  auto phiF = [&](const GRBimod::OneCell& w) { return ShadowMorphism::identity(b.shadow(w)); };
  auto alpha_tr = [&](const GRBimod::OneCell& w) {
    auto p = b.shadow(w);
    return ShadowMorphism(p, Rationalization::on_shadow(p), identity_sparse(p.generators()));
  };
  auto Gtr = Rationalization::on_shadow(r.tr_f);
  CubeFaces out;
  out.holds[0] = (phiF(P) * r.tr_Ff).equals(r.tr_f * phiF(Q));
  out.holds[1] = (rat.phi(P) * r.tr_Gf).equals(Gtr * rat.phi(Q));
  out.holds[2] = (a.on_shadow(P) * r.tr_Ff).equals(r.tr_Gf * a.on_shadow(Q));
  out.holds[3] = (alpha_tr(P) * r.tr_f).equals(Gtr * alpha_tr(Q));
  out.holds[4] = (rat.phi(Q) * a.on_shadow(Q)).equals(alpha_tr(Q) * phiF(Q));
  out.holds[5] = (rat.phi(P) * a.on_shadow(P)).equals(alpha_tr(P) * phiF(P));
  return out;
}

}  // namespace

CubeFaces cube_faces(const ScalarExtension& a, const GRBimod::TwoCell& f, const DualPair<GRBimod>& d) {
  auto Q = detail::strip_suffix(f.dom(), d.M, "cube");
  auto P = detail::strip_prefix(f.cod(), d.M, "cube");
  return faces(a, Q, P, routes(a, f, d));
}

CubeFaces reidemeister_cube(const ScalarExtension& a, const EquivariantChainComplex& c) {
  if (c.ring != Ring::Z) throw TypeError("the cube starts from an integral complex");
  c.validate();
  const auto& b = a.instance();
  GRBimod::OneCell Q(GroupCell{}), P(GroupCell{});
  std::optional<CubeRoutes> sum;
  for (int i = 0; i <= c.top(); ++i) {
    auto [f, d] = twisted_two_cell(b, c.chain_map[i], c.psi, Ring::Z);
    auto r = routes(a, f, d);
    Rational sign = i % 2 ? -1 : 1;
    if (!sum) {
      Q = detail::strip_suffix(f.dom(), d.M, "cube");
      P = detail::strip_prefix(f.cod(), d.M, "cube");
      sum = CubeRoutes{sign * r.tr_f, sign * r.tr_Ff, sign * r.tr_Gf};
    } else {
      sum->tr_f = sum->tr_f + sign * r.tr_f;
      sum->tr_Ff = sum->tr_Ff + sign * r.tr_Ff;
      sum->tr_Gf = sum->tr_Gf + sign * r.tr_Gf;
    }
  }
  CubeFaces out = faces(a, Q, P, *sum);
  // The rational Reidemeister trace of the rationalized complex is the image
  // of the integral one.
  EquivariantChainComplex q = c;
  q.ring = Ring::Q;
  ClassVector zx = reidemeister(c), qx = reidemeister(q);
  out.holds[1] = out.holds[1] && zx == qx && reidemeister_bicategorical(q) == zx;
  return out;
}

}  // namespace shadowtrace
