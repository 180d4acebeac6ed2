#include "shadowtrace/matmod.hpp"

#include <functional>

namespace shadowtrace {

RankCell::RankCell(FinSet src, FinSet tgt, std::vector<int> ranks)
    : src_(std::move(src)), tgt_(std::move(tgt)), ranks_(std::move(ranks)) {
  if (static_cast<int>(ranks_.size()) != src_.size * tgt_.size)
    throw TypeError("rank matrix has " + std::to_string(ranks_.size()) + " entries, expected " +
                    std::to_string(src_.size * tgt_.size));
  for (int n : ranks_)
    if (n < 0) throw TypeError("negative rank");
}

const MatLayout::Segment* MatLayout::find(int r, int t, const std::vector<int>& path) const {
  const auto& m = lookup[r * cols + t];
  auto it = m.find(path);
  return it == m.end() ? nullptr : &blocks[r * cols + t][it->second];
}

namespace {

std::vector<int> join(const std::vector<int>& a, int s, const std::vector<int>& b, bool inner) {
  std::vector<int> p = a;
  if (inner) p.push_back(s);
  p.insert(p.end(), b.begin(), b.end());
  return p;
}

}  // namespace

template <class S>
MatLayout MatMod<S>::layout(const OneCell& w) const {
  MatLayout L;
  L.rows = w.src().size;
  L.cols = w.tgt().size;
  L.blocks.assign(L.rows * L.cols, {});
  const auto& ls = w.letters();
  if (ls.empty()) {
    for (int r = 0; r < L.rows; ++r) L.blocks[r * L.cols + r].push_back({{}, {}, 1, 0});
  } else {
    std::vector<int> path, dims;
    std::function<void(int, int, std::size_t)> dfs = [&](int r0, int node, std::size_t i) {
      if (i == ls.size()) {
        Index d = 1;
        for (int n : dims) d *= n;
        L.blocks[r0 * L.cols + node].push_back({path, dims, d, 0});
        return;
      }
      const RankCell& p = ls[i];
      for (int s = 0; s < p.tgt().size; ++s) {
        int n = p.rank(node, s);
        if (n == 0) continue;
        bool inner = i + 1 < ls.size();
        dims.push_back(n);
        if (inner) path.push_back(s);
        dfs(r0, s, i + 1);
        if (inner) path.pop_back();
        dims.pop_back();
      }
    };
    for (int r = 0; r < L.rows; ++r) dfs(r, r, 0);
  }
  L.dims.assign(L.rows * L.cols, 0);
  L.lookup.assign(L.rows * L.cols, {});
  for (int k = 0; k < L.rows * L.cols; ++k) {
    Index off = 0;
    for (std::size_t j = 0; j < L.blocks[k].size(); ++j) {
      L.blocks[k][j].offset = off;
      off += L.blocks[k][j].dim;
      L.lookup[k][L.blocks[k][j].path] = static_cast<int>(j);
    }
    L.dims[k] = off;
  }
  return L;
}

template <class S>
std::vector<int> MatMod<S>::ranks(const OneCell& w) const {
  MatLayout L = layout(w);
  return std::vector<int>(L.dims.begin(), L.dims.end());
}

template <class S>
typename MatMod<S>::TwoCell MatMod<S>::make(const OneCell& dom, const OneCell& cod,
                                            std::vector<Matrix<S>> blocks) const {
  if (dom.src() != cod.src() || dom.tgt() != cod.tgt())
    throw TypeError("2-cell source and target have different endpoints");
  MatLayout ld = layout(dom), lc = layout(cod);
  if (static_cast<int>(blocks.size()) != ld.rows * ld.cols)
    throw TypeError("2-cell has " + std::to_string(blocks.size()) + " blocks, expected " +
                    std::to_string(ld.rows * ld.cols));
  for (int k = 0; k < ld.rows * ld.cols; ++k)
    if (blocks[k].rows() != lc.dims[k] || blocks[k].cols() != ld.dims[k])
      throw TypeError("2-cell block " + std::to_string(k) + " is " + std::to_string(blocks[k].rows()) + "x" +
                      std::to_string(blocks[k].cols()) + ", expected " + std::to_string(lc.dims[k]) + "x" +
                      std::to_string(ld.dims[k]));
  return TwoCell(dom, cod, std::move(blocks));
}

template <class S>
typename MatMod<S>::TwoCell MatMod<S>::identity(const OneCell& w) const {
  MatLayout L = layout(w);
  std::vector<Matrix<S>> b;
  for (Index d : L.dims) b.push_back(Matrix<S>::Identity(d, d));
  return TwoCell(w, w, std::move(b));
}

template <class S>
typename MatMod<S>::TwoCell MatMod<S>::zero(const OneCell& dom, const OneCell& cod) const {
  MatLayout ld = layout(dom), lc = layout(cod);
  std::vector<Matrix<S>> b;
  for (std::size_t k = 0; k < ld.dims.size(); ++k) b.push_back(Matrix<S>::Zero(lc.dims[k], ld.dims[k]));
  return make(dom, cod, std::move(b));
}

template <class S>
typename MatMod<S>::TwoCell MatMod<S>::vcompose(const TwoCell& g, const TwoCell& f) const {
  if (f.cod() != g.dom()) throw TypeError("vertical composition: target of first 2-cell differs from source of second");
  std::vector<Matrix<S>> b;
  for (std::size_t k = 0; k < f.blocks().size(); ++k) b.push_back(g.blocks()[k] * f.blocks()[k]);
  return TwoCell(f.dom(), g.cod(), std::move(b));
}

template <class S>
typename MatMod<S>::TwoCell MatMod<S>::add(const TwoCell& a, const TwoCell& b) const {
  if (a.dom() != b.dom() || a.cod() != b.cod()) throw TypeError("sum of 2-cells with different boundaries");
  std::vector<Matrix<S>> out;
  for (std::size_t k = 0; k < a.blocks().size(); ++k) out.push_back(a.blocks()[k] + b.blocks()[k]);
  return TwoCell(a.dom(), a.cod(), std::move(out));
}

template <class S>
typename MatMod<S>::TwoCell MatMod<S>::hcompose(const TwoCell& f, const TwoCell& g) const {
  OneCell dom = f.dom() * g.dom();
  OneCell cod = f.cod() * g.cod();
  MatLayout l1 = layout(f.dom()), l1c = layout(f.cod()), l2 = layout(g.dom()), l2c = layout(g.cod());
  MatLayout ld = layout(dom), lc = layout(cod);
  const bool inner_d = !f.dom().empty() && !g.dom().empty();
  const bool inner_c = !f.cod().empty() && !g.cod().empty();
  const int R = dom.src().size, Sn = f.dom().tgt().size, T = dom.tgt().size;
  std::vector<Matrix<S>> out;
  for (int r = 0; r < R; ++r)
    for (int t = 0; t < T; ++t) {
      Matrix<S> blk = Matrix<S>::Zero(lc.dim(r, t), ld.dim(r, t));
      for (int s = 0; s < Sn; ++s) {
        const Matrix<S>& F = f.block(r, s);
        const Matrix<S>& G = g.block(s, t);
        if (F.size() == 0 || G.size() == 0) continue;
        for (const auto& a : l1.block(r, s))
          for (const auto& ac : l1c.block(r, s)) {
            Matrix<S> fs = F.block(ac.offset, a.offset, ac.dim, a.dim);
            if (all_zero(fs)) continue;
            for (const auto& b : l2.block(s, t))
              for (const auto& bc : l2c.block(s, t)) {
                Matrix<S> gs = G.block(bc.offset, b.offset, bc.dim, b.dim);
                if (all_zero(gs)) continue;
                const auto* sd = ld.find(r, t, join(a.path, s, b.path, inner_d));
                const auto* sc = lc.find(r, t, join(ac.path, s, bc.path, inner_c));
                blk.block(sc->offset, sd->offset, sc->dim, sd->dim) = kron(fs, gs);
              }
          }
      }
      out.push_back(std::move(blk));
    }
  return TwoCell(dom, cod, std::move(out));
}

template <class S>
bool MatMod<S>::equal(const TwoCell& a, const TwoCell& b) const {
  return a.dom() == b.dom() && a.cod() == b.cod() && a.blocks() == b.blocks();
}

template <class S>
ShadowPresentation MatMod<S>::shadow(const OneCell& w) const {
  if (!w.is_endo()) throw TypeError("shadow of a non-endo 1-cell");
  MatLayout L = layout(w);
  Index n = 0;
  for (int r = 0; r < L.rows; ++r) n += L.dim(r, r);
  return ShadowPresentation::free(ring, n);
}

template <class S>
ShadowMorphism MatMod<S>::shadow(const TwoCell& f) const {
  if (!f.dom().is_endo()) throw TypeError("shadow of a 2-cell between non-endo 1-cells");
  std::vector<Eigen::Triplet<Rational>> t;
  Index ro = 0, co = 0;
  for (int r = 0; r < f.dom().src().size; ++r) {
    const Matrix<S>& b = f.block(r, r);
    for (Index j = 0; j < b.cols(); ++j)
      for (Index i = 0; i < b.rows(); ++i)
        if (b(i, j) != 0) t.emplace_back(ro + i, co + j, to_q(b(i, j)));
    ro += b.rows();
    co += b.cols();
  }
  ShadowPresentation src = shadow(f.dom()), tgt = shadow(f.cod());
  SparseQ m(tgt.generators(), src.generators());
  m.setFromTriplets(t.begin(), t.end());
  return ShadowMorphism(src, tgt, std::move(m));
}

template <class S>
ShadowMorphism MatMod<S>::theta(const OneCell& m, const OneCell& n) const {
  OneCell mn = m * n, nm = n * m;
  MatLayout lm = layout(m), ln = layout(n), lmn = layout(mn), lnm = layout(nm);
  const bool inner = !m.empty() && !n.empty();
  const int R = m.src().size, Sn = m.tgt().size;
  std::vector<Index> off_mn(R + 1, 0), off_nm(Sn + 1, 0);
  for (int r = 0; r < R; ++r) off_mn[r + 1] = off_mn[r] + lmn.dim(r, r);
  for (int s = 0; s < Sn; ++s) off_nm[s + 1] = off_nm[s] + lnm.dim(s, s);
  std::vector<Eigen::Triplet<Rational>> t;
  for (int r = 0; r < R; ++r)
    for (int s = 0; s < Sn; ++s)
      for (const auto& a : lm.block(r, s))
        for (const auto& b : ln.block(s, r)) {
          const auto* x = lmn.find(r, r, join(a.path, s, b.path, inner));
          const auto* y = lnm.find(s, s, join(b.path, r, a.path, inner));
          for (Index i1 = 0; i1 < a.dim; ++i1)
            for (Index i2 = 0; i2 < b.dim; ++i2)
              t.emplace_back(off_nm[s] + y->offset + i2 * a.dim + i1, off_mn[r] + x->offset + i1 * b.dim + i2,
                             Rational(1));
        }
  ShadowPresentation src = shadow(mn), tgt = shadow(nm);
  SparseQ map(tgt.generators(), src.generators());
  map.setFromTriplets(t.begin(), t.end());
  return ShadowMorphism(src, tgt, std::move(map));
}

template <class S>
DualPair<MatMod<S>> MatMod<S>::dual_letter(const RankCell& m) const {
  const int R = m.src().size, Sn = m.tgt().size;
  std::vector<int> tr(Sn * R);
  for (int r = 0; r < R; ++r)
    for (int s = 0; s < Sn; ++s) tr[s * R + r] = m.rank(r, s);
  RankCell md(m.tgt(), m.src(), tr);
  md.label = m.label + "*";
  OneCell M(m), Md(md);
  OneCell mmd = M * Md, mdm = Md * M;
  MatLayout l1 = layout(mmd), l2 = layout(mdm);

  std::vector<Matrix<S>> eta;
  for (int r = 0; r < R; ++r)
    for (int r2 = 0; r2 < R; ++r2) {
      Matrix<S> b = Matrix<S>::Zero(l1.dim(r, r2), r == r2 ? 1 : 0);
      if (r == r2)
        for (const auto& seg : l1.block(r, r))
          for (int i = 0; i < seg.dims[0]; ++i) b(seg.offset + i * seg.dims[0] + i, 0) = 1;
      eta.push_back(std::move(b));
    }
  std::vector<Matrix<S>> ev;
  for (int s = 0; s < Sn; ++s)
    for (int s2 = 0; s2 < Sn; ++s2) {
      Matrix<S> b = Matrix<S>::Zero(s == s2 ? 1 : 0, l2.dim(s, s2));
      if (s == s2)
        for (const auto& seg : l2.block(s, s))
          for (int i = 0; i < seg.dims[0]; ++i) b(0, seg.offset + i * seg.dims[0] + i) = 1;
      ev.push_back(std::move(b));
    }
  return {M, Md, TwoCell(unit(m.src()), mmd, std::move(eta)), TwoCell(mdm, unit(m.tgt()), std::move(ev))};
}

template <class S>
Matrix<S> MatMod<S>::dense(const TwoCell& f) const {
  Index rows = 0, cols = 0;
  for (const auto& b : f.blocks()) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix<S> out = Matrix<S>::Zero(rows, cols);
  Index ro = 0, co = 0;
  for (const auto& b : f.blocks()) {
    out.block(ro, co, b.rows(), b.cols()) = b;
    ro += b.rows();
    co += b.cols();
  }
  return out;
}

template class MatMod<Integer>;
template class MatMod<Rational>;

}  // namespace shadowtrace
