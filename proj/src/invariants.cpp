#include "shadowtrace/invariants.hpp"

#include "shadowtrace/trace.hpp"

namespace shadowtrace {

ClassVector ClassVector::zero(TwistedConjClasses classes, Ring ring) {
  ClassVector x;
  x.coeff.assign(classes.count(), Rational(0));
  x.classes = std::move(classes);
  x.ring = ring;
  return x;
}

Rational ClassVector::augmentation() const {
  Rational s = 0;
  for (const auto& c : coeff) s += c;
  return s;
}

std::string element_name(const FiniteGroup& g, int h) { return h == g.identity() ? "e" : "g" + std::to_string(h); }

std::string ClassVector::describe() const {
  std::string s;
  for (int c = 0; c < classes.count(); ++c) {
    if (coeff[c] == 0) continue;
    std::string term = coeff[c].str() + "[" + element_name(*classes.group, classes.representatives[c]) + "]";
    if (s.empty()) {
      s = term;
    } else if (coeff[c] < 0) {
      s += " - " + Rational(-coeff[c]).str() + "[" + element_name(*classes.group, classes.representatives[c]) + "]";
    } else {
      s += " + " + term;
    }
  }
  return s.empty() ? "0" : s;
}

ClassVector operator+(ClassVector a, const ClassVector& b) {
  if (a.classes.class_of != b.classes.class_of) throw TypeError("class vectors over different class sets");
  for (std::size_t c = 0; c < a.coeff.size(); ++c) a.coeff[c] += b.coeff[c];
  return a;
}

ClassVector operator*(const Rational& c, ClassVector a) {
  for (auto& x : a.coeff) x *= c;
  return a;
}

IdempotentModule::IdempotentModule(GRMatrix e, Ring ring) : e_(std::move(e)), ring_(ring) {
  if (e_.rows() != e_.cols()) throw TypeError("idempotent must be square");
  if (e_ * e_ != e_) throw TypeError("matrix is not idempotent");
  if (ring_ == Ring::Z)
    for (int h = 0; h < e_.group()->order(); ++h)
      if (!is_integral(e_.coeff(h))) throw TypeError("idempotent has non-integral entries over Z");
}

namespace {

ClassVector diagonal_sum(const GRMatrix& f, TwistedConjClasses classes, Ring ring) {
  if (f.rows() != f.cols()) throw TypeError("trace of a non-square matrix");
  ClassVector x = ClassVector::zero(std::move(classes), ring);
  for (int h = 0; h < f.group()->order(); ++h)
    for (Index i = 0; i < f.rows(); ++i) {
      Rational v = f.at(h, i, i);
      if (v != 0) x.add(h, v);
    }
  return x;
}

GroupPtr trivial_group() {
  static const GroupPtr g = make_group(FiniteGroup::trivial());
  return g;
}

}  // namespace

ClassVector hattori_stallings(const GRMatrix& f, Ring ring) {
  return diagonal_sum(f, conjugacy_classes(f.group()), ring);
}

ClassVector hattori_stallings(const GRMatrix& f, const IdempotentModule& p) {
  const GRMatrix& e = p.idempotent();
  if (e * f * e != f) throw TypeError("endomorphism does not preserve the idempotent summand (f != efe)");
  return diagonal_sum(f, conjugacy_classes(f.group()), p.ring());
}

ClassVector twisted_trace(const GRMatrix& f, const std::vector<int>& psi, Ring ring) {
  return diagonal_sum(f, twisted_conjugacy_classes(f.group(), psi), ring);
}

std::pair<GRBimod::TwoCell, DualPair<GRBimod>> twisted_two_cell(const GRBimod& b, const GRMatrix& f,
                                                                 const std::vector<int>& psi, Ring ring) {
  const GroupPtr& h = f.group();
  if (!is_automorphism(*h, psi)) throw TypeError("bicategorical twisted trace needs an automorphism");
  GroupCell one{trivial_group(), ring}, hc{h, ring};
  // f(m r) = f(m) ψ(r) becomes a linear map M → M ⊙ R_ψ, and R_ψ is
  // realized as the left twist by ψ^-1 through x ↦ ψ^-1(x).
  auto inv = inverse_map(psi);
  auto M = b.letter(GRBimod::free_module(one, hc, static_cast<int>(f.rows())));
  auto P = b.letter(GRBimod::twisted_unit(hc, inv));
  return {b.make(M, M * P, f.map_group(h, inv)), make_dual(b, M)};
}

ClassVector twisted_trace_bicategorical(const GRMatrix& f, const std::vector<int>& psi, Ring ring) {
  GRBimod b;
  auto [cell, d] = twisted_two_cell(b, f, psi, ring);
  auto t = trace(b, cell, d);
  ClassVector x = ClassVector::zero(twisted_conjugacy_classes(f.group(), psi), ring);
  // Generator y of ⟨R'⟩ is the class of ψ(y) under the original twist.
  for (SparseQ::InnerIterator it(t.matrix(), 0); it; ++it) x.add(psi[it.row()], it.value());
  return x;
}

ShadowMorphism class_morphism(const GRBimod& b, const ClassVector& x, const GroupCell& h) {
  auto src = b.shadow(b.unit(GroupCell{trivial_group(), h.ring}));
  auto tgt = b.shadow(b.unit(h));
  SparseQ m(tgt.generators(), 1);
  for (int c = 0; c < x.classes.count(); ++c)
    if (x.coeff[c] != 0) m.insert(x.classes.representatives[c], 0) = x.coeff[c];
  return ShadowMorphism(src, tgt, std::move(m));
}

void EquivariantChainComplex::validate() const {
  const int n = static_cast<int>(ranks.size());
  if (n == 0) throw TypeError("chain complex has no degrees");
  if (static_cast<int>(boundary.size()) != n - 1 || static_cast<int>(chain_map.size()) != n)
    throw TypeError("chain complex: wrong number of boundary or chain-map matrices");
  if (!group->is_homomorphism_to(*group, psi)) throw TypeError("chain complex: twist is not an endomorphism");
  auto check = [&](const GRMatrix& m, int rows, int cols, const std::string& what) {
    if (!same_group(m.group(), group) || m.rows() != rows || m.cols() != cols)
      throw TypeError("chain complex: " + what + " has the wrong shape");
    if (ring == Ring::Z)
      for (int h = 0; h < group->order(); ++h)
        if (!is_integral(m.coeff(h))) throw TypeError("chain complex: " + what + " is not integral");
  };
  for (int i = 0; i + 1 < n; ++i) check(boundary[i], ranks[i], ranks[i + 1], "boundary " + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) check(chain_map[i], ranks[i], ranks[i], "chain map in degree " + std::to_string(i));
  for (int i = 0; i + 2 < n; ++i)
    if (!(boundary[i] * boundary[i + 1]).is_zero())
      throw TypeError("chain complex: boundary squares to nonzero in degree " + std::to_string(i + 2));
  for (int i = 0; i + 1 < n; ++i)
    if (chain_map[i] * boundary[i].map_group(group, psi) != boundary[i] * chain_map[i + 1])
      throw TypeError("chain complex: chain map does not commute with the boundary in degree " + std::to_string(i + 1));
}

ClassVector reidemeister(const EquivariantChainComplex& c) {
  c.validate();
  ClassVector x = ClassVector::zero(twisted_conjugacy_classes(c.group, c.psi), c.ring);
  for (int i = 0; i <= c.top(); ++i) x = x + Rational(i % 2 ? -1 : 1) * twisted_trace(c.chain_map[i], c.psi, c.ring);
  return x;
}

ClassVector reidemeister_bicategorical(const EquivariantChainComplex& c) {
  c.validate();
  ClassVector x = ClassVector::zero(twisted_conjugacy_classes(c.group, c.psi), c.ring);
  for (int i = 0; i <= c.top(); ++i)
    x = x + Rational(i % 2 ? -1 : 1) * twisted_trace_bicategorical(c.chain_map[i], c.psi, c.ring);
  return x;
}

EquivariantChainComplex augment(const EquivariantChainComplex& c) {
  EquivariantChainComplex out;
  out.group = trivial_group();
  out.ring = c.ring;
  out.ranks = c.ranks;
  out.psi = {0};
  std::vector<int> collapse(c.group->order(), 0);
  for (const auto& d : c.boundary) out.boundary.push_back(d.map_group(out.group, collapse));
  for (const auto& f : c.chain_map) out.chain_map.push_back(f.map_group(out.group, collapse));
  return out;
}

Rational lefschetz(const EquivariantChainComplex& c) {
  if (c.group->order() != 1) throw TypeError("Lefschetz number needs the trivial group; augment first");
  c.validate();
  Rational s = 0;
  for (int i = 0; i <= c.top(); ++i) {
    Rational t = 0;
    for (Index j = 0; j < c.chain_map[i].rows(); ++j) t += c.chain_map[i].at(0, j, j);
    s += i % 2 ? -t : t;
  }
  return s;
}

Rational augment_reidemeister(const ClassVector& x) { return x.augmentation(); }

namespace {

int draw(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Matrix<Rational> random_int(std::mt19937_64& rng, Index rows, Index cols, int bound) {
  Matrix<Rational> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = draw(rng, -bound, bound);
  return m;
}

// Unimodular integer matrix and its inverse, from a few elementary operations.
std::pair<Matrix<Rational>, Matrix<Rational>> random_unimodular(std::mt19937_64& rng, Index n) {
  Matrix<Rational> q = Matrix<Rational>::Identity(n, n), qi = q;
  if (n < 2) return {q, qi};
  for (int step = 0; step < 3; ++step) {
    Index a = draw(rng, 0, static_cast<int>(n) - 1), b = draw(rng, 0, static_cast<int>(n) - 2);
    if (b >= a) ++b;
    int c = draw(rng, -2, 2);
    Matrix<Rational> e = Matrix<Rational>::Identity(n, n), ei = e;
    e(a, b) = c;
    ei(a, b) = -c;
    q = e * q;
    qi = qi * ei;
  }
  return {q, qi};
}

// Signed monomial matrix over KG and its inverse.
std::pair<GRMatrix, GRMatrix> random_monomial(std::mt19937_64& rng, const GroupPtr& g, Index n) {
  std::vector<int> perm(n);
  for (Index i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  std::shuffle(perm.begin(), perm.end(), rng);
  GRMatrix p(g, n, n), pi(g, n, n);
  for (Index j = 0; j < n; ++j) {
    int x = draw(rng, 0, g->order() - 1);
    Rational s = draw(rng, 0, 1) ? 1 : -1;
    p.add(x, perm[j], j, s);
    pi.add(g->inv(x), j, perm[j], s);
  }
  return {p, pi};
}

GRMatrix random_group_matrix(std::mt19937_64& rng, const GroupPtr& g, Index rows, Index cols) {
  GRMatrix m(g, rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      if (draw(rng, 0, 2) == 0) m.add(draw(rng, 0, g->order() - 1), i, j, draw(rng, -2, 2));
  m.prune();
  return m;
}

}  // namespace

EquivariantChainComplex random_complex(std::mt19937_64& rng, const GroupPtr& g, const std::vector<int>& psi, Ring ring,
                                       int max_degree, int max_rank) {
  const int top = draw(rng, 0, max_degree);
  // Spheres s_i in degree i, disks d_i from degree i to i-1.
  std::vector<int> spheres(top + 1), disks(top + 2, 0), ranks(top + 1);
  for (;;) {
    for (int i = 0; i <= top; ++i) {
      spheres[i] = draw(rng, 0, max_rank);
      disks[i] = i == 0 ? 0 : draw(rng, 0, max_rank);
    }
    bool ok = true;
    for (int i = 0; i <= top; ++i) {
      ranks[i] = spheres[i] + disks[i] + disks[i + 1];
      ok = ok && ranks[i] >= 1 && ranks[i] <= max_rank;
    }
    if (ok) break;
  }
  // Basis of C_i: spheres, then upper ends of disks_i, then lower ends of disks_{i+1}.
  std::vector<Matrix<Rational>> D(top);
  for (int i = 1; i <= top; ++i) {
    D[i - 1] = Matrix<Rational>::Zero(ranks[i - 1], ranks[i]);
    for (int j = 0; j < disks[i]; ++j) {
      int c = draw(rng, 1, 3) * (draw(rng, 0, 1) ? 1 : -1);
      D[i - 1](spheres[i - 1] + disks[i - 1] + j, spheres[i] + j) = c;
    }
  }
  // Arbitrary KG blocks on spheres and a multiple of a group element on each
  // disk; integral D is fixed by ψ, so these commute with the boundary.
  std::vector<GRMatrix> F;
  for (int i = 0; i <= top; ++i) {
    F.emplace_back(g, ranks[i], ranks[i]);
    GRMatrix block = random_group_matrix(rng, g, spheres[i], spheres[i]);
    for (int h = 0; h < g->order(); ++h)
      for (Index k = 0; k < block.coeff(h).outerSize(); ++k)
        for (SparseQ::InnerIterator it(block.coeff(h), k); it; ++it) F[i].add(h, it.row(), it.col(), it.value());
  }
  for (int i = 1; i <= top; ++i)
    for (int j = 0; j < disks[i]; ++j) {
      int a = draw(rng, -2, 2), x = draw(rng, 0, g->order() - 1);
      F[i].add(x, spheres[i] + j, spheres[i] + j, a);
      F[i - 1].add(x, spheres[i - 1] + disks[i - 1] + j, spheres[i - 1] + disks[i - 1] + j, a);
    }
  // Integral homotopy term D H + H D.
  for (int i = 0; i < top; ++i) {
    Matrix<Rational> h = random_int(rng, ranks[i + 1], ranks[i], 1);
    F[i] = F[i] + GRMatrix::embed(g, D[i] * h);
    F[i + 1] = F[i + 1] + GRMatrix::embed(g, h * D[i]);
  }
  // Integral change of basis.
  std::vector<Matrix<Rational>> Q(top + 1), Qi(top + 1);
  for (int i = 0; i <= top; ++i) std::tie(Q[i], Qi[i]) = random_unimodular(rng, ranks[i]);
  EquivariantChainComplex c;
  c.group = g;
  c.ring = ring;
  c.ranks = ranks;
  c.psi = psi;
  // Lift to KG through signed monomial matrices P: D ↦ P D P^-1, F ↦ P F ψ(P)^-1.
  std::vector<GRMatrix> P(top + 1), Pi(top + 1);
  for (int i = 0; i <= top; ++i) std::tie(P[i], Pi[i]) = random_monomial(rng, g, ranks[i]);
  for (int i = 1; i <= top; ++i)
    c.boundary.push_back(P[i - 1] * GRMatrix::embed(g, Q[i - 1] * D[i - 1] * Qi[i]) * Pi[i]);
  for (int i = 0; i <= top; ++i)
    c.chain_map.push_back(P[i] * GRMatrix::embed(g, Q[i]) * F[i] * GRMatrix::embed(g, Qi[i]) * Pi[i].map_group(g, psi));
  // A semilinear homotopy term ∂K + Kψ(∂) over KG.
  for (int i = 0; i < top; ++i) {
    GRMatrix k = random_group_matrix(rng, g, ranks[i + 1], ranks[i]);
    c.chain_map[i] = c.chain_map[i] + c.boundary[i] * k;
    c.chain_map[i + 1] = c.chain_map[i + 1] + k * c.boundary[i].map_group(g, psi);
  }
  c.validate();
  return c;
}

}  // namespace shadowtrace
