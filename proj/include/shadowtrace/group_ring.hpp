#pragma once

#include "shadowtrace/group.hpp"
#include "shadowtrace/scalar.hpp"

#include <Eigen/Sparse>

#include <string>
#include <vector>

namespace shadowtrace {

// Finitely supported combination sum_h c_h h in K[G].
template <class S>
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(GroupPtr g) : group_(std::move(g)), coeffs_(group_->order(), S(0)) {}
  static GroupRingElement basis(GroupPtr g, int h, S c = S(1)) {
    GroupRingElement x(std::move(g));
    x.coeffs_[h] = c;
    return x;
  }

  const GroupPtr& group() const { return group_; }
  const S& operator[](int h) const { return coeffs_[h]; }
  S& operator[](int h) { return coeffs_[h]; }
  const std::vector<S>& coefficients() const { return coeffs_; }

  S augmentation() const {
    S s = 0;
    for (const auto& c : coeffs_) s += c;
    return s;
  }
  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) {
    for (std::size_t h = 0; h < a.coeffs_.size(); ++h) a.coeffs_[h] += b.coeffs_[h];
    return a;
  }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) {
    for (std::size_t h = 0; h < a.coeffs_.size(); ++h) a.coeffs_[h] -= b.coeffs_[h];
    return a;
  }
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    GroupRingElement out(a.group_);
    for (int x = 0; x < a.group_->order(); ++x) {
      if (a.coeffs_[x] == 0) continue;
      for (int y = 0; y < a.group_->order(); ++y)
        if (b.coeffs_[y] != 0) out.coeffs_[a.group_->mul(x, y)] += a.coeffs_[x] * b.coeffs_[y];
    }
    return out;
  }
  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return same_group(a.group_, b.group_) && a.coeffs_ == b.coeffs_;
  }

 private:
  GroupPtr group_;
  std::vector<S> coeffs_;
};

template <class S>
using Sparse = Eigen::SparseMatrix<S>;

template <class S>
Sparse<S> kron(const Sparse<S>& a, const Sparse<S>& b) {
  std::vector<Eigen::Triplet<S>> t;
  t.reserve(a.nonZeros() * b.nonZeros());
  for (Index k = 0; k < a.outerSize(); ++k)
    for (typename Sparse<S>::InnerIterator x(a, k); x; ++x)
      for (Index l = 0; l < b.outerSize(); ++l)
        for (typename Sparse<S>::InnerIterator y(b, l); y; ++y)
          t.emplace_back(x.row() * b.rows() + y.row(), x.col() * b.cols() + y.col(), x.value() * y.value());
  Sparse<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

// Matrix over K[G], stored as one sparse K-matrix per group element:
// A = sum_h A_h h.
template <class S>
class GroupRingMatrix {
 public:
  GroupRingMatrix() = default;
  GroupRingMatrix(GroupPtr g, Index rows, Index cols)
      : group_(std::move(g)), rows_(rows), cols_(cols), coeff_(group_->order(), Sparse<S>(rows, cols)) {}

  static GroupRingMatrix identity(GroupPtr g, Index n) {
    GroupRingMatrix out(g, n, n);
    out.coeff_[g->identity()].setIdentity();
    return out;
  }
  // m * h
  static GroupRingMatrix embed(GroupPtr g, const Matrix<S>& m, int h) {
    GroupRingMatrix out(g, m.rows(), m.cols());
    out.coeff_[h] = m.sparseView();
    out.coeff_[h].prune(S(0), 0);
    return out;
  }
  static GroupRingMatrix embed(GroupPtr g, const Matrix<S>& m) {
    int e = g->identity();
    return embed(std::move(g), m, e);
  }

  const GroupPtr& group() const { return group_; }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const Sparse<S>& coeff(int h) const { return coeff_[h]; }
  Matrix<S> dense(int h) const { return Matrix<S>(coeff_[h]); }
  S at(int h, Index i, Index j) const { return coeff_[h].coeff(i, j); }
  void add(int h, Index i, Index j, const S& v) { coeff_[h].coeffRef(i, j) += v; }

  GroupRingElement<S> entry(Index i, Index j) const {
    GroupRingElement<S> x(group_);
    for (int h = 0; h < group_->order(); ++h) x[h] = coeff_[h].coeff(i, j);
    return x;
  }
  void set_entry(Index i, Index j, const GroupRingElement<S>& x) {
    for (int h = 0; h < group_->order(); ++h) coeff_[h].coeffRef(i, j) = x[h];
    for (auto& c : coeff_) c.prune(S(0), 0);
  }

  bool is_zero() const {
    for (const auto& m : coeff_)
      if (!zero_sparse(m)) return false;
    return true;
  }
  Matrix<S> augmented() const {
    Matrix<S> out = Matrix<S>::Zero(rows_, cols_);
    for (const auto& m : coeff_) out += Matrix<S>(m);
    return out;
  }

  // Entrywise image under a group homomorphism.
  GroupRingMatrix map_group(const GroupPtr& target, const std::vector<int>& hom) const {
    GroupRingMatrix out(target, rows_, cols_);
    for (int h = 0; h < group_->order(); ++h) out.coeff_[hom[h]] += coeff_[h];
    out.prune();
    return out;
  }

  friend GroupRingMatrix operator*(const GroupRingMatrix& a, const GroupRingMatrix& b) {
    if (a.cols_ != b.rows_ || !same_group(a.group_, b.group_))
      throw TypeError("group ring matrix product: shape mismatch");
    GroupRingMatrix out(a.group_, a.rows_, b.cols_);
    const int n = a.group_->order();
    for (int x = 0; x < n; ++x) {
      if (a.coeff_[x].nonZeros() == 0) continue;
      for (int y = 0; y < n; ++y)
        if (b.coeff_[y].nonZeros() != 0) {
          Sparse<S> p = a.coeff_[x] * b.coeff_[y];
          out.coeff_[a.group_->mul(x, y)] += p;
        }
    }
    out.prune();
    return out;
  }
  friend GroupRingMatrix operator+(GroupRingMatrix a, const GroupRingMatrix& b) {
    a.check_same(b);
    for (std::size_t h = 0; h < a.coeff_.size(); ++h) a.coeff_[h] += b.coeff_[h];
    a.prune();
    return a;
  }
  friend GroupRingMatrix operator-(GroupRingMatrix a, const GroupRingMatrix& b) {
    a.check_same(b);
    for (std::size_t h = 0; h < a.coeff_.size(); ++h) a.coeff_[h] -= b.coeff_[h];
    a.prune();
    return a;
  }
  friend GroupRingMatrix operator*(const S& c, GroupRingMatrix a) {
    for (auto& m : a.coeff_) m *= c;
    a.prune();
    return a;
  }
  friend bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b) {
    if (!same_group(a.group_, b.group_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t h = 0; h < a.coeff_.size(); ++h) {
      Sparse<S> d = a.coeff_[h] - b.coeff_[h];
      if (!zero_sparse(d)) return false;
    }
    return true;
  }
  friend bool operator!=(const GroupRingMatrix& a, const GroupRingMatrix& b) { return !(a == b); }

  void prune() {
    for (auto& c : coeff_) c.prune(S(0), 0);
  }
  void add_block(int h, const Sparse<S>& m) { coeff_[h] += m; }

 private:
  static bool zero_sparse(const Sparse<S>& m) {
    for (Index k = 0; k < m.outerSize(); ++k)
      for (typename Sparse<S>::InnerIterator it(m, k); it; ++it)
        if (it.value() != 0) return false;
    return true;
  }
  void check_same(const GroupRingMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_ || !same_group(group_, b.group_))
      throw TypeError("group ring matrix sum: shape mismatch");
  }

  GroupPtr group_;
  Index rows_ = 0, cols_ = 0;
  std::vector<Sparse<S>> coeff_;
};

// kron(a, b) for a K-matrix a and a K[G]-matrix b.
template <class S>
GroupRingMatrix<S> kron(const Sparse<S>& a, const GroupRingMatrix<S>& b) {
  GroupRingMatrix<S> out(b.group(), a.rows() * b.rows(), a.cols() * b.cols());
  for (int h = 0; h < b.group()->order(); ++h)
    if (b.coeff(h).nonZeros() != 0) out.add_block(h, kron(a, b.coeff(h)));
  return out;
}

// Block matrix [lambda(A_ij)] where lambda extends linearly from group
// elements of A's group to K[H]-matrices: sum_g kron(A_g, lambda(g)).
template <class S>
GroupRingMatrix<S> push_through(const GroupRingMatrix<S>& a, const std::vector<GroupRingMatrix<S>>& lambda) {
  const auto& first = lambda.at(0);
  GroupRingMatrix<S> out(first.group(), a.rows() * first.rows(), a.cols() * first.cols());
  for (int g = 0; g < a.group()->order(); ++g) {
    if (a.coeff(g).nonZeros() == 0) continue;
    for (int h = 0; h < first.group()->order(); ++h)
      if (lambda[g].coeff(h).nonZeros() != 0) out.add_block(h, kron(a.coeff(g), lambda[g].coeff(h)));
  }
  out.prune();
  return out;
}

}  // namespace shadowtrace
