#include "shadowtrace/smith.hpp"

#include <utility>

namespace shadowtrace {
namespace {

// Euclidean structure used by the elimination. Rational is a field, so every
// division is exact and every nonzero pivot is as good as any other.
template <class S>
struct Euclid;

template <>
struct Euclid<Integer> {
  static Integer size(const Integer& x) { return mp::abs(x); }
  static Integer quotient(const Integer& a, const Integer& b) { return a / b; }
  static bool divides(const Integer& d, const Integer& x) { return x % d == 0; }
  static Integer unit_normalizer(const Integer& x) { return x < 0 ? Integer(-1) : Integer(1); }
};

template <>
struct Euclid<Rational> {
  static Rational size(const Rational& x) { return x == 0 ? Rational(0) : Rational(1); }
  static Rational quotient(const Rational& a, const Rational& b) { return a / b; }
  static bool divides(const Rational&, const Rational&) { return true; }
  static Rational unit_normalizer(const Rational& x) { return 1 / x; }
};

template <class S>
void swap_rows(Matrix<S>& m, Index i, Index j) {
  if (i != j) m.row(i).swap(m.row(j));
}
template <class S>
void swap_cols(Matrix<S>& m, Index i, Index j) {
  if (i != j) m.col(i).swap(m.col(j));
}

}  // namespace

template <class S>
std::vector<S> SmithForm<S>::invariant_factors() const {
  std::vector<S> out;
  for (Index i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

template <class S>
SmithForm<S> smith_normal_form(const Matrix<S>& a) {
  using E = Euclid<S>;
  const Index m = a.rows(), n = a.cols();
  SmithForm<S> s;
  s.D = a;
  s.U = Matrix<S>::Identity(m, m);
  s.V = Matrix<S>::Identity(n, n);
  Matrix<S>& D = s.D;
  Index t = 0;
  for (; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      Index pi = -1, pj = -1;
      S best = 0;
      for (Index j = t; j < n; ++j)
        for (Index i = t; i < m; ++i) {
          if (D(i, j) == 0) continue;
          S sz = E::size(D(i, j));
          if (pi < 0 || sz < best) {
            best = sz;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        s.rank = t;
        return s;
      }
      swap_rows(D, t, pi);
      swap_rows(s.U, t, pi);
      swap_cols(D, t, pj);
      swap_cols(s.V, t, pj);

      bool clean = true;
      for (Index i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        S q = E::quotient(D(i, t), D(t, t));
        D.row(i) -= q * D.row(t);
        s.U.row(i) -= q * s.U.row(t);
        if (D(i, t) != 0) clean = false;
      }
      for (Index j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        S q = E::quotient(D(t, j), D(t, t));
        D.col(j) -= q * D.col(t);
        s.V.col(j) -= q * s.V.col(t);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      Index bad = -1;
      for (Index i = t + 1; i < m && bad < 0; ++i)
        for (Index j = t + 1; j < n; ++j)
          if (!E::divides(D(t, t), D(i, j))) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      D.row(t) += D.row(bad);
      s.U.row(t) += s.U.row(bad);
    }
    S u = E::unit_normalizer(D(t, t));
    if (u != 1) {
      D.row(t) *= u;
      s.U.row(t) *= u;
    }
  }
  s.rank = t;
  return s;
}

template <class S>
bool in_column_span(const SmithForm<S>& s, const Vector<S>& v) {
  if (v.size() != s.U.cols()) throw TypeError("in_column_span: dimension mismatch");
  Vector<S> y = s.U * v;
  for (Index i = 0; i < y.size(); ++i) {
    if (i < s.rank) {
      if (!Euclid<S>::divides(s.D(i, i), y(i))) return false;
    } else if (y(i) != 0) {
      return false;
    }
  }
  return true;
}

template struct SmithForm<Integer>;
template struct SmithForm<Rational>;
template SmithForm<Integer> smith_normal_form(const Matrix<Integer>&);
template SmithForm<Rational> smith_normal_form(const Matrix<Rational>&);
template bool in_column_span(const SmithForm<Integer>&, const Vector<Integer>&);
template bool in_column_span(const SmithForm<Rational>&, const Vector<Rational>&);

}  // namespace shadowtrace
