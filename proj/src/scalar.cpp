#include "shadowtrace/scalar.hpp"

#include <vector>

namespace shadowtrace {

const char* ring_name(Ring r) { return r == Ring::Z ? "Z" : "Q"; }

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x) {
  if (is_integral(x)) return mp::numerator(x).str();
  return mp::numerator(x).str() + "/" + mp::denominator(x).str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  auto slash = text.find('/');
  auto digits_ok = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = (allow_sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits_ok(text, true)) throw std::invalid_argument("bad number '" + text + "'");
    return Rational(Integer(text));
  }
  std::string p = text.substr(0, slash), q = text.substr(slash + 1);
  if (!digits_ok(p, true) || !digits_ok(q, false))
    throw std::invalid_argument("bad number '" + text + "'");
  Integer den(q);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return Rational(Integer(p), den);
}

bool is_integral(const Matrix<Rational>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_integral(m(i, j))) return false;
  return true;
}

bool is_integral(const SparseQ& m) {
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseQ::InnerIterator it(m, k); it; ++it)
      if (!is_integral(it.value())) return false;
  return true;
}

Matrix<Integer> to_integer(const Matrix<Rational>& m) {
  Matrix<Integer> out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      if (!is_integral(m(i, j))) throw TypeError("non-integral entry " + to_string(m(i, j)));
      out(i, j) = mp::numerator(m(i, j));
    }
  return out;
}

Matrix<Rational> to_rational(const Matrix<Integer>& m) {
  Matrix<Rational> out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out(i, j) = Rational(m(i, j));
  return out;
}

bool sparse_equal(const SparseQ& a, const SparseQ& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  SparseQ d = a - b;
  for (Index k = 0; k < d.outerSize(); ++k)
    for (SparseQ::InnerIterator it(d, k); it; ++it)
      if (it.value() != 0) return false;
  return true;
}

SparseQ to_sparse(const Matrix<Rational>& m) {
  std::vector<Eigen::Triplet<Rational>> t;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) t.emplace_back(i, j, m(i, j));
  SparseQ out(m.rows(), m.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SparseQ sparse_identity(Index n) {
  SparseQ out(n, n);
  out.setIdentity();
  return out;
}

}  // namespace shadowtrace
