#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <stdexcept>
#include <string>

namespace shadowtrace {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
using SparseQ = Eigen::SparseMatrix<Rational>;
using Index = Eigen::Index;

// Ground ring of a module or a shadow presentation.
enum class Ring { Z, Q };

const char* ring_name(Ring r);

class TypeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotDualizable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
Rational parse_rational(const std::string& text);

inline bool is_integral(const Rational& x) { return mp::denominator(x) == 1; }
bool is_integral(const Matrix<Rational>& m);
bool is_integral(const SparseQ& m);

inline Rational to_q(const Integer& x) { return Rational(x); }
inline const Rational& to_q(const Rational& x) { return x; }

Matrix<Integer> to_integer(const Matrix<Rational>& m);
Matrix<Rational> to_rational(const Matrix<Integer>& m);

template <class S>
bool all_zero(const Matrix<S>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) return false;
  return true;
}

template <class S>
Matrix<S> kron(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> out = Matrix<S>::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  return out;
}

// Exact comparison; sparse storage may hold explicit zeros.
bool sparse_equal(const SparseQ& a, const SparseQ& b);
SparseQ to_sparse(const Matrix<Rational>& m);
SparseQ sparse_identity(Index n);

template <class S>
Matrix<Rational> to_q(const Matrix<S>& m) {
  Matrix<Rational> out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out(i, j) = to_q(m(i, j));
  return out;
}

}  // namespace shadowtrace
