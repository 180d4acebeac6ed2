#pragma once

#include "shadowtrace/scalar.hpp"

#include <vector>

namespace shadowtrace {

/// U * A * V == D with U, V invertible over S and d_1 | d_2 | ... on the
/// diagonal of D. Over Rational every nonzero invariant factor is 1.
template <class S>
struct SmithForm {
  Matrix<S> U;
  Matrix<S> V;
  Matrix<S> D;
  Index rank = 0;

  std::vector<S> invariant_factors() const;
};

template <class S>
SmithForm<S> smith_normal_form(const Matrix<S>& a);

// True iff v lies in the column span of the matrix that s was computed from.
template <class S>
bool in_column_span(const SmithForm<S>& s, const Vector<S>& v);

extern template struct SmithForm<Integer>;
extern template struct SmithForm<Rational>;
extern template SmithForm<Integer> smith_normal_form(const Matrix<Integer>&);
extern template SmithForm<Rational> smith_normal_form(const Matrix<Rational>&);
extern template bool in_column_span(const SmithForm<Integer>&, const Vector<Integer>&);
extern template bool in_column_span(const SmithForm<Rational>&, const Vector<Rational>&);

}  // namespace shadowtrace
