#pragma once

#include "shadowtrace/evaluator.hpp"
#include "shadowtrace/grbimod.hpp"
#include "shadowtrace/invariants.hpp"
#include "shadowtrace/matmod.hpp"
#include "shadowtrace/span.hpp"
#include "shadowtrace/workspace.hpp"

#include <string>
#include <vector>

namespace shadowtrace {

// Turns the written valuation into cells of an instance. Errors point at the
// assignment line.
Valuation<MatMod<Integer>> realize(const Workspace& ws, const MatMod<Integer>& b);
Valuation<MatMod<Rational>> realize(const Workspace& ws, const MatMod<Rational>& b);
Valuation<Span> realize(const Workspace& ws, const Span& b);
Valuation<GRBimod> realize(const Workspace& ws, const GRBimod& b, Ring ring);

// 1, Z<n> (also Z/<n>) and S3.
GroupPtr named_group(const std::string& name);
GRMatrix realize_grmatrix(const GRRows& rows, const GroupPtr& g, Index rows_hint = -1, Index cols_hint = -1);
std::vector<int> realize_psi(const std::vector<int>& psi, const GroupPtr& g);

EquivariantChainComplex realize_complex(const ComplexEntry& c);

// Value of a label list as a 1-cell starting in region `at`.
template <class B>
typename B::OneCell realize_word(const B& b, const Valuation<B>& v, const std::vector<std::string>& labels,
                                 const std::string& at) {
  auto z = v.zero.find(at);
  if (z == v.zero.end()) throw TypeError("0-cell '" + at + "' has no value");
  typename B::OneCell w = b.unit(z->second);
  for (const auto& l : labels) {
    auto it = v.one.find(l);
    if (it == v.one.end()) throw TypeError("1-cell '" + l + "' has no value");
    w = w * it->second;
  }
  return w;
}

}  // namespace shadowtrace
