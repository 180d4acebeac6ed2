#pragma once

#include "shadowtrace/bicategory.hpp"

#include <string>

namespace shadowtrace {

template <class B>
typename B::TwoCell hcompose3(const B& b, const typename B::TwoCell& f, const typename B::TwoCell& g,
                              const typename B::TwoCell& h) {
  return b.hcompose(b.hcompose(f, g), h);
}

// (id_M ⊙ ε)(η ⊙ id_M) = id_M and (ε ⊙ id_M*)(id_M* ⊙ η) = id_M*.
template <class B>
bool triangle_identities_hold(const B& b, const DualPair<B>& d) {
  auto idM = b.identity(d.M), idD = b.identity(d.Mdual);
  auto first = b.vcompose(b.hcompose(idM, d.ev), b.hcompose(d.coev, idM));
  auto second = b.vcompose(b.hcompose(d.ev, idD), b.hcompose(idD, d.coev));
  return b.equal(first, idM) && b.equal(second, idD);
}

template <class B>
DualPair<B> unit_dual(const B& b, const typename B::ZeroCell& r) {
  auto u = b.unit(r);
  return {u, u, b.identity(u), b.identity(u)};
}

// (M⊙N)* = N*⊙M* with η = (1⊙η_N⊙1)η_M and ε = ε_N(1⊙ε_M⊙1).
template <class B>
DualPair<B> compose_duals(const B& b, const DualPair<B>& dm, const DualPair<B>& dn) {
  auto coev = b.vcompose(hcompose3(b, b.identity(dm.M), dn.coev, b.identity(dm.Mdual)), dm.coev);
  auto ev = b.vcompose(dn.ev, hcompose3(b, b.identity(dn.Mdual), dm.ev, b.identity(dn.M)));
  return {dm.M * dn.M, dn.Mdual * dm.Mdual, coev, ev};
}

/// Right dual of a word, assembled from the duals of its letters. Throws
/// NotDualizable when a letter has no dual in its instance.
template <class B>
DualPair<B> make_dual(const B& b, const typename B::OneCell& w) {
  DualPair<B> d = unit_dual(b, w.src());
  for (const auto& p : w.letters()) d = compose_duals(b, d, b.dual_letter(p));
  if (!triangle_identities_hold(b, d)) throw NotDualizable("triangle identities fail for the constructed dual");
  return d;
}

namespace detail {

template <class W>
W strip_suffix(const W& w, const W& suffix, const char* what) {
  std::size_t n = w.size(), m = suffix.size();
  if (m > n || w.slice(n - m, n) != suffix) throw TypeError(std::string(what) + ": word does not end with the dual's 1-cell");
  return w.slice(0, n - m);
}

template <class W>
W strip_prefix(const W& w, const W& prefix, const char* what) {
  std::size_t m = prefix.size();
  if (m > w.size() || w.slice(0, m) != prefix) throw TypeError(std::string(what) + ": word does not start with the dual's 1-cell");
  return w.slice(m, w.size());
}

}  // namespace detail

/// tr(f) for f: Q⊙M → M⊙P, a map ⟨Q⟩ → ⟨P⟩:
/// ⟨Q⟩ → ⟨Q⊙M⊙M*⟩ → ⟨M⊙P⊙M*⟩ → ⟨M*⊙M⊙P⟩ → ⟨P⟩.
template <class B>
ShadowMorphism trace(const B& b, const typename B::TwoCell& f, const DualPair<B>& d) {
  auto Q = detail::strip_suffix(f.dom(), d.M, "trace");
  auto P = detail::strip_prefix(f.cod(), d.M, "trace");
  auto s1 = b.shadow(b.hcompose(b.identity(Q), d.coev));
  auto s2 = b.shadow(b.hcompose(f, b.identity(d.Mdual)));
  auto s3 = b.theta(d.M * P, d.Mdual);
  auto s4 = b.shadow(b.hcompose(d.ev, b.identity(P)));
  return s4 * s3 * s2 * s1;
}

template <class B>
ShadowMorphism euler(const B& b, const DualPair<B>& d) {
  return trace(b, b.identity(d.M), d);
}

// Trace of a diagonal Δ: M → M⊙M, a map ⟨U⟩ → ⟨M⟩.
template <class B>
ShadowMorphism transfer(const B& b, const typename B::TwoCell& delta, const DualPair<B>& d) {
  if (delta.dom() != d.M) throw TypeError("transfer: diagonal must start at the dualizable 1-cell");
  return trace(b, delta, d);
}

/// For f: Q⊙M → N⊙P, the mate N*⊙Q → P⊙M* given by
/// (ε_N⊙1)(1⊙f⊙1)(1⊙η_M).
template <class B>
typename B::TwoCell mate(const B& b, const typename B::TwoCell& f, const DualPair<B>& dm, const DualPair<B>& dn) {
  auto Q = detail::strip_suffix(f.dom(), dm.M, "mate");
  auto P = detail::strip_prefix(f.cod(), dn.M, "mate");
  auto a = hcompose3(b, b.identity(dn.Mdual), b.identity(Q), dm.coev);
  auto c = hcompose3(b, b.identity(dn.Mdual), f, b.identity(dm.Mdual));
  auto e = hcompose3(b, dn.ev, b.identity(P), b.identity(dm.Mdual));
  return b.vcompose(e, b.vcompose(c, a));
}

// Inverse of mate: g: N*⊙Q → P⊙M* goes to (1⊙1⊙ε_M)(1⊙g⊙1)(η_N⊙1⊙1).
template <class B>
typename B::TwoCell unmate(const B& b, const typename B::TwoCell& g, const DualPair<B>& dm, const DualPair<B>& dn) {
  auto Q = detail::strip_prefix(g.dom(), dn.Mdual, "unmate");
  auto P = detail::strip_suffix(g.cod(), dm.Mdual, "unmate");
  auto a = hcompose3(b, dn.coev, b.identity(Q), b.identity(dm.M));
  auto c = hcompose3(b, b.identity(dn.M), g, b.identity(dm.M));
  auto e = hcompose3(b, b.identity(dn.M), b.identity(P), dm.ev);
  return b.vcompose(e, b.vcompose(c, a));
}

/// Trace of g: M*⊙Q → P⊙M* using M* as a left-dualizable 1-cell with left
/// dual M. Mirror of `trace`, with θ moving M from the front:
/// ⟨Q⟩ → ⟨M⊙M*⊙Q⟩ → ⟨M*⊙Q⊙M⟩ → ⟨P⊙M*⊙M⟩ → ⟨P⟩.
template <class B>
ShadowMorphism left_trace(const B& b, const typename B::TwoCell& g, const DualPair<B>& d) {
  auto Q = detail::strip_prefix(g.dom(), d.Mdual, "left trace");
  auto P = detail::strip_suffix(g.cod(), d.Mdual, "left trace");
  auto s1 = b.shadow(b.hcompose(d.coev, b.identity(Q)));
  auto s2 = b.theta(d.M, d.Mdual * Q);
  auto s3 = b.shadow(b.hcompose(g, b.identity(d.M)));
  auto s4 = b.shadow(b.hcompose(b.identity(P), d.ev));
  return s4 * s3 * s2 * s1;
}

}  // namespace shadowtrace
