#pragma once

#include "shadowtrace/shadow.hpp"
#include "shadowtrace/word.hpp"

#include <concepts>
#include <string>

namespace shadowtrace {

template <class B>
struct DualPair;

/// A strict 2-category with a shadow functor. 1-cells are words of letters;
/// 2-cells carry their source and target words.
template <class B>
concept ShadowedBicategory = requires(const B& b, const typename B::ZeroCell& z, const typename B::OneCell& m,
                                      const typename B::TwoCell& f, const typename B::Letter& p) {
  typename B::ZeroCell;
  typename B::Letter;
  typename B::OneCell;
  typename B::TwoCell;
  { b.name() } -> std::convertible_to<std::string>;
  { b.unit(z) } -> std::same_as<typename B::OneCell>;
  { b.identity(m) } -> std::same_as<typename B::TwoCell>;
  { b.vcompose(f, f) } -> std::same_as<typename B::TwoCell>;
  { b.hcompose(f, f) } -> std::same_as<typename B::TwoCell>;
  { b.equal(f, f) } -> std::same_as<bool>;
  { b.shadow(m) } -> std::same_as<ShadowPresentation>;
  { b.shadow(f) } -> std::same_as<ShadowMorphism>;
  { b.theta(m, m) } -> std::same_as<ShadowMorphism>;
  { b.dual_letter(p) } -> std::same_as<DualPair<B>>;
  { f.dom() } -> std::convertible_to<typename B::OneCell>;
  { f.cod() } -> std::convertible_to<typename B::OneCell>;
};

/// M with right dual M*, η: U_R → M⊙M* and ε: M*⊙M → U_S.
template <class B>
struct DualPair {
  typename B::OneCell M;
  typename B::OneCell Mdual;
  typename B::TwoCell coev;
  typename B::TwoCell ev;
};

template <class B>
typename B::OneCell compose1(const B&, const typename B::OneCell& m, const typename B::OneCell& n) {
  return m * n;
}

}  // namespace shadowtrace
