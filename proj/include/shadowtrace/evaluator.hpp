#pragma once

#include "shadowtrace/diagram.hpp"
#include "shadowtrace/samplers.hpp"
#include "shadowtrace/trace.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace shadowtrace {

/// Assignment of instance cells to the labels of a signature.
template <class B>
struct Valuation {
  std::map<std::string, typename B::ZeroCell> zero;
  std::map<std::string, typename B::OneCell> one;
  std::map<std::string, typename B::TwoCell> two;
};

template <class B>
struct ValuedDiagram {
  Signature sig;
  Diagram diagram;
  Valuation<B> val;
};

/// Value of a list of 1-cell labels starting in `region`.
template <class B>
typename B::OneCell word_value(const B& b, const Valuation<B>& v, const std::vector<std::string>& labels,
                               const std::string& region) {
  auto z = v.zero.find(region);
  if (z == v.zero.end()) throw DiagramError(0, "valuation: region '" + region + "' is not assigned");
  typename B::OneCell w = b.unit(z->second);
  for (const auto& l : labels) {
    auto it = v.one.find(l);
    if (it == v.one.end()) throw DiagramError(0, "valuation: 1-cell '" + l + "' is not assigned");
    w = w * it->second;
  }
  return w;
}

// Checks the types of a valuation against a signature.
template <class B>
void check_valuation(const B& b, const Signature& sig, const Valuation<B>& v) {
  for (const auto& z : sig.zero_cells)
    if (!v.zero.count(z)) throw DiagramError(0, "valuation: region '" + z + "' is not assigned");
  for (const auto& [label, decl] : sig.one_cells) {
    auto it = v.one.find(label);
    if (it == v.one.end()) throw DiagramError(0, "valuation: 1-cell '" + label + "' is not assigned");
    if (!(it->second.src() == v.zero.at(decl.src)) || !(it->second.tgt() == v.zero.at(decl.tgt)))
      throw DiagramError(0, "valuation: 1-cell '" + label + "' does not run from '" + decl.src + "' to '" + decl.tgt + "'");
  }
  for (const auto& [name, g] : sig.generators) {
    auto it = v.two.find(name);
    if (it == v.two.end()) throw DiagramError(0, "valuation: generator '" + name + "' is not assigned");
    if (!(it->second.dom() == word_value(b, v, g.dom, g.src)) || !(it->second.cod() == word_value(b, v, g.cod, g.src)))
      throw DiagramError(0, "valuation: generator '" + name + "' has the wrong boundary");
  }
}

/// θⁿ_k on the composite of `parts`: ⟨P₁⊙…⊙Pₙ⟩ → ⟨P_{k+1}⊙…⊙P_k⟩.
template <class B>
ShadowMorphism theta_power(const B& b, const std::vector<typename B::OneCell>& parts, const typename B::ZeroCell& at,
                           int k) {
  const int n = static_cast<int>(parts.size());
  if (k < 0 || k > n) throw TypeError("theta power: shift " + std::to_string(k) + " outside 0.." + std::to_string(n));
  typename B::OneCell head = b.unit(at);
  for (int i = 0; i < k; ++i) head = head * parts[i];
  typename B::OneCell tail = b.unit(head.tgt());
  for (int i = k; i < n; ++i) tail = tail * parts[i];
  if (k == 0 || k == n) return ShadowMorphism::identity(b.shadow(head * tail));
  return b.theta(head, tail);
}

// θⁿ_k on a word of n letters.
template <class B>
ShadowMorphism theta_power(const B& b, const typename B::OneCell& w, int k) {
  std::vector<typename B::OneCell> parts;
  for (const auto& p : w.letters()) parts.push_back(b.letter(p));
  return theta_power(b, parts, w.src(), k);
}

template <class B>
ShadowMorphism value_elementary(const B& b, const Signature& sig, const Valuation<B>& v, const Layer& l,
                                const CyclicWord& incoming) {
  typename B::TwoCell acc = b.identity(b.unit(v.zero.at(incoming.ambient)));
  for (const auto& s : l.slots) {
    if (s.is_box()) {
      auto it = v.two.find(s.name);
      if (it == v.two.end()) throw DiagramError(0, "valuation: generator '" + s.name + "' is not assigned");
      acc = b.hcompose(acc, it->second);
    } else {
      acc = b.hcompose(acc, b.identity(word_value(b, v, {s.name}, sig.one(s.name).src)));
    }
  }
  return b.shadow(acc);
}

template <class B>
ShadowMorphism layer_value(const B& b, const Signature& sig, const Valuation<B>& v, const Layer& l,
                           const CyclicWord& incoming) {
  if (!l.is_rotation()) return value_elementary(b, sig, v, l, incoming);
  std::vector<typename B::OneCell> parts;
  for (const auto& label : incoming.letters) parts.push_back(v.one.at(label));
  return theta_power(b, parts, v.zero.at(incoming.ambient), l.k);
}

/// Composite of the layer values, top to bottom, as a map ⟨dom⟩ → ⟨cod⟩.
template <class B>
ShadowMorphism value(const B& b, const Signature& sig, const Valuation<B>& v, const Diagram& d) {
  auto w = interfaces(sig, d);
  check_valuation(b, sig, v);
  ShadowMorphism acc = ShadowMorphism::identity(b.shadow(word_value(b, v, w[0].letters, w[0].ambient)));
  for (std::size_t i = 0; i < d.layers.size(); ++i) acc = layer_value(b, sig, v, d.layers[i], w[i]) * acc;
  return acc;
}

template <class B>
ShadowMorphism value(const B& b, const ValuedDiagram<B>& vd) {
  return value(b, vd.sig, vd.val, vd.diagram);
}

/// The four-layer diagram of tr(f) for f: Q⊙M → M⊙P: coevaluation, f,
/// rotation of M⊙P past M*, evaluation. Labels with empty value are left out.
template <class B>
ValuedDiagram<B> build_trace_diagram([[maybe_unused]] const B& b, const typename B::TwoCell& f, const DualPair<B>& d) {
  auto Q = detail::strip_suffix(f.dom(), d.M, "trace diagram");
  auto P = detail::strip_prefix(f.cod(), d.M, "trace diagram");
  ValuedDiagram<B> out;
  auto& sig = out.sig;
  auto& v = out.val;
  sig.add_zero("R");
  sig.add_zero("S");
  v.zero.emplace("R", d.M.src());
  v.zero.emplace("S", d.M.tgt());
  auto label = [&](const std::string& name, const typename B::OneCell& w, const std::string& src,
                   const std::string& tgt) {
    if (w.empty()) return std::vector<std::string>{};
    sig.add_one({name, src, tgt});
    v.one.emplace(name, w);
    return std::vector<std::string>{name};
  };
  auto cat = [](std::vector<std::string> a, const std::vector<std::string>& c) {
    a.insert(a.end(), c.begin(), c.end());
    return a;
  };
  auto q = label("Q", Q, "R", "R"), m = label("M", d.M, "R", "S"), ms = label("Mstar", d.Mdual, "S", "R"),
       p = label("P", P, "S", "S");
  sig.add_generator({"eta", {}, cat(m, ms), "R", "R"});
  sig.add_generator({"f", cat(q, m), cat(m, p), "R", "S"});
  sig.add_generator({"ev", cat(ms, m), {}, "S", "S"});
  v.two.emplace("eta", d.coev);
  v.two.emplace("f", f);
  v.two.emplace("ev", d.ev);
  auto slots = [](const std::vector<std::string>& pre, const Slot& box, const std::vector<std::string>& post) {
    std::vector<Slot> s;
    for (const auto& l : pre) s.push_back(Slot::wire(l));
    s.push_back(box);
    for (const auto& l : post) s.push_back(Slot::wire(l));
    return s;
  };
  out.diagram.name = "trace";
  out.diagram.top = CyclicWord{q, "R"};
  const int n = static_cast<int>(m.size() + p.size() + ms.size());
  const int k = static_cast<int>(m.size() + p.size());
  out.diagram.layers = {Layer::elementary(slots(q, Slot::box("eta"), {})),
                        Layer::elementary(slots({}, Slot::box("f"), ms)), Layer::rotation(n ? k % n : 0),
                        Layer::elementary(slots({}, Slot::box("ev"), p))};
  validate(sig, out.diagram);
  return out;
}

/// A random valued diagram over regions R (a source of dualizable letters)
/// and S, with 1-cells A: R⇸R, M: R⇸S, Mstar: S⇸R, C: S⇸S, the duality
/// boxes, and random boxes between runs of wires. Words stay at most
/// `max_word` letters long.
template <class Sampler>
ValuedDiagram<typename Sampler::B> random_diagram(const Sampler& s, Rng& rng, int max_layers = 4, int max_word = 4) {
  using B = typename Sampler::B;
  using OneCell = typename B::OneCell;
  const B& b = s.instance();
  ValuedDiagram<B> out;
  auto& sig = out.sig;
  auto& v = out.val;
  auto R = s.dual_zero(rng);
  auto S = s.zero(rng);
  auto dual = b.dual_letter(s.dualizable(rng, R, S));
  sig.add_zero("R");
  sig.add_zero("S");
  v.zero.emplace("R", R);
  v.zero.emplace("S", S);
  const std::vector<OneCellDecl> decls{{"A", "R", "R"}, {"M", "R", "S"}, {"Mstar", "S", "R"}, {"C", "S", "S"}};
  v.one.emplace("A", OneCell(s.letter(rng, R, R)));
  v.one.emplace("M", dual.M);
  v.one.emplace("Mstar", dual.Mdual);
  v.one.emplace("C", OneCell(s.letter(rng, S, S)));
  for (const auto& decl : decls) sig.add_one(decl);
  sig.add_generator({"eta", {}, {"M", "Mstar"}, "R", "R"});
  sig.add_generator({"ev", {"Mstar", "M"}, {}, "S", "S"});
  v.two.emplace("eta", dual.coev);
  v.two.emplace("ev", dual.ev);

  // Random closed walk from R.
  auto step = [&](const std::string& at) -> std::string {
    if (at == "R") return uniform(rng, 0, 1) ? "A" : "M";
    return uniform(rng, 0, 1) ? "C" : "Mstar";
  };
  CyclicWord top{{}, "R"};
  for (int tries = 0; tries < 8; ++tries) {
    std::vector<std::string> w;
    std::string at = "R";
    int len = uniform(rng, 0, 3);
    for (int i = 0; i < len || at != "R"; ++i) {
      if (static_cast<int>(w.size()) >= max_word) break;
      w.push_back(step(at));
      at = sig.one(w.back()).tgt;
    }
    if (at == "R") {
      top.letters = w;
      break;
    }
  }
  out.diagram.name = "random";
  out.diagram.top = top;

  int fresh = 0;
  auto new_box = [&](const std::vector<std::string>& dom, const std::string& src, int budget) -> Slot {
    const std::string tgt = dom.empty() ? src : sig.one(dom.back()).tgt;
    std::vector<std::vector<std::string>> cods{dom};
    for (const auto& decl : decls)
      if (decl.src == src && decl.tgt == tgt && 1 - static_cast<int>(dom.size()) <= budget) cods.push_back({decl.label});
    if (src == tgt) cods.push_back({});
    if (src == "R" && tgt == "R" && 2 - static_cast<int>(dom.size()) <= budget) cods.push_back({"M", "Mstar"});
    auto cod = cods[uniform(rng, 0, static_cast<int>(cods.size()) - 1)];
    OneCell dv = word_value(b, v, dom, src), cv = word_value(b, v, cod, src);
    auto f = s.map(rng, dv, cv);
    if (!f) {
      cod = dom;
      f = s.automorphism(rng, dv).first;
    }
    std::string name = "g" + std::to_string(++fresh);
    sig.add_generator({name, dom, cod, src, src == tgt ? src : tgt});
    v.two.emplace(name, *f);
    return Slot::box(name);
  };

  CyclicWord w = check_word(sig, top);
  const int layers = uniform(rng, 1, max_layers);
  for (int li = 0; li < layers; ++li) {
    const int n = static_cast<int>(w.letters.size());
    Layer l;
    if (n > 0 && uniform(rng, 0, 3) == 0) {
      l = Layer::rotation(uniform(rng, 0, n - 1));
    } else {
      std::vector<Slot> slots;
      int budget = max_word - n;
      int boxes = 0;
      std::string region = w.ambient;
      for (int i = 0; i <= n;) {
        if (region == "R" && budget >= 2 && boxes < 3 && uniform(rng, 0, 5) == 0) {
          slots.push_back(Slot::box("eta"));
          budget -= 2;
          ++boxes;
        }
        if (i == n) break;
        const int room = std::min(2, n - i);
        if (boxes < 3 && uniform(rng, 0, 2) == 0) {
          if (i + 1 < n && w.letters[i] == "Mstar" && w.letters[i + 1] == "M" && uniform(rng, 0, 1)) {
            slots.push_back(Slot::box("ev"));
            budget += 2;
            i += 2;
          } else {
            int len = uniform(rng, 0, room);
            std::vector<std::string> dom(w.letters.begin() + i, w.letters.begin() + i + len);
            Slot box = new_box(dom, region, budget);
            budget -= static_cast<int>(sig.generator(box.name).cod.size()) - len;
            slots.push_back(box);
            i += len;
            if (len == 0) {
              slots.push_back(Slot::wire(w.letters[i]));
              ++i;
            }
          }
          ++boxes;
        } else {
          slots.push_back(Slot::wire(w.letters[i]));
          ++i;
        }
        region = i == 0 ? w.ambient : sig.one(w.letters[i - 1]).tgt;
      }
      l = Layer::elementary(std::move(slots));
    }
    w = codomain_word(sig, l, w, li + 1);
    out.diagram.layers.push_back(std::move(l));
  }
  validate(sig, out.diagram);
  return out;
}

}  // namespace shadowtrace
