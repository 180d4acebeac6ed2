#include "shadowtrace/diagram.hpp"

#include <algorithm>
#include <numeric>

namespace shadowtrace {

bool Signature::has_zero(const std::string& z) const {
  return std::find(zero_cells.begin(), zero_cells.end(), z) != zero_cells.end();
}

const OneCellDecl& Signature::one(const std::string& label) const {
  auto it = one_cells.find(label);
  if (it == one_cells.end()) throw DiagramError(0, "unknown 1-cell '" + label + "'");
  return it->second;
}

const Generator& Signature::generator(const std::string& name) const {
  auto it = generators.find(name);
  if (it == generators.end()) throw DiagramError(0, "unknown generator '" + name + "'");
  return it->second;
}

void Signature::add_zero(const std::string& z) {
  if (has_zero(z)) throw DiagramError(0, "0-cell '" + z + "' declared twice");
  zero_cells.push_back(z);
}

void Signature::add_one(const OneCellDecl& d) {
  if (!has_zero(d.src) || !has_zero(d.tgt))
    throw DiagramError(0, "1-cell '" + d.label + "' has an undeclared endpoint");
  if (!one_cells.emplace(d.label, d).second) throw DiagramError(0, "1-cell '" + d.label + "' declared twice");
}

namespace {

// Endpoints of a linear word, or nullopt if it is not composable.
std::optional<std::pair<std::string, std::string>> word_ends(const Signature& sig, const std::vector<std::string>& w) {
  if (w.empty()) return std::nullopt;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (sig.one(w[i]).tgt != sig.one(w[i + 1]).src) return std::nullopt;
  return std::make_pair(sig.one(w.front()).src, sig.one(w.back()).tgt);
}

std::string join(const std::vector<std::string>& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + w[i];
  return s + "]";
}

}  // namespace

void Signature::add_generator(const Generator& g0) {
  Generator g = g0;
  auto check = [&](const std::vector<std::string>& w, const char* side) {
    for (const auto& l : w)
      if (!one_cells.count(l)) throw DiagramError(0, "generator '" + g.name + "': unknown 1-cell '" + l + "'");
    auto ends = word_ends(*this, w);
    if (!w.empty() && !ends) throw DiagramError(0, "generator '" + g.name + "': " + side + " is not composable");
    return ends;
  };
  auto d = check(g.dom, "domain"), c = check(g.cod, "codomain");
  if (d && c && *d != *c) throw DiagramError(0, "generator '" + g.name + "': domain and codomain have different endpoints");
  auto ends = d ? d : c;
  if (ends) {
    if ((!g.src.empty() && g.src != ends->first) || (!g.tgt.empty() && g.tgt != ends->second))
      throw DiagramError(0, "generator '" + g.name + "': declared regions disagree with its boundary");
    g.src = ends->first;
    g.tgt = ends->second;
  } else if (g.src.empty() || g.tgt.empty()) {
    throw DiagramError(0, "generator '" + g.name + "': empty boundary needs explicit regions");
  } else if (g.src != g.tgt) {
    throw DiagramError(0, "generator '" + g.name + "': empty boundary needs equal regions");
  }
  if (!has_zero(g.src) || !has_zero(g.tgt)) throw DiagramError(0, "generator '" + g.name + "': undeclared region");
  if (!generators.emplace(g.name, g).second) throw DiagramError(0, "generator '" + g.name + "' declared twice");
}

int Layer::box_count() const {
  return static_cast<int>(std::count_if(slots.begin(), slots.end(), [](const Slot& s) { return s.is_box(); }));
}

std::string to_string(const CyclicWord& w) {
  return w.letters.empty() ? "[]@" + w.ambient : join(w.letters);
}

CyclicWord check_word(const Signature& sig, const CyclicWord& w, int layer) {
  CyclicWord out = w;
  if (w.letters.empty()) {
    if (!sig.has_zero(w.ambient)) throw DiagramError(layer, "unknown ambient 0-cell '" + w.ambient + "'");
    return out;
  }
  const std::size_t n = w.letters.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = sig.one(w.letters[i]);
    const auto& b = sig.one(w.letters[(i + 1) % n]);
    if (a.tgt != b.src)
      throw DiagramError(layer, "word " + join(w.letters) + " is not cyclically composable at '" + a.label + "'");
  }
  out.ambient = sig.one(w.letters.front()).src;
  if (!w.ambient.empty() && w.ambient != out.ambient)
    throw DiagramError(layer, "ambient '" + w.ambient + "' differs from the region at the cut '" + out.ambient + "'");
  return out;
}

std::vector<std::string> slot_dom(const Signature& sig, const Slot& s) {
  return s.is_box() ? sig.generator(s.name).dom : std::vector<std::string>{sig.one(s.name).label};
}

std::vector<std::string> slot_cod(const Signature& sig, const Slot& s) {
  return s.is_box() ? sig.generator(s.name).cod : std::vector<std::string>{sig.one(s.name).label};
}

namespace {

std::pair<std::string, std::string> slot_regions(const Signature& sig, const Slot& s) {
  if (s.is_box()) {
    const auto& g = sig.generator(s.name);
    return {g.src, g.tgt};
  }
  const auto& o = sig.one(s.name);
  return {o.src, o.tgt};
}

std::vector<Slot> wires(const std::vector<std::string>& letters) {
  std::vector<Slot> out;
  for (const auto& l : letters) out.push_back(Slot::wire(l));
  return out;
}

}  // namespace

CyclicWord codomain_word(const Signature& sig, const Layer& l, const CyclicWord& w0, int layer) {
  CyclicWord w = check_word(sig, w0, layer);
  const int n = static_cast<int>(w.letters.size());
  if (l.is_rotation()) {
    if (l.k < 0 || (n == 0 ? l.k != 0 : l.k >= n))
      throw DiagramError(layer, "rotation " + std::to_string(l.k) + " ≥ word length " + std::to_string(n));
    CyclicWord out;
    out.letters = w.letters;
    std::rotate(out.letters.begin(), out.letters.begin() + l.k, out.letters.end());
    out.ambient = n ? sig.one(out.letters.front()).src : w.ambient;
    return out;
  }
  std::vector<std::string> dom, cod;
  std::string region = w.ambient;
  for (std::size_t i = 0; i < l.slots.size(); ++i) {
    const Slot& s = l.slots[i];
    std::pair<std::string, std::string> regions;
    try {
      regions = slot_regions(sig, s);
    } catch (const DiagramError& e) {
      if (e.layer() != 0) throw;
      throw DiagramError(layer, e.what());
    }
    auto [src, tgt] = regions;
    if (src != region)
      throw DiagramError(layer, "slot " + std::to_string(i + 1) + " '" + s.name + "' starts in region '" + src +
                                    "', expected '" + region + "'");
    region = tgt;
    auto d = slot_dom(sig, s), c = slot_cod(sig, s);
    dom.insert(dom.end(), d.begin(), d.end());
    cod.insert(cod.end(), c.begin(), c.end());
  }
  if (region != w.ambient)
    throw DiagramError(layer, "slots end in region '" + region + "', not back at '" + w.ambient + "'");
  if (dom != w.letters)
    throw DiagramError(layer, "slot domains " + join(dom) + " do not match the incoming word " + join(w.letters));
  return CyclicWord{cod, w.ambient};
}

std::vector<CyclicWord> interfaces(const Signature& sig, const Diagram& d) {
  std::vector<CyclicWord> out{check_word(sig, d.top, 0)};
  for (std::size_t i = 0; i < d.layers.size(); ++i)
    out.push_back(codomain_word(sig, d.layers[i], out.back(), static_cast<int>(i + 1)));
  return out;
}

std::pair<CyclicWord, CyclicWord> validate(const Signature& sig, const Diagram& d) {
  auto w = interfaces(sig, d);
  return {w.front(), w.back()};
}

std::string Move::describe() const {
  std::string at = " at layer " + std::to_string(layer + 1);
  switch (kind) {
    case Kind::FuseRotations: return "fuse-rotations" + at;
    case Kind::DropZeroRotation: return "drop-zero-rotation" + at;
    case Kind::DropBoxFreeElementary: return "drop-box-free" + at;
    case Kind::SplitElementary: {
      std::string m;
      for (bool b : first) m += b ? '1' : '0';
      return "split" + at + " mask " + m;
    }
    case Kind::MergeElementary: return "merge" + at;
    case Kind::ConjugateByRotation: return "conjugate" + at + " j=" + std::to_string(j);
  }
  return "?";
}

namespace {

struct Span1 {
  int begin, end;  // positions in the middle word
  bool from_top;   // box of the upper layer
  std::size_t slot;
};

// Intervals that the boxes of two stacked layers occupy in the word between them.
std::vector<Span1> box_intervals(const Signature& sig, const Layer& top, const Layer& bottom) {
  std::vector<Span1> out;
  int pos = 0;
  for (std::size_t i = 0; i < top.slots.size(); ++i) {
    int len = static_cast<int>(slot_cod(sig, top.slots[i]).size());
    if (top.slots[i].is_box()) out.push_back({pos, pos + len, true, i});
    pos += len;
  }
  pos = 0;
  for (std::size_t i = 0; i < bottom.slots.size(); ++i) {
    int len = static_cast<int>(slot_dom(sig, bottom.slots[i]).size());
    if (bottom.slots[i].is_box()) out.push_back({pos, pos + len, false, i});
    pos += len;
  }
  return out;
}

bool conflict(const Span1& a, const Span1& b) {
  auto empty_inside = [](const Span1& e, const Span1& x) { return e.begin == e.end && x.begin < e.begin && e.begin < x.end; };
  if (a.begin == a.end || b.begin == b.end) return empty_inside(a, b) || empty_inside(b, a);
  return a.begin < b.end && b.begin < a.end;
}

std::optional<Layer> merge_layers(const Signature& sig, const Layer& top, const Layer& bottom, const CyclicWord& mid) {
  if (top.is_rotation() || bottom.is_rotation()) return std::nullopt;
  auto iv = box_intervals(sig, top, bottom);
  for (std::size_t a = 0; a < iv.size(); ++a)
    for (std::size_t b = a + 1; b < iv.size(); ++b)
      if (iv[a].from_top != iv[b].from_top && conflict(iv[a], iv[b])) return std::nullopt;
  const int n = static_cast<int>(mid.letters.size());
  std::vector<Slot> slots;
  int g = 0;
  while (g <= n) {
    for (bool upper : {true, false})
      for (const auto& s : iv)
        if (s.from_top == upper && s.begin == g && s.end == g)
          slots.push_back((upper ? top : bottom).slots[s.slot]);
    if (g == n) break;
    auto it = std::find_if(iv.begin(), iv.end(), [&](const Span1& s) { return s.begin == g && s.end > g; });
    if (it != iv.end()) {
      slots.push_back((it->from_top ? top : bottom).slots[it->slot]);
      g = it->end;
    } else {
      slots.push_back(Slot::wire(mid.letters[g]));
      ++g;
    }
  }
  return Layer::elementary(std::move(slots));
}

std::pair<Layer, Layer> split_layer(const Signature& sig, const Layer& l, const std::vector<bool>& first) {
  std::vector<Slot> a, b;
  std::size_t box = 0;
  for (const auto& s : l.slots) {
    if (!s.is_box()) {
      a.push_back(s);
      b.push_back(s);
      continue;
    }
    bool up = first[box++];
    auto w = up ? wires(slot_cod(sig, s)) : wires(slot_dom(sig, s));
    std::vector<Slot> upper = up ? std::vector<Slot>{s} : w, lower = up ? w : std::vector<Slot>{s};
    a.insert(a.end(), upper.begin(), upper.end());
    b.insert(b.end(), lower.begin(), lower.end());
  }
  return {Layer::elementary(std::move(a)), Layer::elementary(std::move(b))};
}

[[noreturn]] void inapplicable(const Move& m, const std::string& why) {
  throw DiagramError(m.layer + 1, "move " + m.describe() + " is not applicable: " + why);
}

}  // namespace

bool mergeable(const Signature& sig, const Diagram& d, int i) {
  if (i < 0 || i + 1 >= static_cast<int>(d.layers.size())) return false;
  auto w = interfaces(sig, d);
  return merge_layers(sig, d.layers[i], d.layers[i + 1], w[i + 1]).has_value();
}

Diagram apply_move(const Signature& sig, const Diagram& d, const Move& m) {
  auto w = interfaces(sig, d);
  const int nl = static_cast<int>(d.layers.size());
  if (m.layer < 0 || m.layer >= nl) inapplicable(m, "no such layer");
  Diagram out = d;
  auto& L = out.layers;
  const Layer& l = d.layers[m.layer];
  const int n = static_cast<int>(w[m.layer].letters.size());
  switch (m.kind) {
    case Move::Kind::FuseRotations: {
      if (m.layer + 1 >= nl || !l.is_rotation() || !d.layers[m.layer + 1].is_rotation())
        inapplicable(m, "needs two adjacent rotations");
      int k = n ? (l.k + d.layers[m.layer + 1].k) % n : 0;
      L[m.layer] = Layer::rotation(k);
      L.erase(L.begin() + m.layer + 1);
      break;
    }
    case Move::Kind::DropZeroRotation:
      if (!l.is_rotation() || l.k != 0) inapplicable(m, "not a zero rotation");
      L.erase(L.begin() + m.layer);
      break;
    case Move::Kind::DropBoxFreeElementary:
      if (l.is_rotation() || l.box_count() != 0) inapplicable(m, "layer has boxes");
      L.erase(L.begin() + m.layer);
      break;
    case Move::Kind::SplitElementary: {
      if (l.is_rotation()) inapplicable(m, "not an elementary layer");
      if (static_cast<int>(m.first.size()) != l.box_count()) inapplicable(m, "mask size differs from box count");
      auto [a, b] = split_layer(sig, l, m.first);
      L[m.layer] = a;
      L.insert(L.begin() + m.layer + 1, b);
      break;
    }
    case Move::Kind::MergeElementary: {
      if (m.layer + 1 >= nl) inapplicable(m, "no layer below");
      auto merged = merge_layers(sig, l, d.layers[m.layer + 1], w[m.layer + 1]);
      if (!merged) inapplicable(m, "box intervals overlap");
      L[m.layer] = *merged;
      L.erase(L.begin() + m.layer + 1);
      break;
    }
    case Move::Kind::ConjugateByRotation: {
      if (l.is_rotation()) inapplicable(m, "not an elementary layer");
      const int ns = static_cast<int>(l.slots.size());
      if (m.j < 0 || m.j > ns) inapplicable(m, "slot offset out of range");
      int k = 0, kc = 0;
      for (int s = 0; s < m.j; ++s) {
        k += static_cast<int>(slot_dom(sig, l.slots[s]).size());
        kc += static_cast<int>(slot_cod(sig, l.slots[s]).size());
      }
      const int nc = static_cast<int>(w[m.layer + 1].letters.size());
      std::vector<Slot> rot = l.slots;
      std::rotate(rot.begin(), rot.begin() + m.j, rot.end());
      L[m.layer] = Layer::rotation(n ? k % n : 0);
      L.insert(L.begin() + m.layer + 1, Layer::elementary(std::move(rot)));
      L.insert(L.begin() + m.layer + 2, Layer::rotation(nc ? (nc - kc) % nc : 0));
      break;
    }
  }
  validate(sig, out);
  return out;
}

std::vector<Move> applicable_moves(const Signature& sig, const Diagram& d) {
  auto w = interfaces(sig, d);
  std::vector<Move> out;
  const int nl = static_cast<int>(d.layers.size());
  for (int i = 0; i < nl; ++i) {
    const Layer& l = d.layers[i];
    if (l.is_rotation()) {
      if (i + 1 < nl && d.layers[i + 1].is_rotation()) out.push_back({Move::Kind::FuseRotations, i});
      if (l.k == 0) out.push_back({Move::Kind::DropZeroRotation, i});
      continue;
    }
    const int b = l.box_count();
    if (b == 0) out.push_back({Move::Kind::DropBoxFreeElementary, i});
    if (b <= 6)
      for (int mask = 0; mask < (1 << b); ++mask) {
        Move m{Move::Kind::SplitElementary, i};
        for (int k = 0; k < b; ++k) m.first.push_back((mask >> k) & 1);
        out.push_back(std::move(m));
      }
    if (i + 1 < nl && merge_layers(sig, l, d.layers[i + 1], w[i + 1])) out.push_back({Move::Kind::MergeElementary, i});
    for (int j = 0; j <= static_cast<int>(l.slots.size()); ++j) {
      Move m{Move::Kind::ConjugateByRotation, i};
      m.j = j;
      out.push_back(std::move(m));
    }
  }
  return out;
}

namespace {

// Phase one of normalize; origin[i] is the input index of output layer i.
Diagram phase_one(const Signature& sig, const Diagram& d, std::vector<int>* origin) {
  auto w = interfaces(sig, d);
  Diagram out = d;
  out.layers.clear();
  std::vector<int> from;
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    const Layer& l = d.layers[i];
    if (!l.is_rotation()) {
      if (l.box_count() > 0) {
        out.layers.push_back(l);
        from.push_back(static_cast<int>(i));
      }
      continue;
    }
    const int n = static_cast<int>(w[i].letters.size());
    if (!out.layers.empty() && out.layers.back().is_rotation()) {
      int k = n ? (out.layers.back().k + l.k) % n : 0;
      out.layers.back().k = k;
      if (k == 0) {
        out.layers.pop_back();
        from.pop_back();
      }
    } else if (l.k != 0) {
      out.layers.push_back(l);
      from.push_back(static_cast<int>(i));
    }
  }
  if (origin) *origin = std::move(from);
  return out;
}

// Position of input layer i among the phase-one layers, if it survives.
std::optional<int> survivor(const std::vector<int>& origin, int i) {
  auto it = std::find(origin.begin(), origin.end(), i);
  if (it == origin.end()) return std::nullopt;
  return static_cast<int>(it - origin.begin());
}

bool elementary_at(const Diagram& d, int i) {
  return i >= 0 && i < static_cast<int>(d.layers.size()) && !d.layers[i].is_rotation();
}

}  // namespace

Diagram normalize_rotations(const Signature& sig, const Diagram& d) { return phase_one(sig, d, nullptr); }

bool in_greedy_fragment(const Signature& sig, const Diagram& d, const Move& m) {
  switch (m.kind) {
    case Move::Kind::FuseRotations:
    case Move::Kind::DropZeroRotation:
    case Move::Kind::DropBoxFreeElementary:
      return true;
    case Move::Kind::ConjugateByRotation:
      return m.j == 0 || m.j == static_cast<int>(d.layers[m.layer].slots.size());
    case Move::Kind::SplitElementary:
    case Move::Kind::MergeElementary:
      break;
  }
  auto w = interfaces(sig, d);
  std::vector<int> origin;
  Diagram p = phase_one(sig, d, &origin);
  if (m.kind == Move::Kind::SplitElementary) {
    const Layer& l = d.layers[m.layer];
    auto [a, b] = split_layer(sig, l, m.first);
    if (a.box_count() == 0 || b.box_count() == 0) return true;
    auto mid = codomain_word(sig, a, w[m.layer]);
    auto back = merge_layers(sig, a, b, mid);
    auto at = survivor(origin, m.layer);
    return back && *back == l && at && !elementary_at(p, *at - 1) && !elementary_at(p, *at + 1);
  }
  const Layer& a = d.layers[m.layer];
  const Layer& b = d.layers[m.layer + 1];
  if (a.box_count() == 0 || b.box_count() == 0) return true;
  auto at = survivor(origin, m.layer);
  return at && !elementary_at(p, *at - 1) && !elementary_at(p, *at + 2);
}

Diagram normalize(const Signature& sig, const Diagram& d) {
  Diagram out = normalize_rotations(sig, d);
  for (bool changed = true; changed;) {
    changed = false;
    auto w = interfaces(sig, out);
    for (std::size_t i = 0; i + 1 < out.layers.size(); ++i) {
      if (auto merged = merge_layers(sig, out.layers[i], out.layers[i + 1], w[i + 1])) {
        out.layers[i] = *merged;
        out.layers.erase(out.layers.begin() + i + 1);
        changed = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace shadowtrace
