#include "shadowtrace/diagram.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <set>

using namespace shadowtrace;

namespace {

Signature abc() {
  Signature sig;
  sig.add_zero("X");
  for (auto l : {"A", "B", "C", "D"}) sig.add_one({l, "X", "X"});
  sig.add_generator({"g", {"B", "C"}, {"D"}});
  return sig;
}

Signature duality() {
  Signature sig;
  sig.add_zero("R");
  sig.add_zero("S");
  sig.add_one({"M", "R", "S"});
  sig.add_one({"Mstar", "S", "R"});
  sig.add_one({"N", "S", "R"});
  sig.add_generator({"eta", {}, {"M", "Mstar"}, "R", "R"});
  return sig;
}

// Left rotation by k, computed by index.
std::vector<std::string> rotated(const std::vector<std::string>& w, int k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back(w[(i + k) % w.size()]);
  return out;
}

}  // namespace

TEST(Diagram, EmptyDiagramOverRegion) {
  auto sig = duality();
  Diagram d{"empty", {{}, "R"}, {}};
  auto [dom, cod] = validate(sig, d);
  EXPECT_EQ(dom, (CyclicWord{{}, "R"}));
  EXPECT_EQ(cod, (CyclicWord{{}, "R"}));
}

TEST(Diagram, SingleRotationSwapsTwoLetters) {
  auto sig = duality();
  Diagram d{"rot", {{"M", "N"}, "R"}, {Layer::rotation(1)}};
  auto [dom, cod] = validate(sig, d);
  EXPECT_EQ(dom.letters, (std::vector<std::string>{"M", "N"}));
  EXPECT_EQ(cod.letters, (std::vector<std::string>{"N", "M"}));
  EXPECT_EQ(cod.ambient, "S");
}

TEST(Diagram, CoevaluationLayerShape) {
  auto sig = duality();
  Diagram d{"eta", {{}, "R"}, {Layer::elementary({Slot::box("eta")})}};
  auto [dom, cod] = validate(sig, d);
  EXPECT_TRUE(dom.letters.empty());
  EXPECT_EQ(cod.letters, (std::vector<std::string>{"M", "Mstar"}));
}

TEST(Diagram, CodomainWord) {
  auto sig = abc();
  CyclicWord w{{"A", "B", "C"}, "X"};
  EXPECT_EQ(codomain_word(sig, Layer::rotation(0), w), w);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(codomain_word(sig, Layer::rotation(k), w).letters, rotated(w.letters, k));
  EXPECT_EQ(codomain_word(sig, Layer::rotation(2), w).letters, (std::vector<std::string>{"C", "A", "B"}));
  auto l = Layer::elementary({Slot::wire("A"), Slot::box("g")});
  EXPECT_EQ(codomain_word(sig, l, w).letters, (std::vector<std::string>{"A", "D"}));
}

TEST(Diagram, ErrorsNameTheLayer) {
  auto sig = abc();
  Diagram d{"bad", {{"A", "B", "C", "D"}, "X"}, {Layer::rotation(1), Layer::rotation(1), Layer::rotation(5)}};
  try {
    validate(sig, d);
    FAIL() << "expected a diagram error";
  } catch (const DiagramError& e) {
    EXPECT_EQ(e.layer(), 3);
    EXPECT_STREQ(e.what(), "layer 3: rotation 5 ≥ word length 4");
  }
  Diagram mismatch{"bad", {{"A", "C"}, "X"}, {Layer::elementary({Slot::wire("A"), Slot::box("g")})}};
  EXPECT_THROW(validate(sig, mismatch), DiagramError);
  Diagram nonzero{"bad", {{}, "X"}, {Layer::rotation(1)}};
  EXPECT_THROW(validate(sig, nonzero), DiagramError);
}

TEST(Diagram, CutNeverOnAWire) {
  // M starts in R, so a word whose cut region is S cannot start with it.
  auto sig = duality();
  Diagram d{"bad", {{"M", "N"}, "S"}, {}};
  EXPECT_THROW(validate(sig, d), DiagramError);
}

TEST(Diagram, FuseRotationsModuloLength) {
  auto sig = abc();
  Diagram d{"r", {{"A", "B", "C"}, "X"}, {Layer::rotation(1), Layer::rotation(2)}};
  auto e = apply_move(sig, d, {Move::Kind::FuseRotations, 0});
  ASSERT_EQ(e.layers.size(), 1u);
  EXPECT_EQ(e.layers[0], Layer::rotation(0));
}

TEST(Diagram, RotationGroupLaw) {
  auto sig = abc();
  CyclicWord w{{"A", "B", "C", "D"}, "X"};
  for (int k = 0; k < 4; ++k)
    for (int m = 0; m < 4; ++m) {
      auto two = codomain_word(sig, Layer::rotation(m), codomain_word(sig, Layer::rotation(k), w));
      EXPECT_EQ(two, codomain_word(sig, Layer::rotation((k + m) % 4), w));
    }
}

TEST(Diagram, SplitTwoBoxLayer) {
  auto sig = abc();
  sig.add_generator({"h", {"A"}, {"B"}});
  Diagram d{"s", {{"A", "B", "C"}, "X"}, {Layer::elementary({Slot::box("h"), Slot::box("g")})}};
  Move m{Move::Kind::SplitElementary, 0};
  m.first = {true, false};
  auto e = apply_move(sig, d, m);
  ASSERT_EQ(e.layers.size(), 2u);
  EXPECT_EQ(e.layers[0], Layer::elementary({Slot::box("h"), Slot::wire("B"), Slot::wire("C")}));
  EXPECT_EQ(e.layers[1], Layer::elementary({Slot::wire("B"), Slot::box("g")}));
  auto back = apply_move(sig, e, {Move::Kind::MergeElementary, 0});
  EXPECT_EQ(back, d);
}

TEST(Diagram, FullConjugationIsTrivial) {
  auto sig = abc();
  Diagram d{"c", {{"A", "B", "C"}, "X"}, {Layer::elementary({Slot::wire("A"), Slot::box("g")})}};
  Move m{Move::Kind::ConjugateByRotation, 0};
  m.j = 2;
  auto e = apply_move(sig, d, m);
  ASSERT_EQ(e.layers.size(), 3u);
  EXPECT_EQ(e.layers[0], Layer::rotation(0));
  EXPECT_EQ(e.layers[1], d.layers[0]);
  EXPECT_EQ(e.layers[2], Layer::rotation(0));
  EXPECT_EQ(normalize(sig, e), normalize(sig, d));
}

TEST(Diagram, ConjugationRotatesSlots) {
  auto sig = abc();
  Diagram d{"c", {{"A", "B", "C"}, "X"}, {Layer::elementary({Slot::wire("A"), Slot::box("g")})}};
  Move m{Move::Kind::ConjugateByRotation, 0};
  m.j = 1;
  auto e = apply_move(sig, d, m);
  ASSERT_EQ(e.layers.size(), 3u);
  EXPECT_EQ(e.layers[0], Layer::rotation(1));
  EXPECT_EQ(e.layers[1], Layer::elementary({Slot::box("g"), Slot::wire("A")}));
  EXPECT_EQ(e.layers[2], Layer::rotation(1));
  EXPECT_EQ(validate(sig, e), validate(sig, d));
}

TEST(Diagram, NormalizeDropsZeroRotations) {
  auto sig = abc();
  Diagram d{"z", {{"A"}, "X"}, {Layer::rotation(0), Layer::rotation(0)}};
  EXPECT_TRUE(normalize(sig, d).layers.empty());
}

TEST(Diagram, MergeRefusesOverlap) {
  auto sig = abc();
  sig.add_generator({"h", {"D"}, {"B", "C"}});
  Diagram d{"m", {{"A", "B", "C"}, "X"},
            {Layer::elementary({Slot::wire("A"), Slot::box("g")}), Layer::elementary({Slot::wire("A"), Slot::box("h")})}};
  EXPECT_FALSE(mergeable(sig, d, 0));
  EXPECT_THROW(apply_move(sig, d, {Move::Kind::MergeElementary, 0}), DiagramError);
  EXPECT_EQ(normalize(sig, d), normalize_rotations(sig, d));
}

TEST(Diagram, EmptyIntervalsMergeOnlyAtEdges) {
  auto sig = duality();
  sig.add_generator({"u", {"M"}, {"M"}});
  // eta sits at the gap before M: it is not strictly inside u's interval.
  Diagram d{"e", {{"M", "N"}, "R"},
            {Layer::elementary({Slot::box("u"), Slot::wire("N")}),
             Layer::elementary({Slot::wire("M"), Slot::wire("N"), Slot::box("eta")})}};
  ASSERT_TRUE(mergeable(sig, d, 0));
  auto e = apply_move(sig, d, {Move::Kind::MergeElementary, 0});
  EXPECT_EQ(e.layers[0], Layer::elementary({Slot::box("u"), Slot::wire("N"), Slot::box("eta")}));
}

// Exhaustive enumeration of small diagrams over one region: every move keeps
// the boundary, normalize is idempotent, and moves inside the greedy fragment
// do not change the normal form.
TEST(Diagram, SmallDiagramEnumeration) {
  Signature sig;
  sig.add_zero("X");
  sig.add_one({"A", "X", "X"});
  sig.add_one({"B", "X", "X"});
  sig.add_generator({"f", {"A"}, {"B"}});
  sig.add_generator({"m", {"A", "B"}, {"A"}});
  sig.add_generator({"u", {}, {"A"}, "X", "X"});
  sig.add_generator({"c", {"B"}, {}});

  // Elementary layers on w with at most `boxes` boxes and at most one
  // empty-domain box per gap.
  std::function<void(const std::vector<std::string>&, std::size_t, int, bool, std::vector<Slot>&,
                     std::vector<Layer>&)>
      layers_on = [&](const std::vector<std::string>& w, std::size_t i, int boxes, bool gap_used,
                      std::vector<Slot>& acc, std::vector<Layer>& out) {
        if (i == w.size()) out.push_back(Layer::elementary(acc));
        if (boxes > 0 && !gap_used) {
          acc.push_back(Slot::box("u"));
          layers_on(w, i, boxes - 1, true, acc, out);
          acc.pop_back();
        }
        if (i == w.size()) return;
        acc.push_back(Slot::wire(w[i]));
        layers_on(w, i + 1, boxes, false, acc, out);
        acc.pop_back();
        if (boxes == 0) return;
        for (const auto& [name, g] : sig.generators) {
          if (g.dom.empty() || i + g.dom.size() > w.size()) continue;
          if (!std::equal(g.dom.begin(), g.dom.end(), w.begin() + i)) continue;
          acc.push_back(Slot::box(name));
          layers_on(w, i + g.dom.size(), boxes - 1, false, acc, out);
          acc.pop_back();
        }
      };

  std::vector<Diagram> all;
  std::function<void(Diagram&, const CyclicWord&, int)> grow = [&](Diagram& d, const CyclicWord& w, int boxes) {
    all.push_back(d);
    if (d.layers.size() == 3) return;
    const int n = static_cast<int>(w.letters.size());
    for (int k = 0; k < std::max(n, 1); ++k) {
      d.layers.push_back(Layer::rotation(k));
      grow(d, codomain_word(sig, d.layers.back(), w), boxes);
      d.layers.pop_back();
    }
    std::vector<Layer> ls;
    std::vector<Slot> acc;
    layers_on(w.letters, 0, boxes, false, acc, ls);
    for (const auto& l : ls) {
      auto c = codomain_word(sig, l, w);
      if (c.letters.size() > 3) continue;
      d.layers.push_back(l);
      grow(d, c, boxes - l.box_count());
      d.layers.pop_back();
    }
  };
  for (const auto& top : std::vector<std::vector<std::string>>{{}, {"A"}, {"B"}, {"A", "B"}, {"B", "A"}, {"A", "A"}}) {
    Diagram d{"d", {top, "X"}, {}};
    grow(d, check_word(sig, d.top), 2);
  }
  ASSERT_GT(all.size(), 1000u);

  std::size_t fragment = 0;
  for (const auto& d : all) {
    auto ends = validate(sig, d);
    auto nf = normalize(sig, d);
    ASSERT_EQ(normalize(sig, nf), nf);
    ASSERT_EQ(validate(sig, nf), ends);
    for (const auto& m : applicable_moves(sig, d)) {
      auto e = apply_move(sig, d, m);
      ASSERT_EQ(validate(sig, e), ends) << m.describe();
      if (in_greedy_fragment(sig, d, m)) {
        ++fragment;
        ASSERT_EQ(normalize(sig, e), nf) << m.describe();
      }
    }
  }
  EXPECT_GT(fragment, 1000u);
}
