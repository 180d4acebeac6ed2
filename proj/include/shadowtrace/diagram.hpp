#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shadowtrace {

// Raised by validation and moves; `layer` is 1-based, 0 for the top word.
class DiagramError : public std::runtime_error {
 public:
  DiagramError(int layer, const std::string& what)
      : std::runtime_error(layer > 0 ? "layer " + std::to_string(layer) + ": " + what : what), layer_(layer) {}
  int layer() const { return layer_; }

 private:
  int layer_;
};

struct OneCellDecl {
  std::string label;
  std::string src, tgt;
  bool operator==(const OneCellDecl&) const = default;
};

// A box type. src/tgt are the regions left and right of the box; they are
// implied by dom/cod unless both are empty.
struct Generator {
  std::string name;
  std::vector<std::string> dom, cod;
  std::string src, tgt;
  bool operator==(const Generator&) const = default;
};

struct Signature {
  std::vector<std::string> zero_cells;
  std::map<std::string, OneCellDecl> one_cells;
  std::map<std::string, Generator> generators;

  bool has_zero(const std::string& z) const;
  const OneCellDecl& one(const std::string& label) const;
  const Generator& generator(const std::string& name) const;
  // Adds, rejecting re-declaration.
  void add_zero(const std::string& z);
  void add_one(const OneCellDecl& d);
  void add_generator(const Generator& g);
  bool operator==(const Signature&) const = default;
};

// Letters read clockwise from the cut. `ambient` is the region at the cut.
struct CyclicWord {
  std::vector<std::string> letters;
  std::string ambient;
  bool operator==(const CyclicWord&) const = default;
};

struct Slot {
  enum class Kind { Wire, Box };
  Kind kind = Kind::Wire;
  std::string name;  // 1-cell label or generator name

  static Slot wire(std::string label) { return {Kind::Wire, std::move(label)}; }
  static Slot box(std::string gen) { return {Kind::Box, std::move(gen)}; }
  bool is_box() const { return kind == Kind::Box; }
  bool operator==(const Slot&) const = default;
};

struct Layer {
  enum class Kind { Elementary, Rotation };
  Kind kind = Kind::Elementary;
  std::vector<Slot> slots;
  int k = 0;

  static Layer elementary(std::vector<Slot> slots) { return {Kind::Elementary, std::move(slots), 0}; }
  static Layer rotation(int k) { return {Kind::Rotation, {}, k}; }
  bool is_rotation() const { return kind == Kind::Rotation; }
  int box_count() const;
  bool operator==(const Layer&) const = default;
};

struct Diagram {
  std::string name;
  CyclicWord top;
  std::vector<Layer> layers;
  bool operator==(const Diagram& o) const { return top == o.top && layers == o.layers; }
};

// Checks that the word is cyclically composable and returns it with the
// ambient filled in for nonempty words.
CyclicWord check_word(const Signature& sig, const CyclicWord& w, int layer = 0);

// Slot domain / codomain as letter lists.
std::vector<std::string> slot_dom(const Signature& sig, const Slot& s);
std::vector<std::string> slot_cod(const Signature& sig, const Slot& s);

CyclicWord codomain_word(const Signature& sig, const Layer& l, const CyclicWord& w, int layer_index = 1);

// Boundary words (dom, cod). Throws DiagramError naming the failing layer.
std::pair<CyclicWord, CyclicWord> validate(const Signature& sig, const Diagram& d);

// Boundary word above each layer (size layers+1).
std::vector<CyclicWord> interfaces(const Signature& sig, const Diagram& d);

struct Move {
  enum class Kind { FuseRotations, DropZeroRotation, DropBoxFreeElementary, SplitElementary, MergeElementary,
                    ConjugateByRotation };
  Kind kind;
  int layer = 0;                // 0-based index of the (first) affected layer
  std::vector<bool> first;      // SplitElementary: boxes kept in the first layer
  int j = 0;                    // ConjugateByRotation: slots moved past the cut

  std::string describe() const;
};

Diagram apply_move(const Signature& sig, const Diagram& d, const Move& m);

// Every move applicable to d, in a fixed order.
std::vector<Move> applicable_moves(const Signature& sig, const Diagram& d);

// Whether layers i and i+1 can be merged into one elementary layer.
bool mergeable(const Signature& sig, const Diagram& d, int i);

// Fuse rotations, drop trivial layers, then merge elementary layers greedily
// (top-down, leftmost first) until nothing changes.
Diagram normalize(const Signature& sig, const Diagram& d);
// First phase only.
Diagram normalize_rotations(const Signature& sig, const Diagram& d);

// Moves after which normalize is known to return the same diagram: the
// rotation and drop moves, trivial conjugations, and splits or merges of a
// layer with no other elementary layer beside it after the first phase.
bool in_greedy_fragment(const Signature& sig, const Diagram& d, const Move& m);

std::string to_string(const CyclicWord& w);

}  // namespace shadowtrace
