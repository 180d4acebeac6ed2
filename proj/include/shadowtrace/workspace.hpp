#pragma once

#include "shadowtrace/diagram.hpp"
#include "shadowtrace/laws.hpp"
#include "shadowtrace/scalar.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace shadowtrace {

struct SourceLoc {
  std::string file;
  int line = 0;
};

// "file:line: layer k: message"; the layer part is left out when layer = 0.
class WorkspaceError : public std::runtime_error {
 public:
  WorkspaceError(SourceLoc loc, int layer, const std::string& what);
  const SourceLoc& loc() const { return loc_; }
  int layer() const { return layer_; }

 private:
  SourceLoc loc_;
  int layer_;
};

using RationalRows = std::vector<std::vector<Rational>>;

// Entry of a group-ring matrix as written: (coefficient, element name) terms.
using GRTerms = std::vector<std::pair<Rational, std::string>>;
using GRRows = std::vector<std::vector<GRTerms>>;

struct SetValue {
  int size = 0;
  bool operator==(const SetValue&) const = default;
};
struct GroupValue {
  std::string group;  // 1, Z<n> or S3
  bool operator==(const GroupValue&) const = default;
};
struct RanksValue {
  std::vector<std::vector<int>> ranks;
  bool operator==(const RanksValue&) const = default;
};
struct SpanValue {
  std::vector<int> left, right;
  bool operator==(const SpanValue&) const = default;
};
struct BlocksValue {
  std::vector<RationalRows> blocks;
  bool operator==(const BlocksValue&) const = default;
};
struct ApexMapValue {
  std::vector<int> map;
  bool operator==(const ApexMapValue&) const = default;
};
struct BimoduleValue {
  enum class Kind { Free, Twisted, Regular, General };
  Kind kind = Kind::Free;
  int rank = 0;
  std::vector<int> psi;          // Twisted
  std::vector<GRRows> action;    // General: λ(g) for each element of the source group
  bool operator==(const BimoduleValue&) const = default;
};
struct GRMatrixValue {
  GRRows matrix;
  bool operator==(const GRMatrixValue&) const = default;
};

using CellValue =
    std::variant<SetValue, GroupValue, RanksValue, SpanValue, BlocksValue, ApexMapValue, BimoduleValue, GRMatrixValue>;

struct Assignment {
  std::string label;
  CellValue value;
  SourceLoc loc;
  bool operator==(const Assignment& o) const { return label == o.label && value == o.value; }
};

struct DiagramEntry {
  Diagram diagram;
  SourceLoc loc;
  int top_line = 0;
  std::vector<int> layer_lines;
  bool operator==(const DiagramEntry& o) const { return diagram.name == o.diagram.name && diagram == o.diagram; }
};

// Chain complex of free right KG-modules with a ψ-semilinear chain map.
struct ComplexEntry {
  std::string name;
  std::string group;
  Ring ring = Ring::Z;
  std::vector<int> psi;  // empty: the identity
  std::vector<int> ranks;
  std::vector<GRRows> boundary;   // ∂_1 .. ∂_top
  std::vector<GRRows> chain_map;  // F_0 .. F_top
  SourceLoc loc;
  bool operator==(const ComplexEntry& o) const {
    return name == o.name && group == o.group && ring == o.ring && psi == o.psi && ranks == o.ranks &&
           boundary == o.boundary && chain_map == o.chain_map;
  }
};

// A square matrix over KG, ψ-semilinear when psi is given.
struct EndomorphismEntry {
  std::string name;
  std::string group;
  Ring ring = Ring::Z;
  std::vector<int> psi;
  GRRows matrix;
  SourceLoc loc;
  bool operator==(const EndomorphismEntry& o) const {
    return name == o.name && group == o.group && ring == o.ring && psi == o.psi && matrix == o.matrix;
  }
};

// A trace, Euler characteristic or transfer request on valued cells.
struct TraceEntry {
  enum class Kind { Trace, Euler, Transfer };
  Kind kind = Kind::Trace;
  std::string name;
  std::string map;                 // generator name; unused for Euler
  std::vector<std::string> dual;   // 1-cell labels forming M
  std::string region;              // source of M when the word is empty
  SourceLoc loc;
  bool operator==(const TraceEntry& o) const {
    return kind == o.kind && name == o.name && map == o.map && dual == o.dual && region == o.region;
  }
};

struct Workspace {
  std::optional<InstanceId> instance;
  Signature sig;
  std::vector<DiagramEntry> diagrams;
  std::vector<Assignment> valuation;
  std::vector<ComplexEntry> complexes;
  std::vector<EndomorphismEntry> endomorphisms;
  std::vector<TraceEntry> traces;
  // Declaration line of each 0-cell, 1-cell and generator.
  std::map<std::string, SourceLoc> declared_at;
  SourceLoc instance_loc;

  const DiagramEntry& diagram(const std::string& name) const;
  const ComplexEntry& complex(const std::string& name) const;
  const EndomorphismEntry& endomorphism(const std::string& name) const;
  const TraceEntry& trace(const std::string& name) const;
  const Assignment* find_value(const std::string& label) const;

  bool operator==(const Workspace& o) const {
    return instance == o.instance && sig == o.sig && diagrams == o.diagrams && valuation == o.valuation &&
           complexes == o.complexes && endomorphisms == o.endomorphisms && traces == o.traces;
  }
};

// Parses one file's text into ws, rejecting re-declarations across files.
void parse_workspace(Workspace& ws, const std::string& text, const std::string& file);
Workspace parse_workspace(const std::string& text, const std::string& file = "<input>");
Workspace load_workspace(const std::vector<std::string>& paths);

// Canonical text; parsing it gives an equal workspace.
std::string serialize(const Workspace& ws);

// Validates every diagram; errors carry the file and line of the layer.
struct DiagramBoundary {
  std::string name;
  CyclicWord dom, cod;
};
std::vector<DiagramBoundary> validate_diagrams(const Workspace& ws);

}  // namespace shadowtrace
