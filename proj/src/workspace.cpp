#include "shadowtrace/workspace.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace shadowtrace {

WorkspaceError::WorkspaceError(SourceLoc loc, int layer, const std::string& what)
    : std::runtime_error(loc.file + ":" + std::to_string(loc.line) + ": " +
                         (layer > 0 ? "layer " + std::to_string(layer) + ": " : std::string()) + what),
      loc_(std::move(loc)),
      layer_(layer) {}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty() || s.front() == '-') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'' && c != '.' && c != '-') return false;
  return true;
}

class Parser {
 public:
  Parser(Workspace& ws, std::string file) : ws_(ws), file_(std::move(file)) {}

  void run(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_;
      auto hash = raw.find('#');
      std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (s.empty()) continue;
      if (s.front() == '[' && s.back() == ']') {
        finish_section();
        open_section(trim(s.substr(1, s.size() - 2)));
        continue;
      }
      if (section_.empty()) fail("content outside a section");
      body(s);
    }
    finish_section();
  }

 private:
  [[noreturn]] void fail(const std::string& what, int layer = 0) const {
    throw WorkspaceError(loc(), layer, what);
  }
  SourceLoc loc() const { return {file_, line_}; }

  int parse_int(const std::string& t) const {
    try {
      std::size_t used = 0;
      int v = std::stoi(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      fail("expected an integer, got '" + t + "'");
    }
  }

  std::vector<int> parse_ints(const std::vector<std::string>& ts, std::size_t from) const {
    std::vector<int> out;
    for (std::size_t i = from; i < ts.size(); ++i) out.push_back(parse_int(ts[i]));
    return out;
  }

  Rational parse_q(const std::string& t) const {
    try {
      return parse_rational(t);
    } catch (const std::exception&) {
      fail("expected a rational number, got '" + t + "'");
    }
  }

  // Contents of consecutive [...] groups.
  std::vector<std::string> bracket_groups(const std::string& s) const {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
        continue;
      }
      if (s[i] != '[') fail("expected '[' in '" + s + "'");
      auto close = s.find(']', i);
      if (close == std::string::npos) fail("unclosed '['");
      out.push_back(s.substr(i + 1, close - i - 1));
      i = close + 1;
    }
    return out;
  }

  // "a, b; c, d" as rows of raw entries.
  std::vector<std::vector<std::string>> cells(const std::string& inner) const {
    std::vector<std::vector<std::string>> rows;
    if (trim(inner).empty()) return rows;
    std::stringstream rs(inner);
    for (std::string row; std::getline(rs, row, ';');) {
      std::vector<std::string> entries;
      std::stringstream es(row);
      for (std::string e; std::getline(es, e, ',');) {
        e = trim(e);
        if (e.empty()) fail("empty matrix entry");
        entries.push_back(e);
      }
      if (!rows.empty() && rows.front().size() != entries.size()) fail("matrix rows have different lengths");
      rows.push_back(std::move(entries));
    }
    return rows;
  }

  RationalRows rational_matrix(const std::string& inner) const {
    RationalRows out;
    for (const auto& row : cells(inner)) {
      std::vector<Rational> r;
      for (const auto& e : row) r.push_back(parse_q(e));
      out.push_back(std::move(r));
    }
    return out;
  }

  // "2*g1 - e + 1/2 g3", "0", "-3".
  GRTerms gr_entry(const std::string& e) const {
    GRTerms out;
    std::string s;
    for (char c : e)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "0") return out;
    std::size_t i = 0;
    while (i < s.size()) {
      int sign = 1;
      if (s[i] == '+' || s[i] == '-') {
        sign = s[i] == '-' ? -1 : 1;
        ++i;
      } else if (!out.empty()) {
        fail("expected '+' or '-' in '" + e + "'");
      }
      std::size_t j = i;
      while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
      std::string term = s.substr(i, j - i);
      if (term.empty()) fail("empty term in '" + e + "'");
      std::size_t k = 0;
      while (k < term.size() && (std::isdigit(static_cast<unsigned char>(term[k])) || term[k] == '/')) ++k;
      Rational c = k ? parse_q(term.substr(0, k)) : Rational(1);
      std::string rest = term.substr(k);
      if (!rest.empty() && rest.front() == '*') {
        if (k == 0) fail("missing coefficient before '*' in '" + e + "'");
        rest = rest.substr(1);
      }
      if (rest.empty()) rest = "e";
      if (rest != "e" && !(rest.size() > 1 && rest[0] == 'g'))
        fail("unknown group element '" + rest + "'; use e or g<index>");
      if (rest != "e") parse_int(rest.substr(1));
      out.emplace_back(sign * c, rest);
      i = j;
    }
    return out;
  }

  GRRows gr_matrix(const std::string& inner) const {
    GRRows out;
    for (const auto& row : cells(inner)) {
      std::vector<GRTerms> r;
      for (const auto& e : row) r.push_back(gr_entry(e));
      out.push_back(std::move(r));
    }
    return out;
  }

  GRRows single_gr_matrix(const std::string& s) const {
    auto groups = bracket_groups(s);
    if (groups.size() != 1) fail("expected one [...] matrix");
    return gr_matrix(groups[0]);
  }

  void open_section(const std::string& header) {
    auto t = tokens(header);
    if (t.empty()) fail("empty section header");
    section_ = t[0];
    name_ = t.size() > 1 ? t[1] : "";
    const std::set<std::string> plain{"instance", "zero-cells", "one-cells", "generators", "valuation"};
    const std::set<std::string> named{"diagram", "complex", "endomorphism", "trace", "euler", "transfer"};
    if (plain.count(section_)) {
      if (t.size() != 1) fail("section [" + section_ + "] takes no name");
    } else if (named.count(section_)) {
      if (t.size() != 2 || !valid_name(name_)) fail("section [" + section_ + "] needs one name");
    } else {
      fail("unknown section [" + section_ + "]");
    }
    section_line_ = line_;
    if (section_ == "diagram") {
      for (const auto& d : ws_.diagrams)
        if (d.diagram.name == name_) fail("diagram '" + name_ + "' declared twice");
      diagram_ = DiagramEntry{};
      diagram_.diagram.name = name_;
      diagram_.loc = loc();
      have_top_ = false;
    } else if (section_ == "complex") {
      for (const auto& c : ws_.complexes)
        if (c.name == name_) fail("complex '" + name_ + "' declared twice");
      complex_ = ComplexEntry{};
      complex_.name = name_;
      complex_.loc = loc();
      boundary_seen_.clear();
      map_seen_.clear();
    } else if (section_ == "endomorphism") {
      for (const auto& e : ws_.endomorphisms)
        if (e.name == name_) fail("endomorphism '" + name_ + "' declared twice");
      endo_ = EndomorphismEntry{};
      endo_.name = name_;
      endo_.loc = loc();
      have_matrix_ = false;
    } else if (section_ == "trace" || section_ == "euler" || section_ == "transfer") {
      for (const auto& e : ws_.traces)
        if (e.name == name_) fail("trace '" + name_ + "' declared twice");
      trace_ = TraceEntry{};
      trace_.kind = section_ == "trace"   ? TraceEntry::Kind::Trace
                    : section_ == "euler" ? TraceEntry::Kind::Euler
                                          : TraceEntry::Kind::Transfer;
      trace_.name = name_;
      trace_.loc = loc();
      have_dual_ = false;
    }
  }

  void finish_section() {
    if (section_ == "diagram") {
      if (!have_top_) fail_at(section_line_, "diagram '" + name_ + "' has no top word");
      ws_.diagrams.push_back(diagram_);
    } else if (section_ == "complex") {
      finish_complex();
    } else if (section_ == "endomorphism") {
      if (endo_.group.empty()) fail_at(section_line_, "endomorphism '" + name_ + "' has no group");
      if (!have_matrix_) fail_at(section_line_, "endomorphism '" + name_ + "' has no matrix");
      ws_.endomorphisms.push_back(endo_);
    } else if (section_ == "trace" || section_ == "euler" || section_ == "transfer") {
      if (!have_dual_) fail_at(section_line_, section_ + " '" + name_ + "' has no dual line");
      if (trace_.kind != TraceEntry::Kind::Euler && trace_.map.empty())
        fail_at(section_line_, section_ + " '" + name_ + "' has no map line");
      ws_.traces.push_back(trace_);
    }
    section_.clear();
  }

  [[noreturn]] void fail_at(int line, const std::string& what) const {
    throw WorkspaceError({file_, line}, 0, what);
  }

  void finish_complex() {
    auto& c = complex_;
    if (c.group.empty()) fail_at(section_line_, "complex '" + name_ + "' has no group");
    if (c.ranks.empty()) fail_at(section_line_, "complex '" + name_ + "' has no ranks");
    const std::size_t n = c.ranks.size();
    c.boundary.assign(n - 1, {});
    c.chain_map.assign(n, {});
    for (std::size_t i = 1; i < n; ++i) {
      // An omitted boundary is zero.
      auto it = boundary_seen_.find(static_cast<int>(i));
      if (it != boundary_seen_.end()) c.boundary[i - 1] = it->second;
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto it = map_seen_.find(static_cast<int>(i));
      if (it == map_seen_.end()) fail_at(section_line_, "complex '" + name_ + "': missing map " + std::to_string(i));
      c.chain_map[i] = it->second;
    }
    for (const auto& [i, m] : boundary_seen_)
      if (i < 1 || i >= static_cast<int>(n)) fail_at(section_line_, "complex '" + name_ + "': boundary " + std::to_string(i) + " out of range");
    for (const auto& [i, m] : map_seen_)
      if (i < 0 || i >= static_cast<int>(n)) fail_at(section_line_, "complex '" + name_ + "': map " + std::to_string(i) + " out of range");
    ws_.complexes.push_back(c);
  }

  void declare(const std::string& name) {
    if (!valid_name(name)) fail("invalid name '" + name + "'");
    if (ws_.declared_at.count(name)) {
      const auto& at = ws_.declared_at.at(name);
      fail("'" + name + "' already declared at " + at.file + ":" + std::to_string(at.line));
    }
    ws_.declared_at.emplace(name, loc());
  }

  template <class F>
  void diagram_call(F&& f) {
    try {
      f();
    } catch (const DiagramError& e) {
      fail(e.what());
    }
  }

  void body(const std::string& s) {
    auto t = tokens(s);
    if (section_ == "instance") {
      if (t.size() != 1) fail("expected one instance name");
      auto inst = parse_instance(t[0]);
      if (!inst) fail("unknown instance '" + t[0] + "'");
      if (ws_.instance && *ws_.instance != *inst)
        fail("instance " + t[0] + " conflicts with " + instance_name(*ws_.instance));
      ws_.instance = inst;
      ws_.instance_loc = loc();
    } else if (section_ == "zero-cells") {
      for (const auto& z : t) {
        declare(z);
        diagram_call([&] { ws_.sig.add_zero(z); });
      }
    } else if (section_ == "one-cells") {
      // M : R -> S
      if (t.size() != 5 || t[1] != ":" || t[3] != "->") fail("expected 'NAME : SRC -> TGT'");
      declare(t[0]);
      diagram_call([&] { ws_.sig.add_one({t[0], t[2], t[4]}); });
    } else if (section_ == "generators") {
      generator(t);
    } else if (section_ == "diagram") {
      layer(t);
    } else if (section_ == "valuation") {
      assignment(s);
    } else if (section_ == "complex") {
      complex_line(s, t);
    } else if (section_ == "endomorphism") {
      endo_line(s, t);
    } else {
      trace_line(t);
    }
  }

  // f : A B -> C @ R S ; '-' for an empty side.
  void generator(const std::vector<std::string>& t) {
    if (t.size() < 4 || t[1] != ":") fail("expected 'NAME : DOM -> COD'");
    Generator g;
    g.name = t[0];
    std::size_t i = 2;
    auto side = [&](std::vector<std::string>& out) {
      while (i < t.size() && t[i] != "->" && t[i] != "@") {
        if (t[i] != "-") out.push_back(t[i]);
        ++i;
      }
    };
    side(g.dom);
    if (i >= t.size() || t[i] != "->") fail("expected '->' in generator '" + g.name + "'");
    ++i;
    side(g.cod);
    if (i < t.size()) {
      if (t.size() - i != 2) fail("expected '@ REGION' at the end of generator '" + g.name + "'");
      g.src = g.tgt = t[i + 1];
    }
    declare(g.name);
    diagram_call([&] { ws_.sig.add_generator(g); });
  }

  void layer(const std::vector<std::string>& t) {
    auto& d = diagram_.diagram;
    const int index = static_cast<int>(d.layers.size()) + 1;
    if (t[0] == "top") {
      if (have_top_) fail("second top word");
      if (t.size() < 3 || t[t.size() - 2] != "@") fail("expected 'top LETTERS @ REGION'");
      d.top.letters.assign(t.begin() + 1, t.end() - 2);
      d.top.ambient = t.back();
      have_top_ = true;
      diagram_.top_line = line_;
      return;
    }
    if (!have_top_) fail("layer before the top word", index);
    if (t[0] == "rot") {
      if (t.size() != 2) fail("expected 'rot K'", index);
      d.layers.push_back(Layer::rotation(parse_int(t[1])));
    } else if (t[0] == "elem") {
      std::vector<Slot> slots;
      for (std::size_t i = 1; i < t.size(); ++i) {
        const auto& x = t[i];
        if (x.size() > 2 && x.front() == '[' && x.back() == ']')
          slots.push_back(Slot::box(x.substr(1, x.size() - 2)));
        else if (x == "-")
          continue;
        else
          slots.push_back(Slot::wire(x));
      }
      d.layers.push_back(Layer::elementary(std::move(slots)));
    } else {
      fail("expected 'top', 'elem' or 'rot'", index);
    }
    diagram_.layer_lines.push_back(line_);
  }

  void assignment(const std::string& s) {
    auto eq = s.find('=');
    if (eq == std::string::npos) fail("expected 'LABEL = VALUE'");
    std::string label = trim(s.substr(0, eq));
    std::string rhs = trim(s.substr(eq + 1));
    for (const auto& a : ws_.valuation)
      if (a.label == label) fail("'" + label + "' assigned twice");
    bool known = ws_.sig.has_zero(label) || ws_.sig.one_cells.count(label) || ws_.sig.generators.count(label);
    if (!known) fail("valuation of undeclared label '" + label + "'");
    auto t = tokens(rhs);
    if (t.empty()) fail("missing value for '" + label + "'");
    const std::string& kind = t[0];
    std::string rest = trim(rhs.substr(kind.size()));
    CellValue v;
    auto expect_zero = [&] {
      if (!ws_.sig.has_zero(label)) fail("'" + label + "' is not a 0-cell");
    };
    auto expect_one = [&] {
      if (!ws_.sig.one_cells.count(label)) fail("'" + label + "' is not a 1-cell");
    };
    auto expect_two = [&] {
      if (!ws_.sig.generators.count(label)) fail("'" + label + "' is not a generator");
    };
    if (kind == "set") {
      expect_zero();
      if (t.size() != 2) fail("expected 'set N'");
      v = SetValue{parse_int(t[1])};
    } else if (kind == "group") {
      expect_zero();
      if (t.size() != 2) fail("expected 'group NAME'");
      v = GroupValue{t[1]};
    } else if (kind == "ranks") {
      expect_one();
      auto groups = bracket_groups(rest);
      if (groups.size() != 1) fail("expected 'ranks [..]'");
      RanksValue r;
      for (const auto& row : cells(groups[0])) {
        std::vector<int> ints;
        for (const auto& e : row) ints.push_back(parse_int(e));
        r.ranks.push_back(std::move(ints));
      }
      v = r;
    } else if (kind == "span") {
      expect_one();
      SpanValue sv;
      std::size_t arrow = 0;
      while (arrow < t.size() && t[arrow] != "->") ++arrow;
      if (arrow == t.size()) fail("expected 'span LEFT.. -> RIGHT..'");
      for (std::size_t i = 1; i < arrow; ++i) sv.left.push_back(parse_int(t[i]));
      sv.right = parse_ints(t, arrow + 1);
      if (sv.left.size() != sv.right.size()) fail("span legs have different lengths");
      v = sv;
    } else if (kind == "blocks") {
      expect_two();
      BlocksValue bv;
      for (const auto& g : bracket_groups(rest)) bv.blocks.push_back(rational_matrix(g));
      v = bv;
    } else if (kind == "map") {
      expect_two();
      v = ApexMapValue{parse_ints(t, 1)};
    } else if (kind == "free" || kind == "regular") {
      expect_one();
      if (t.size() != 2) fail("expected '" + kind + " N'");
      BimoduleValue bv;
      bv.kind = kind == "free" ? BimoduleValue::Kind::Free : BimoduleValue::Kind::Regular;
      bv.rank = parse_int(t[1]);
      v = bv;
    } else if (kind == "twisted") {
      expect_one();
      BimoduleValue bv;
      bv.kind = BimoduleValue::Kind::Twisted;
      bv.rank = 1;
      bv.psi = parse_ints(t, 1);
      v = bv;
    } else if (kind == "bimodule") {
      expect_one();
      if (t.size() < 2) fail("expected 'bimodule N [..] ...'");
      BimoduleValue bv;
      bv.kind = BimoduleValue::Kind::General;
      bv.rank = parse_int(t[1]);
      std::string groups = trim(rest.substr(t[1].size()));
      for (const auto& g : bracket_groups(groups)) bv.action.push_back(gr_matrix(g));
      v = bv;
    } else if (kind == "grmatrix") {
      expect_two();
      v = GRMatrixValue{single_gr_matrix(rest)};
    } else {
      fail("unknown value kind '" + kind + "'");
    }
    ws_.valuation.push_back({label, std::move(v), loc()});
  }

  Ring parse_ring(const std::vector<std::string>& t) const {
    if (t.size() != 2 || (t[1] != "Z" && t[1] != "Q")) fail("expected 'ring Z' or 'ring Q'");
    return t[1] == "Z" ? Ring::Z : Ring::Q;
  }

  // "boundary 1 = [..]" → (1, matrix).
  std::pair<int, GRRows> indexed_matrix(const std::string& s, const std::vector<std::string>& t) const {
    auto eq = s.find('=');
    if (t.size() < 3 || eq == std::string::npos) fail("expected '" + t[0] + " I = [..]'");
    auto head = tokens(s.substr(0, eq));
    if (head.size() != 2) fail("expected '" + t[0] + " I = [..]'");
    return {parse_int(head[1]), single_gr_matrix(s.substr(eq + 1))};
  }

  void complex_line(const std::string& s, const std::vector<std::string>& t) {
    auto& c = complex_;
    if (t[0] == "group") {
      if (t.size() != 2) fail("expected 'group NAME'");
      c.group = t[1];
    } else if (t[0] == "ring") {
      c.ring = parse_ring(t);
    } else if (t[0] == "psi") {
      c.psi = parse_ints(t, 1);
    } else if (t[0] == "ranks") {
      c.ranks = parse_ints(t, 1);
    } else if (t[0] == "boundary" || t[0] == "map") {
      auto [i, m] = indexed_matrix(s, t);
      auto& seen = t[0] == "boundary" ? boundary_seen_ : map_seen_;
      if (!seen.emplace(i, std::move(m)).second) fail(t[0] + " " + std::to_string(i) + " given twice");
    } else {
      fail("unknown complex line '" + t[0] + "'");
    }
  }

  void endo_line(const std::string& s, const std::vector<std::string>& t) {
    if (t[0] == "group") {
      if (t.size() != 2) fail("expected 'group NAME'");
      endo_.group = t[1];
    } else if (t[0] == "ring") {
      endo_.ring = parse_ring(t);
    } else if (t[0] == "psi") {
      endo_.psi = parse_ints(t, 1);
    } else if (t[0] == "matrix") {
      auto eq = s.find('=');
      if (eq == std::string::npos) fail("expected 'matrix = [..]'");
      endo_.matrix = single_gr_matrix(s.substr(eq + 1));
      have_matrix_ = true;
    } else {
      fail("unknown endomorphism line '" + t[0] + "'");
    }
  }

  void trace_line(const std::vector<std::string>& t) {
    if (t[0] == "map") {
      if (t.size() != 2) fail("expected 'map GENERATOR'");
      if (!ws_.sig.generators.count(t[1])) fail("unknown generator '" + t[1] + "'");
      trace_.map = t[1];
    } else if (t[0] == "dual") {
      // dual M N   or   dual @ R
      if (t.size() == 3 && t[1] == "@") {
        if (!ws_.sig.has_zero(t[2])) fail("unknown 0-cell '" + t[2] + "'");
        trace_.region = t[2];
      } else {
        if (t.size() < 2) fail("expected 'dual LETTERS' or 'dual @ REGION'");
        for (std::size_t i = 1; i < t.size(); ++i) {
          if (!ws_.sig.one_cells.count(t[i])) fail("unknown 1-cell '" + t[i] + "'");
          trace_.dual.push_back(t[i]);
        }
      }
      have_dual_ = true;
    } else {
      fail("unknown " + section_ + " line '" + t[0] + "'");
    }
  }

  Workspace& ws_;
  std::string file_;
  int line_ = 0;
  std::string section_, name_;
  int section_line_ = 0;
  DiagramEntry diagram_;
  bool have_top_ = false;
  ComplexEntry complex_;
  std::map<int, GRRows> boundary_seen_, map_seen_;
  EndomorphismEntry endo_;
  bool have_matrix_ = false;
  TraceEntry trace_;
  bool have_dual_ = false;
};

// ---- serialization ----

std::string q_rows(const RationalRows& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < m[i].size(); ++j) out += (j ? ", " : "") + to_string(m[i][j]);
  }
  return out + "]";
}

std::string gr_terms(const GRTerms& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    Rational c = terms[i].first;
    const std::string& g = terms[i].second;
    bool neg = c < 0;
    if (neg) c = -c;
    if (i == 0)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (c != 1) out += to_string(c) + "*";
    out += g;
  }
  return out;
}

std::string gr_rows(const GRRows& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < m[i].size(); ++j) out += (j ? ", " : "") + gr_terms(m[i][j]);
  }
  return out + "]";
}

std::string ints(const std::vector<int>& v) {
  std::string out;
  for (int x : v) out += " " + std::to_string(x);
  return out;
}

std::string value_text(const CellValue& v) {
  struct Visitor {
    std::string operator()(const SetValue& x) const { return "set " + std::to_string(x.size); }
    std::string operator()(const GroupValue& x) const { return "group " + x.group; }
    std::string operator()(const RanksValue& x) const {
      std::string out = "ranks [";
      for (std::size_t i = 0; i < x.ranks.size(); ++i) {
        if (i) out += "; ";
        for (std::size_t j = 0; j < x.ranks[i].size(); ++j) out += (j ? ", " : "") + std::to_string(x.ranks[i][j]);
      }
      return out + "]";
    }
    std::string operator()(const SpanValue& x) const { return "span" + ints(x.left) + " ->" + ints(x.right); }
    std::string operator()(const BlocksValue& x) const {
      std::string out = "blocks";
      for (const auto& b : x.blocks) out += " " + q_rows(b);
      return out;
    }
    std::string operator()(const ApexMapValue& x) const { return "map" + ints(x.map); }
    std::string operator()(const BimoduleValue& x) const {
      switch (x.kind) {
        case BimoduleValue::Kind::Free: return "free " + std::to_string(x.rank);
        case BimoduleValue::Kind::Regular: return "regular " + std::to_string(x.rank);
        case BimoduleValue::Kind::Twisted: return "twisted" + ints(x.psi);
        case BimoduleValue::Kind::General: break;
      }
      std::string out = "bimodule " + std::to_string(x.rank);
      for (const auto& a : x.action) out += " " + gr_rows(a);
      return out;
    }
    std::string operator()(const GRMatrixValue& x) const { return "grmatrix " + gr_rows(x.matrix); }
  };
  return std::visit(Visitor{}, v);
}

std::string side(const std::vector<std::string>& w) { return w.empty() ? "-" : join(w); }

}  // namespace

void parse_workspace(Workspace& ws, const std::string& text, const std::string& file) {
  Parser(ws, file).run(text);
}

Workspace parse_workspace(const std::string& text, const std::string& file) {
  Workspace ws;
  parse_workspace(ws, text, file);
  return ws;
}

Workspace load_workspace(const std::vector<std::string>& paths) {
  Workspace ws;
  for (const auto& p : paths) {
    std::ifstream in(p);
    if (!in) throw WorkspaceError({p, 0}, 0, "cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    parse_workspace(ws, buf.str(), p);
  }
  return ws;
}

std::string serialize(const Workspace& ws) {
  std::string out;
  auto line = [&](const std::string& s) { out += s + "\n"; };
  if (ws.instance) {
    line("[instance]");
    line(instance_name(*ws.instance));
    line("");
  }
  if (!ws.sig.zero_cells.empty()) {
    line("[zero-cells]");
    line(join(ws.sig.zero_cells));
    line("");
  }
  if (!ws.sig.one_cells.empty()) {
    line("[one-cells]");
    for (const auto& [label, d] : ws.sig.one_cells) line(label + " : " + d.src + " -> " + d.tgt);
    line("");
  }
  if (!ws.sig.generators.empty()) {
    line("[generators]");
    for (const auto& [name, g] : ws.sig.generators) {
      std::string s = name + " : " + side(g.dom) + " -> " + side(g.cod);
      if (g.dom.empty() && g.cod.empty()) s += " @ " + g.src;
      line(s);
    }
    line("");
  }
  for (const auto& e : ws.diagrams) {
    const auto& d = e.diagram;
    line("[diagram " + d.name + "]");
    line("top " + (d.top.letters.empty() ? std::string() : join(d.top.letters) + " ") + "@ " + d.top.ambient);
    for (const auto& l : d.layers) {
      if (l.is_rotation()) {
        line("rot " + std::to_string(l.k));
        continue;
      }
      std::string s = "elem";
      for (const auto& slot : l.slots) s += " " + (slot.is_box() ? "[" + slot.name + "]" : slot.name);
      if (l.slots.empty()) s += " -";
      line(s);
    }
    line("");
  }
  if (!ws.valuation.empty()) {
    line("[valuation]");
    for (const auto& a : ws.valuation) line(a.label + " = " + value_text(a.value));
    line("");
  }
  for (const auto& c : ws.complexes) {
    line("[complex " + c.name + "]");
    line("group " + c.group);
    line(std::string("ring ") + ring_name(c.ring));
    if (!c.psi.empty()) line("psi" + ints(c.psi));
    line("ranks" + ints(c.ranks));
    for (std::size_t i = 0; i < c.boundary.size(); ++i)
      if (!c.boundary[i].empty()) line("boundary " + std::to_string(i + 1) + " = " + gr_rows(c.boundary[i]));
    for (std::size_t i = 0; i < c.chain_map.size(); ++i)
      line("map " + std::to_string(i) + " = " + gr_rows(c.chain_map[i]));
    line("");
  }
  for (const auto& e : ws.endomorphisms) {
    line("[endomorphism " + e.name + "]");
    line("group " + e.group);
    line(std::string("ring ") + ring_name(e.ring));
    if (!e.psi.empty()) line("psi" + ints(e.psi));
    line("matrix = " + gr_rows(e.matrix));
    line("");
  }
  for (const auto& t : ws.traces) {
    const char* kind = t.kind == TraceEntry::Kind::Trace ? "trace" : t.kind == TraceEntry::Kind::Euler ? "euler" : "transfer";
    line(std::string("[") + kind + " " + t.name + "]");
    if (!t.map.empty()) line("map " + t.map);
    line(t.dual.empty() ? "dual @ " + t.region : "dual " + join(t.dual));
    line("");
  }
  if (!out.empty() && out.size() >= 2 && out[out.size() - 2] == '\n') out.pop_back();
  return out;
}

const DiagramEntry& Workspace::diagram(const std::string& name) const {
  for (const auto& d : diagrams)
    if (d.diagram.name == name) return d;
  throw WorkspaceError({}, 0, "no diagram named '" + name + "'");
}

const ComplexEntry& Workspace::complex(const std::string& name) const {
  for (const auto& c : complexes)
    if (c.name == name) return c;
  throw WorkspaceError({}, 0, "no complex named '" + name + "'");
}

const EndomorphismEntry& Workspace::endomorphism(const std::string& name) const {
  for (const auto& e : endomorphisms)
    if (e.name == name) return e;
  throw WorkspaceError({}, 0, "no endomorphism named '" + name + "'");
}

const TraceEntry& Workspace::trace(const std::string& name) const {
  for (const auto& t : traces)
    if (t.name == name) return t;
  throw WorkspaceError({}, 0, "no trace named '" + name + "'");
}

const Assignment* Workspace::find_value(const std::string& label) const {
  for (const auto& a : valuation)
    if (a.label == label) return &a;
  return nullptr;
}

std::vector<DiagramBoundary> validate_diagrams(const Workspace& ws) {
  std::vector<DiagramBoundary> out;
  for (const auto& e : ws.diagrams) {
    try {
      auto [dom, cod] = validate(ws.sig, e.diagram);
      out.push_back({e.diagram.name, dom, cod});
    } catch (const DiagramError& err) {
      int layer = err.layer();
      int line = layer > 0 && layer <= static_cast<int>(e.layer_lines.size()) ? e.layer_lines[layer - 1]
                 : e.top_line ? e.top_line
                              : e.loc.line;
      // DiagramError already names the layer.
      throw WorkspaceError({e.loc.file, line}, 0, "diagram '" + e.diagram.name + "': " + err.what());
    }
  }
  return out;
}

}  // namespace shadowtrace
