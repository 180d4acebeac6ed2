#include "shadowtrace/invariants.hpp"
#include "shadowtrace/laws.hpp"
#include "shadowtrace/realize.hpp"
#include "shadowtrace/trace.hpp"
#include "shadowtrace/workspace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

using namespace shadowtrace;
using json = nlohmann::ordered_json;

namespace {

#ifndef SHADOWTRACE_CORPUS_DIR
#define SHADOWTRACE_CORPUS_DIR "corpus"
#endif

struct Options {
  std::vector<std::string> files;
  std::string instance;
  std::string format = "text";
  std::string name;
  std::string diagram;
  std::string law = "all";
  int trials = 200;
  std::uint64_t seed = 1;
  int rank = -1;
  unsigned threads = 0;
};

bool machine(const Options& o) { return o.format == "machine"; }

std::string corpus_dir() {
  if (const char* env = std::getenv("SHADOWTRACE_CORPUS")) return env;
  return SHADOWTRACE_CORPUS_DIR;
}

// A path as given, or relative to the corpus directory.
std::string resolve(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  fs::path alt = fs::path(corpus_dir()) / path;
  if (fs::exists(alt)) return alt.string();
  return path;
}

Workspace load(const Options& o) {
  if (o.files.empty()) throw std::runtime_error("no input files");
  std::vector<std::string> paths;
  for (const auto& f : o.files) paths.push_back(resolve(f));
  return load_workspace(paths);
}

InstanceId pick_instance(const Options& o, const Workspace& ws) {
  if (!o.instance.empty()) {
    auto inst = parse_instance(o.instance);
    if (!inst) throw std::runtime_error("unknown instance '" + o.instance + "'");
    return *inst;
  }
  if (ws.instance) return *ws.instance;
  throw std::runtime_error("no instance: add an [instance] section or pass --instance");
}

// ---- output ----

std::string presentation_text(const ShadowPresentation& p) { return p.describe(); }

json presentation_json(const ShadowPresentation& p) {
  json t = json::array();
  for (const auto& d : p.torsion()) t.push_back(to_string(d));
  return {{"ring", ring_name(p.ring())}, {"generators", p.generators()}, {"free_rank", p.free_rank()}, {"torsion", t}};
}

std::vector<std::vector<std::string>> entries(const ShadowMorphism& f) {
  Matrix<Rational> m = f.dense();
  std::vector<std::vector<std::string>> rows;
  for (Index i = 0; i < m.rows(); ++i) {
    std::vector<std::string> row;
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Column j ↦ the row holding its single 1, when f is a function matrix.
std::optional<std::vector<Index>> as_function(const ShadowMorphism& f) {
  Matrix<Rational> m = f.dense();
  std::vector<Index> out;
  for (Index j = 0; j < m.cols(); ++j) {
    Index hit = -1;
    for (Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) == 0) continue;
      if (m(i, j) != 1 || hit >= 0) return std::nullopt;
      hit = i;
    }
    if (hit < 0) return std::nullopt;
    out.push_back(hit);
  }
  return out;
}

void print_morphism(const std::string& head, const ShadowMorphism& f, bool tabulate, const Options& o) {
  if (machine(o)) {
    json j{{"name", head}, {"dom", presentation_json(f.src())}, {"cod", presentation_json(f.tgt())},
           {"matrix", entries(f)}};
    if (tabulate)
      if (auto fn = as_function(f)) j["function"] = *fn;
    std::cout << j.dump() << "\n";
    return;
  }
  std::cout << head << ": " << presentation_text(f.src()) << " -> " << presentation_text(f.tgt()) << "\n";
  for (const auto& row : entries(f)) {
    std::cout << " ";
    for (const auto& e : row) std::cout << " " << e;
    std::cout << "\n";
  }
  if (tabulate)
    if (auto fn = as_function(f)) {
      std::cout << "  function:";
      for (std::size_t j = 0; j < fn->size(); ++j) std::cout << " " << j << "->" << (*fn)[j];
      std::cout << "\n";
    }
}

json class_json(const ClassVector& x) {
  json classes = json::array();
  for (int c = 0; c < x.classes.count(); ++c)
    classes.push_back({{"representative", element_name(*x.classes.group, x.classes.representatives[c])},
                       {"coefficient", to_string(x.coeff[c])}});
  return classes;
}

void print_value(const std::string& head, const std::string& text, json value, const Options& o) {
  if (machine(o))
    std::cout << json{{"name", head}, {"value", std::move(value)}}.dump() << "\n";
  else
    std::cout << head << ": " << text << "\n";
}

// ---- instance dispatch ----

template <class F>
void with_instance(InstanceId inst, const Workspace& ws, F&& f) {
  switch (inst) {
    case InstanceId::MatModZ: {
      MatMod<Integer> b;
      f(b, realize(ws, b));
      return;
    }
    case InstanceId::MatModQ: {
      MatMod<Rational> b;
      f(b, realize(ws, b));
      return;
    }
    case InstanceId::Span: {
      Span b;
      f(b, realize(ws, b));
      return;
    }
    case InstanceId::GRBimodZ:
    case InstanceId::GRBimodQ: {
      GRBimod b;
      f(b, realize(ws, b, inst == InstanceId::GRBimodZ ? Ring::Z : Ring::Q));
      return;
    }
  }
}

// ---- commands ----

int cmd_validate(const Options& o) {
  for (const auto& file : o.files) {
    Workspace ws = load_workspace({resolve(file)});
    for (const auto& d : validate_diagrams(ws)) {
      if (machine(o))
        std::cout << json{{"file", file}, {"diagram", d.name}, {"dom", to_string(d.dom)}, {"cod", to_string(d.cod)}}.dump()
                  << "\n";
      else
        std::cout << file << ": " << d.name << ": " << to_string(d.dom) << " => " << to_string(d.cod) << "\n";
    }
  }
  return 0;
}

int cmd_eval(const Options& o) {
  Workspace ws = load(o);
  validate_diagrams(ws);
  std::vector<const DiagramEntry*> todo;
  if (!o.diagram.empty())
    todo.push_back(&ws.diagram(o.diagram));
  else
    for (const auto& d : ws.diagrams) todo.push_back(&d);
  const InstanceId inst = pick_instance(o, ws);
  with_instance(inst, ws, [&](const auto& b, const auto& v) {
    for (const auto* e : todo) {
      try {
        print_morphism("eval " + e->diagram.name, value(b, ws.sig, v, e->diagram), inst == InstanceId::Span, o);
      } catch (const WorkspaceError&) {
        throw;
      } catch (const std::exception& err) {
        throw WorkspaceError(e->loc, 0, "diagram '" + e->diagram.name + "': " + err.what());
      }
    }
  });
  return 0;
}

const char* kind_name(TraceEntry::Kind k) {
  return k == TraceEntry::Kind::Trace ? "trace" : k == TraceEntry::Kind::Euler ? "euler" : "transfer";
}

int cmd_trace_kind(const Options& o, TraceEntry::Kind kind) {
  if (kind == TraceEntry::Kind::Euler && o.rank >= 0) {
    // Euler characteristic of a rank-n free module over one point.
    const std::string inst = o.instance.empty() ? "matmod-z" : o.instance;
    auto id = parse_instance(inst);
    if (!id) throw std::runtime_error("unknown instance '" + inst + "'");
    auto report = [&](const ShadowMorphism& e) {
      const std::string x = to_string(e.dense()(0, 0));
      print_value("euler rank " + std::to_string(o.rank), x, x, o);
    };
    FinSet pt{"pt", 1};
    if (*id == InstanceId::MatModZ) {
      MatMod<Integer> b;
      report(euler(b, make_dual(b, b.letter(RankCell(pt, pt, {o.rank})))));
      return 0;
    }
    if (*id == InstanceId::MatModQ) {
      MatMod<Rational> b;
      report(euler(b, make_dual(b, b.letter(RankCell(pt, pt, {o.rank})))));
      return 0;
    }
    if (*id == InstanceId::GRBimodZ || *id == InstanceId::GRBimodQ) {
      GRBimod b;
      Ring ring = *id == InstanceId::GRBimodZ ? Ring::Z : Ring::Q;
      GroupCell one{named_group("1"), ring};
      report(euler(b, make_dual(b, b.letter(GRBimod::free_module(one, one, o.rank)))));
      return 0;
    }
    throw std::runtime_error("--rank needs a matmod or grbimod instance");
  }
  Workspace ws = load(o);
  std::vector<const TraceEntry*> todo;
  for (const auto& t : ws.traces)
    if (t.kind == kind && (o.name.empty() || t.name == o.name)) todo.push_back(&t);
  if (todo.empty()) throw std::runtime_error(std::string("no [") + kind_name(kind) + "] entries to run");
  const InstanceId inst = pick_instance(o, ws);
  with_instance(inst, ws, [&](const auto& b, const auto& v) {
    for (const auto* t : todo) {
      try {
        const std::string at = t->dual.empty() ? t->region : ws.sig.one(t->dual.front()).src;
        auto d = make_dual(b, realize_word(b, v, t->dual, at));
        ShadowMorphism out;
        if (kind == TraceEntry::Kind::Euler) {
          out = euler(b, d);
        } else {
          auto it = v.two.find(t->map);
          if (it == v.two.end()) throw TypeError("generator '" + t->map + "' has no value");
          out = kind == TraceEntry::Kind::Trace ? trace(b, it->second, d) : transfer(b, it->second, d);
        }
        print_morphism(std::string(kind_name(kind)) + " " + t->name, out, inst == InstanceId::Span, o);
      } catch (const WorkspaceError&) {
        throw;
      } catch (const std::exception& err) {
        throw WorkspaceError(t->loc, 0, std::string(kind_name(kind)) + " '" + t->name + "': " + err.what());
      }
    }
  });
  return 0;
}

template <class F>
void for_each_endomorphism(const Options& o, const Workspace& ws, F&& f) {
  bool any = false;
  for (const auto& e : ws.endomorphisms) {
    if (!o.name.empty() && e.name != o.name) continue;
    any = true;
    try {
      auto g = named_group(e.group);
      auto psi = realize_psi(e.psi, g);
      auto m = realize_grmatrix(e.matrix, g);
      if (m.rows() != m.cols()) throw TypeError("matrix is not square");
      f(e, m, psi);
    } catch (const WorkspaceError&) {
      throw;
    } catch (const std::exception& err) {
      throw WorkspaceError(e.loc, 0, "endomorphism '" + e.name + "': " + err.what());
    }
  }
  if (!any) throw std::runtime_error("no [endomorphism] entries to run");
}

int cmd_hs(const Options& o) {
  Workspace ws = load(o);
  for_each_endomorphism(o, ws, [&](const EndomorphismEntry& e, const GRMatrix& m, const std::vector<int>&) {
    if (!e.psi.empty() && e.psi != identity_map(*m.group())) {
      if (o.name.empty()) return;
      throw TypeError("twisted endomorphism; use 'twisted'");
    }
    auto x = hattori_stallings(m, e.ring);
    print_value("hs " + e.name, x.describe(), class_json(x), o);
  });
  return 0;
}

int cmd_twisted(const Options& o) {
  Workspace ws = load(o);
  int status = 0;
  for_each_endomorphism(o, ws, [&](const EndomorphismEntry& e, const GRMatrix& m, const std::vector<int>& psi) {
    auto x = twisted_trace(m, psi, e.ring);
    print_value("twisted " + e.name, x.describe(), class_json(x), o);
    if (is_automorphism(*m.group(), psi)) {
      if (!(twisted_trace_bicategorical(m, psi, e.ring) == x)) {
        std::cerr << e.loc.file << ":" << e.loc.line << ": twisted '" << e.name
                  << "': bicategorical trace disagrees with the formula\n";
        status = 1;
      }
    }
  });
  return status;
}

template <class F>
void for_each_complex(const Options& o, const Workspace& ws, F&& f) {
  bool any = false;
  for (const auto& c : ws.complexes) {
    if (!o.name.empty() && c.name != o.name) continue;
    any = true;
    f(c, realize_complex(c));
  }
  if (!any) throw std::runtime_error("no [complex] entries to run");
}

int cmd_reidemeister(const Options& o) {
  Workspace ws = load(o);
  int status = 0;
  for_each_complex(o, ws, [&](const ComplexEntry& e, const EquivariantChainComplex& c) {
    auto x = reidemeister(c);
    print_value("reidemeister " + e.name, x.describe(), class_json(x), o);
    if (is_automorphism(*c.group, c.psi) && !(reidemeister_bicategorical(c) == x)) {
      std::cerr << e.loc.file << ":" << e.loc.line << ": reidemeister '" << e.name
                << "': bicategorical trace disagrees with the formula\n";
      status = 1;
    }
  });
  return status;
}

int cmd_lefschetz(const Options& o) {
  Workspace ws = load(o);
  for_each_complex(o, ws, [&](const ComplexEntry& e, const EquivariantChainComplex& c) {
    auto l = lefschetz(augment(c));
    print_value("lefschetz " + e.name, to_string(l), to_string(l), o);
  });
  return 0;
}

void print_report(const LawReport& r, const Options& o) {
  if (machine(o)) {
    json fails = json::array();
    for (const auto& f : r.failures) fails.push_back({{"trial", f.trial}, {"seed", f.seed}, {"detail", f.detail}});
    std::cout << json{{"law", law_name(r.law)},   {"instance", instance_name(r.instance)},
                      {"trials", r.trials},         {"passed", r.passed},
                      {"skipped", r.skipped},       {"ok", r.ok()},
                      {"failures", fails}}
                     .dump()
              << "\n";
    return;
  }
  std::cout << (r.ok() ? "PASS " : "FAIL ") << r.summary() << "\n";
  for (const auto& f : r.failures)
    std::cout << "  trial " << f.trial << " seed " << f.seed << ": " << f.detail << "\n";
}

std::vector<InstanceId> instances_for(const Options& o, std::optional<LawId> law) {
  if (o.instance.empty() || o.instance == "all") {
    std::vector<InstanceId> out;
    for (auto i : all_instances())
      if (!law || applicable(*law, i)) out.push_back(i);
    if (law && !o.instance.empty()) return out;
    if (law && o.instance.empty()) return {default_instance(*law)};
    return out;
  }
  auto inst = parse_instance(o.instance);
  if (!inst) throw std::runtime_error("unknown instance '" + o.instance + "'");
  return {*inst};
}

int cmd_laws(const Options& o) {
  std::vector<LawId> laws;
  if (o.law == "all") {
    laws = all_laws();
  } else {
    auto law = parse_law(o.law);
    if (!law) throw std::runtime_error("unknown law '" + o.law + "'");
    laws.push_back(*law);
  }
  int status = 0;
  for (auto law : laws) {
    std::vector<InstanceId> insts;
    if (o.law == "all" && o.instance.empty()) {
      for (auto i : all_instances())
        if (applicable(law, i)) insts.push_back(i);
    } else {
      insts = instances_for(o, law);
    }
    for (auto inst : insts) {
      if (!applicable(law, inst)) {
        if (o.law == "all") continue;
        throw std::runtime_error(law_name(law) + " does not apply to " + instance_name(inst));
      }
      auto r = verify_law(law, inst, o.trials, o.seed, o.threads);
      print_report(r, o);
      if (!r.ok()) status = 1;
    }
  }
  return status;
}

int cmd_axioms(const Options& o) {
  int status = 0;
  for (auto inst : instances_for(o, std::nullopt))
    for (const auto& r : check_axioms(inst, o.trials, o.seed, o.threads)) {
      print_report(r, o);
      if (!r.ok()) status = 1;
    }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bicategorical traces and shadows: diagrams, traces, invariants and law checks"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "machine"}));

  auto files = [&](CLI::App* sub) { sub->add_option("files", o.files, "Workspace files")->required(); };
  auto instance = [&](CLI::App* sub) { sub->add_option("--instance", o.instance, "Instance"); };
  auto named = [&](CLI::App* sub) { sub->add_option("--name", o.name, "Run only this entry"); };

  auto* validate_cmd = app.add_subcommand("validate", "Parse files and validate every diagram");
  files(validate_cmd);
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate diagrams");
  files(eval_cmd);
  instance(eval_cmd);
  eval_cmd->add_option("--diagram", o.diagram, "Diagram name (default: all)");

  auto* trace_cmd = app.add_subcommand("trace", "Run [trace] entries");
  auto* euler_cmd = app.add_subcommand("euler", "Run [euler] entries, or --rank N");
  auto* transfer_cmd = app.add_subcommand("transfer", "Run [transfer] entries");
  for (auto* sub : {trace_cmd, transfer_cmd}) {
    files(sub);
    instance(sub);
    named(sub);
  }
  euler_cmd->add_option("files", o.files, "Workspace files");
  instance(euler_cmd);
  named(euler_cmd);
  euler_cmd->add_option("--rank", o.rank, "Euler characteristic of a free module of this rank");

  auto* hs_cmd = app.add_subcommand("hs", "Hattori-Stallings trace of [endomorphism] entries");
  auto* twisted_cmd = app.add_subcommand("twisted", "Twisted trace of [endomorphism] entries");
  auto* reid_cmd = app.add_subcommand("reidemeister", "Reidemeister trace of [complex] entries");
  auto* lef_cmd = app.add_subcommand("lefschetz", "Lefschetz number of augmented [complex] entries");
  for (auto* sub : {hs_cmd, twisted_cmd, reid_cmd, lef_cmd}) {
    files(sub);
    named(sub);
  }

  auto* laws_cmd = app.add_subcommand("laws", "Randomized law checks");
  laws_cmd->add_option("--law", o.law, "Law name or 'all'");
  auto* axioms_cmd = app.add_subcommand("axioms", "Shadow axiom suite");
  for (auto* sub : {laws_cmd, axioms_cmd}) {
    sub->add_option("--instance", o.instance, "Instance or 'all'");
    sub->add_option("--trials", o.trials, "Trials per law")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Seed");
    sub->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) return cmd_validate(o);
    if (*eval_cmd) return cmd_eval(o);
    if (*trace_cmd) return cmd_trace_kind(o, TraceEntry::Kind::Trace);
    if (*euler_cmd) return cmd_trace_kind(o, TraceEntry::Kind::Euler);
    if (*transfer_cmd) return cmd_trace_kind(o, TraceEntry::Kind::Transfer);
    if (*hs_cmd) return cmd_hs(o);
    if (*twisted_cmd) return cmd_twisted(o);
    if (*reid_cmd) return cmd_reidemeister(o);
    if (*lef_cmd) return cmd_lefschetz(o);
    if (*laws_cmd) return cmd_laws(o);
    if (*axioms_cmd) return cmd_axioms(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
