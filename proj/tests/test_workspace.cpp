#include "shadowtrace/realize.hpp"
#include "shadowtrace/samplers.hpp"
#include "shadowtrace/trace.hpp"
#include "shadowtrace/workspace.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace shadowtrace;

namespace {

const std::string kCorpus = SHADOWTRACE_CORPUS_DIR;
const std::string kData = SHADOWTRACE_TEST_DATA;

std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(kCorpus))
    if (e.path().extension() == ".st") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::string error_of(const std::string& text) {
  try {
    Workspace ws = parse_workspace(text, "t.st");
    validate_diagrams(ws);
  } catch (const WorkspaceError& e) {
    return e.what();
  }
  return "";
}

GRTerms random_terms(Rng& rng, int order) {
  GRTerms out;
  const int n = uniform(rng, 0, 2);
  for (int i = 0; i < n; ++i) {
    const int h = uniform(rng, 0, order - 1);
    Rational c(uniform(rng, -4, 4), uniform(rng, 1, 3));
    if (c == 0) continue;
    out.emplace_back(c, h == 0 ? "e" : "g" + std::to_string(h));
  }
  return out;
}

GRRows random_rows(Rng& rng, int m, int n, int order) {
  GRRows rows(static_cast<std::size_t>(m));
  for (auto& row : rows)
    for (int j = 0; j < n; ++j) row.push_back(random_terms(rng, order));
  return rows;
}

}  // namespace

TEST(Workspace, CorpusRoundTrips) {
  auto files = corpus_files();
  ASSERT_FALSE(files.empty());
  for (const auto& f : files) {
    SCOPED_TRACE(f);
    Workspace ws = load_workspace({f});
    const std::string text = serialize(ws);
    Workspace again = parse_workspace(text, "again.st");
    EXPECT_EQ(ws, again);
    EXPECT_EQ(serialize(again), text);
  }
}

TEST(Workspace, RandomWorkspacesRoundTrip) {
  Rng rng(7);
  SpanSampler s(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto vd = random_diagram(s, rng);
    Workspace ws;
    ws.sig = vd.sig;
    vd.diagram.name = "d" + std::to_string(trial);
    ws.diagrams.push_back({vd.diagram, {}, {}});
    for (const auto& z : ws.sig.zero_cells) ws.valuation.push_back({z, SetValue{uniform(rng, 0, 4)}, {}});
    ComplexEntry c;
    c.name = "c";
    c.group = "Z3";
    c.ring = uniform(rng, 0, 1) ? Ring::Z : Ring::Q;
    if (uniform(rng, 0, 1)) c.psi = {0, 2, 1};
    const int top = uniform(rng, 0, 2);
    for (int i = 0; i <= top; ++i) c.ranks.push_back(uniform(rng, 1, 2));
    for (int i = 1; i <= top; ++i) c.boundary.push_back(random_rows(rng, c.ranks[i - 1], c.ranks[i], 3));
    for (int i = 0; i <= top; ++i) c.chain_map.push_back(random_rows(rng, c.ranks[i], c.ranks[i], 3));
    ws.complexes.push_back(c);
    Workspace again = parse_workspace(serialize(ws));
    ASSERT_EQ(ws, again) << serialize(ws);
  }
}

TEST(Workspace, RotationOutOfRangeNamesTheLayer) {
  const std::string e = error_of(R"([zero-cells]
R
[one-cells]
A : R -> R
B : R -> R
[generators]
f : A -> A B
g : B -> B A
[diagram spin]
top A B @ R
elem [f] B
elem A B [g]
rot 5
)");
  EXPECT_EQ(e, "t.st:13: diagram 'spin': layer 3: rotation 5 ≥ word length 4");
}

TEST(Workspace, DanglingLabelIsNamed) {
  EXPECT_EQ(error_of("[zero-cells]\nR\n[one-cells]\nA : R -> R\n[diagram d]\ntop A @ R\nelem [h]\n"),
            "t.st:7: diagram 'd': layer 1: unknown generator 'h'");
  EXPECT_EQ(error_of("[zero-cells]\nR\n[diagram d]\ntop X @ R\n"), "t.st:4: diagram 'd': unknown 1-cell 'X'");
}

TEST(Workspace, RedeclarationNamesThePreviousLine) {
  const std::string e = error_of("[zero-cells]\nR\n[one-cells]\nA : R -> R\nA : R -> R\n");
  EXPECT_NE(e.find("t.st:5:"), std::string::npos) << e;
  EXPECT_NE(e.find("t.st:4"), std::string::npos) << e;
}

TEST(Workspace, RedeclarationAcrossFiles) {
  Workspace ws;
  parse_workspace(ws, "[zero-cells]\nR\n", "a.st");
  EXPECT_THROW(parse_workspace(ws, "[zero-cells]\nR\n", "b.st"), WorkspaceError);
}

TEST(Workspace, ValuationErrorsPointAtTheAssignment) {
  const std::string text = "[zero-cells]\nR\n[one-cells]\nM : R -> R\n[valuation]\nR = set 2\nM = ranks [1, 2]\n";
  Workspace ws = parse_workspace(text, "v.st");
  MatMod<Integer> b;
  try {
    realize(ws, b);
    FAIL() << "expected an error";
  } catch (const WorkspaceError& e) {
    EXPECT_EQ(e.loc().line, 7);
    EXPECT_NE(std::string(e.what()).find("rows"), std::string::npos) << e.what();
  }
}

TEST(Workspace, UnknownValueLabel) {
  EXPECT_THROW(parse_workspace("[zero-cells]\nR\n[valuation]\nQ = set 2\n"), WorkspaceError);
}

TEST(Workspace, HandDrawnTraceDiagramMatchesTrace) {
  Workspace ws = load_workspace({kCorpus + "/matmod-trace.st"});
  MatMod<Integer> b;
  auto v = realize(ws, b);
  auto drawn = value(b, ws.sig, v, ws.diagram("trace-f").diagram);
  auto d = make_dual(b, v.one.at("M"));
  auto direct = trace(b, v.two.at("f"), d);
  EXPECT_TRUE(drawn.equals(direct));
  // One object: the trace is the diagonal sum 1 + 4 - 2.
  EXPECT_EQ(direct.dense()(0, 0), Rational(3));
}

TEST(Workspace, SpanTraceIsTheRightLeg) {
  Workspace ws = load_workspace({kCorpus + "/span-traces.st"});
  Span b;
  auto v = realize(ws, b);
  auto t = trace(b, v.two.at("u"), make_dual(b, v.one.at("M"))).dense();
  const std::vector<int> g = {1, 0, 1};
  ASSERT_EQ(t.cols(), 3);
  for (int r = 0; r < 3; ++r)
    for (int s = 0; s < 2; ++s) EXPECT_EQ(t(s, r), Rational(g[r] == s ? 1 : 0));
}

TEST(Workspace, RegularCharacterFromCorpus) {
  Workspace ws = load_workspace({kCorpus + "/grbimod-regular.st"});
  GRBimod b;
  auto v = realize(ws, b, Ring::Q);
  auto chi = euler(b, make_dual(b, v.one.at("V"))).dense();
  ASSERT_EQ(chi.cols(), 2);
  EXPECT_EQ(chi(0, 0), Rational(2));
  EXPECT_EQ(chi(0, 1), Rational(0));
}

TEST(Workspace, ComplexesRealize) {
  Workspace ws = load_workspace({kCorpus + "/invariants.st"});
  for (const auto& c : ws.complexes) EXPECT_NO_THROW(realize_complex(c)) << c.name;
  auto torus = realize_complex(ws.complex("torus-map"));
  // 1 - (2 + 3) + 6
  EXPECT_EQ(lefschetz(torus), Rational(2));
  EXPECT_EQ(reidemeister(torus).augmentation(), Rational(2));
}

TEST(Workspace, NotAChainMapIsRejected) {
  Workspace ws = parse_workspace(
      "[complex c]\ngroup Z2\nring Z\nranks 1 1\nboundary 1 = [g1 - e]\nmap 0 = [e]\nmap 1 = [g1]\n", "c.st");
  EXPECT_THROW(realize_complex(ws.complexes.at(0)), WorkspaceError);
}

TEST(Workspace, TestDataFilesFailValidation) {
  EXPECT_THROW(validate_diagrams(load_workspace({kData + "/bad-rotation.st"})), WorkspaceError);
  EXPECT_THROW(validate_diagrams(load_workspace({kData + "/dangling.st"})), WorkspaceError);
}
