// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "shadowtrace/functors.hpp"
#include "shadowtrace/grbimod.hpp"
#include "shadowtrace/invariants.hpp"
#include "shadowtrace/laws.hpp"
#include "shadowtrace/matmod.hpp"
#include "shadowtrace/samplers.hpp"
#include "shadowtrace/span.hpp"
#include "shadowtrace/trace.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>

using namespace shadowtrace;

namespace {

constexpr std::uint64_t kSeed = 20261017;

struct Result {
  bool ok = true;
  std::string detail;
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
  void fail(const std::string& s) {
    ok = false;
    note("FAILED " + s);
  }
};

void absorb(Result& r, const LawReport& rep) {
  if (rep.ok()) return;
  std::string s = rep.summary();
  if (!rep.failures.empty()) s += " (trial " + std::to_string(rep.failures[0].trial) + ": " + rep.failures[0].detail + ")";
  r.fail(s);
}

// Runs `law` on every applicable instance and records the totals.
void run_law(Result& r, LawId law, int trials, const std::vector<InstanceId>& insts) {
  int passed = 0;
  for (auto inst : insts) {
    auto rep = verify_law(law, inst, trials, kSeed);
    passed += rep.passed;
    absorb(r, rep);
  }
  r.note(law_name(law) + " " + std::to_string(passed) + " passed");
}

std::vector<InstanceId> applicable_instances(LawId law) {
  std::vector<InstanceId> out;
  for (auto i : all_instances())
    if (applicable(law, i)) out.push_back(i);
  return out;
}

Result axioms() {
  Result r;
  int total = 0;
  for (auto inst : all_instances())
    for (const auto& rep : check_axioms(inst, 200, kSeed)) {
      total += rep.passed;
      if (rep.passed < 200) r.fail(rep.summary());
      absorb(r, rep);
    }
  r.note(std::to_string(total) + " axiom trials over 5 instances");
  return r;
}

Result matmod_trace_oracle() {
  Result r;
  Rng rng(kSeed);
  MatMod<Integer> b;
  const FinSet pt{"pt", 1};
  for (int trial = 0; trial < 500; ++trial) {
    const int n = uniform(rng, 1, 6);
    Matrix<Integer> a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = uniform(rng, -9, 9);
    Integer diagonal = 0;
    for (int i = 0; i < n; ++i) diagonal += a(i, i);
    auto M = b.letter(RankCell(pt, pt, {n}));
    auto t = trace(b, b.make(M, M, {a}), make_dual(b, M)).dense();
    if (t.rows() != 1 || t.cols() != 1 || t(0, 0) != Rational(diagonal)) {
      r.fail("trial " + std::to_string(trial));
      return r;
    }
  }
  r.note("500 matrices, n <= 6");
  return r;
}

std::vector<int> random_function(Rng& rng, int n, int m) {
  std::vector<int> f(static_cast<std::size_t>(n));
  for (auto& x : f) x = uniform(rng, 0, m - 1);
  return f;
}

Result span_traces() {
  Result r;
  Rng rng(kSeed);
  Span b;
  // R <-h- A -g-> S with h a bijection, twisted by the graph F of f: R -> R
  // where g h^-1 f = g h^-1. The trace sends each fixed point x of f to g h^-1 x.
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform(rng, 1, 4), m = uniform(rng, 1, 4);
    std::vector<int> h(static_cast<std::size_t>(n));
    std::iota(h.begin(), h.end(), 0);
    std::shuffle(h.begin(), h.end(), rng);
    std::vector<int> hinv(h.size());
    for (int a = 0; a < n; ++a) hinv[h[a]] = a;
    auto g = random_function(rng, n, m);
    std::vector<int> f(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
      std::vector<int> fiber;
      for (int y = 0; y < n; ++y)
        if (g[hinv[y]] == g[hinv[x]]) fiber.push_back(y);
      f[x] = fiber[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(fiber.size()) - 1))];
    }
    FinSet R{"R", n}, S{"S", m};
    auto M = b.letter(SpanCell(R, S, h, g));
    std::vector<int> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    auto F = b.letter(SpanCell(R, R, ids, f));
    // Pullback pairs (x, a) have a = h^-1 f(x), one for each x, in order of x.
    auto t = trace(b, b.make(F * M, M, hinv), make_dual(b, M)).dense();
    std::vector<int> fixed;
    for (int x = 0; x < n; ++x)
      if (f[x] == x) fixed.push_back(x);
    bool ok = t.rows() == m && t.cols() == static_cast<Index>(fixed.size());
    for (std::size_t c = 0; ok && c < fixed.size(); ++c)
      for (int s = 0; s < m; ++s)
        ok = ok && t(s, static_cast<Index>(c)) == Rational(g[hinv[fixed[c]]] == s ? 1 : 0);
    if (!ok) {
      r.fail("span trial " + std::to_string(trial));
      return r;
    }
  }
  r.note("100 dualizable spans");

  // Linearization: arbitrary span R <- A -> S, f: A -> A over R x S.
  Linearization lin;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform(rng, 1, 4), m = uniform(rng, 1, 4), k = uniform(rng, 0, 6);
    auto left = random_function(rng, k, n), right = random_function(rng, k, m);
    std::vector<int> f(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) {
      std::vector<int> fiber;
      for (int x = 0; x < k; ++x)
        if (left[x] == left[a] && right[x] == right[a]) fiber.push_back(x);
      f[a] = fiber[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(fiber.size()) - 1))];
    }
    FinSet R{"R", n}, S{"S", m};
    auto M = b.letter(SpanCell(R, S, left, right));
    const auto& mat = lin.target();
    auto LM = lin.one(M);
    auto t = trace(mat, lin.two(b.make(M, M, f)), make_dual(mat, LM)).dense();
    bool ok = t.rows() == m && t.cols() == n;
    for (int x = 0; ok && x < n; ++x)
      for (int s = 0; s < m; ++s) {
        int ind = 0;
        for (int a = 0; a < k; ++a) ind += left[a] == x && right[a] == s && f[a] == a;
        ok = ok && t(s, x) == Rational(ind);
      }
    if (!ok) {
      r.fail("linearized trial " + std::to_string(trial));
      return r;
    }
  }
  r.note("100 linearized span endomorphisms");
  return r;
}

Result trace_laws() {
  Result r;
  for (auto law : {LawId::Tightening, LawId::Sliding, LawId::Unit, LawId::Composition, LawId::Mate})
    run_law(r, law, 200, applicable_instances(law));
  return r;
}

Result appendix() {
  Result r;
  for (auto law : {LawId::ThetaAddition, LawId::ThetaTupleNaturality, LawId::ThetaCombination})
    run_law(r, law, 500, applicable_instances(law));
  run_law(r, LawId::Deformation, 1000, applicable_instances(LawId::Deformation));
  run_law(r, LawId::TraceDiagram, 200, applicable_instances(LawId::TraceDiagram));
  return r;
}

Result functoriality() {
  Result r;
  absorb(r, verify_law(LawId::Functoriality, InstanceId::Span, 100, kSeed));
  absorb(r, verify_law(LawId::Functoriality, InstanceId::GRBimodZ, 100, kSeed));
  r.note("100 spans, 100 group-ring inputs");
  return r;
}

Result two_functoriality() {
  Result r;
  run_law(r, LawId::DualsInvert, 100, {InstanceId::GRBimodZ});
  run_law(r, LawId::Cube, 50, {InstanceId::GRBimodZ});
  return r;
}

Result reidemeister_lefschetz() {
  Result r;
  run_law(r, LawId::Augmentation, 100, {InstanceId::GRBimodZ});
  Rng rng(kSeed);
  auto trivial = make_group(FiniteGroup::trivial());
  for (int trial = 0; trial < 100; ++trial) {
    const Ring ring = trial % 2 ? Ring::Q : Ring::Z;
    auto c = random_complex(rng, trivial, identity_map(*trivial), ring, 3, 3);
    auto x = reidemeister(c);
    if (x.coeff.size() != 1 || x.coeff[0] != lefschetz(c)) {
      r.fail("trivial-group trial " + std::to_string(trial) + ": " + x.describe() + " vs " + lefschetz(c).str());
      return r;
    }
  }
  r.note("100 trivial-group complexes");
  return r;
}

Result regular_character() {
  Result r;
  GRBimod b;
  for (auto group : {FiniteGroup::cyclic(2), FiniteGroup::symmetric3()}) {
    auto g = make_group(group);
    GroupCell G{g, Ring::Q}, one{make_group(FiniteGroup::trivial()), Ring::Q};
    auto V = GRBimod::regular_representation(G, one);
    auto chi = euler(b, make_dual(b, b.letter(V))).dense();
    // The shadow of the unit at G is presented on the group elements.
    if (chi.rows() != 1 || chi.cols() != g->order()) {
      r.fail(g->name() + " shape");
      continue;
    }
    for (int x = 0; x < g->order(); ++x) {
      // Σ of the diagonal of λ(x), and the count of y with x y = y.
      Rational diagonal = 0;
      for (Index i = 0; i < V.rank(); ++i) diagonal += V.action(x).at(one.group->identity(), i, i);
      int fixed = 0;
      for (int y = 0; y < g->order(); ++y) fixed += g->mul(x, y) == y;
      if (chi(0, x) != diagonal || chi(0, x) != Rational(fixed))
        r.fail(g->name() + " element " + std::to_string(x) + ": " + chi(0, x).str());
    }
    if (g->order() == 2) {
      if (chi(0, 0) != Rational(2) || chi(0, 1) != Rational(0)) r.fail("Z2 character is not (2, 0)");
      r.note("Z2 character (" + chi(0, 0).str() + ", " + chi(0, 1).str() + ")");
    }
  }
  return r;
}

}  // namespace

// With arguments, runs only the listed criterion numbers.
int main(int argc, char** argv) {
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"axioms: hexagon, units, theta involution", axioms},
      {"one-object matrix trace is the diagonal sum", matmod_trace_oracle},
      {"span traces and linearized fixed points", span_traces},
      {"trace laws", trace_laws},
      {"theta laws, deformation invariance, trace diagrams", appendix},
      {"functoriality of traces", functoriality},
      {"duals invert and the trace cube", two_functoriality},
      {"Reidemeister trace against Lefschetz number", reidemeister_lefschetz},
      {"character of the regular representation", regular_character},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 300) r.fail("took " + std::to_string(secs) + "s");
    failures += !r.ok;
    std::printf("%s %zu %s (%.1fs): %s\n", r.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                r.detail.c_str());
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
