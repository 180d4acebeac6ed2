#include "shadowtrace/laws.hpp"
#include "shadowtrace/matmod.hpp"
#include "shadowtrace/samplers.hpp"
#include "shadowtrace/trace.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace shadowtrace;

namespace {

void expect_clean(const LawReport& r) {
  EXPECT_TRUE(r.failures.empty()) << r.summary() << ": trial " << r.failures.front().trial << " seed "
                                  << r.failures.front().seed << ": " << r.failures.front().detail;
  EXPECT_GT(r.passed, r.trials / 2) << r.summary();
}

}  // namespace

TEST(LawNames, RoundTrip) {
  std::set<std::string> seen;
  for (auto law : all_laws()) {
    auto name = law_name(law);
    EXPECT_TRUE(seen.insert(name).second) << name;
    EXPECT_EQ(parse_law(name), law);
  }
  for (auto inst : all_instances()) EXPECT_EQ(parse_instance(instance_name(inst)), inst);
  EXPECT_EQ(parse_instance("matmod"), InstanceId::MatModZ);
  EXPECT_FALSE(parse_law("hexagons").has_value());
  EXPECT_EQ(default_instance(LawId::Cube), InstanceId::GRBimodZ);
}

TEST(LawSeeds, DistinctAndStable) {
  std::set<std::uint64_t> seeds;
  for (int t = 0; t < 1000; ++t) seeds.insert(trial_seed(7, t));
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_EQ(trial_seed(7, 3), trial_seed(7, 3));
  EXPECT_NE(trial_seed(7, 3), trial_seed(8, 3));
}

TEST(LawReports, IndependentOfThreadCount) {
  auto a = verify_law(LawId::Mate, InstanceId::Span, 40, 11, 1);
  auto b = verify_law(LawId::Mate, InstanceId::Span, 40, 11, 8);
  EXPECT_EQ(a.passed, b.passed);
  EXPECT_EQ(a.skipped, b.skipped);
  EXPECT_EQ(a.failures.size(), b.failures.size());
}

TEST(LawReports, InapplicableLawFails) {
  auto r = verify_law(LawId::Cube, InstanceId::Span, 3, 1);
  EXPECT_EQ(r.failures.size(), 3u);
  EXPECT_FALSE(r.ok());
}

TEST(Axioms, AllInstances) {
  for (auto inst : all_instances())
    for (const auto& r : check_axioms(inst, 60, 1)) expect_clean(r);
}

TEST(TraceLaws, AllInstances) {
  for (auto law : {LawId::Cyclicity, LawId::Tightening, LawId::Sliding, LawId::Unit, LawId::Composition, LawId::Mate,
                   LawId::DualIndependence})
    for (auto inst : all_instances()) expect_clean(verify_law(law, inst, 40, 2));
}

TEST(DiagramLaws, AllInstances) {
  for (auto law : {LawId::ThetaAddition, LawId::ThetaTupleNaturality, LawId::ThetaCombination, LawId::Deformation,
                   LawId::TraceDiagram})
    for (auto inst : all_instances()) expect_clean(verify_law(law, inst, 40, 3));
}

TEST(FunctorLaws, ApplicableInstances) {
  for (auto law : {LawId::Functoriality, LawId::Coherence, LawId::DualsInvert, LawId::Cube, LawId::Augmentation})
    for (auto inst : all_instances())
      if (applicable(law, inst)) expect_clean(verify_law(law, inst, 10, 4));
}

TEST(Mate, IdentityMatesToIdentityOnDual) {
  MatModSampler<Rational> s;
  const auto& b = s.instance();
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    auto R = s.zero(rng), S = s.zero(rng);
    auto d = make_dual(b, b.letter(s.dualizable(rng, R, S)));
    EXPECT_TRUE(b.equal(mate(b, b.identity(d.M), d, d), b.identity(d.Mdual)));
  }
}

TEST(Mate, MateAndUnmateAreInverse) {
  MatModSampler<Integer> s;
  const auto& b = s.instance();
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    auto R = s.zero(rng), S = s.zero(rng);
    auto d = make_dual(b, b.letter(s.dualizable(rng, R, S)));
    auto f = s.map(rng, d.M, d.M);
    ASSERT_TRUE(f);
    EXPECT_TRUE(b.equal(unmate(b, mate(b, *f, d, d), d, d), *f));
  }
}

TEST(Mate, MatrixMateIsTranspose) {
  MatMod<Rational> b;
  FinSet one{"1", 1};
  auto M = b.letter(RankCell(one, one, {2}));
  Matrix<Rational> a(2, 2);
  a << 1, 2, 3, 4;
  auto f = b.make(M, M, {a});
  auto d = make_dual(b, M);
  auto m = mate(b, f, d, d);
  EXPECT_TRUE(b.dense(m) == Matrix<Rational>(a.transpose()));
}
