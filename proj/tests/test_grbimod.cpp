#include "shadowtrace/grbimod.hpp"
#include "shadowtrace/trace.hpp"

#include <gtest/gtest.h>

using namespace shadowtrace;

namespace {

GroupCell cell(FiniteGroup g, Ring k = Ring::Z) { return {make_group(std::move(g)), k}; }

}  // namespace

TEST(GRBimod, UnitShadowCountsConjugacyClasses) {
  GRBimod b;
  auto z2 = cell(FiniteGroup::cyclic(2));
  auto s = b.shadow(b.unit(z2));
  EXPECT_EQ(s.free_rank(), 2);
  EXPECT_TRUE(s.torsion().empty());
  auto s3 = cell(FiniteGroup::symmetric3());
  EXPECT_EQ(b.shadow(b.unit(s3)).free_rank(), 3);
}

TEST(GRBimod, DualsSatisfyTriangles) {
  GRBimod b;
  auto one = cell(FiniteGroup::trivial());
  auto s3 = cell(FiniteGroup::symmetric3());
  auto m = b.letter(GRBimod::free_module(one, s3, 2));
  EXPECT_NO_THROW(make_dual(b, m));
  auto v = b.letter(GRBimod::regular_representation(s3, one));
  EXPECT_NO_THROW(make_dual(b, v));
}

TEST(GRBimod, RegularCharacter) {
  GRBimod b;
  auto one = cell(FiniteGroup::trivial(), Ring::Q);
  auto z2 = cell(FiniteGroup::cyclic(2), Ring::Q);
  auto v = b.letter(GRBimod::regular_representation(z2, one));
  auto chi = euler(b, make_dual(b, v)).dense();
  ASSERT_EQ(chi.rows(), 1);
  ASSERT_EQ(chi.cols(), 2);
  EXPECT_EQ(chi(0, 0), Rational(2));
  EXPECT_EQ(chi(0, 1), Rational(0));
}
