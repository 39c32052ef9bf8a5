#include "l1adm/prox.hpp"
#include "support/checks.hpp"

#include <gtest/gtest.h>

using namespace l1adm;
using namespace l1adm::test;

TEST(Prox, ShrinkKnownValues)
{
  CVector v(5);
  v << Complex(3, 4), Complex(-2, 0), Complex(0.5, 0), Complex(0, 0), Complex(0, -1.5);
  CVector const s = shrink(v, 1.0);
  EXPECT_NEAR(std::abs(s[0] - Complex(2.4, 3.2)), 0.0, 1e-15);
  EXPECT_EQ(s[1], Complex(-1, 0));
  EXPECT_EQ(s[2], Complex(0, 0));
  EXPECT_EQ(s[3], Complex(0, 0));
  EXPECT_NEAR(std::abs(s[4] - Complex(0, -0.5)), 0.0, 1e-15);
  EXPECT_EQ(shrink(v, 0.0), v);
}

TEST(Prox, WeightedShrinkUsesPerComponentThreshold)
{
  CVector v(3);
  v << 2.0, -2.0, 2.0;
  RVector t(3);
  t << 0.5, 1.0, 3.0;
  CVector const s = shrink(v, t);
  EXPECT_EQ(s[0], Complex(1.5));
  EXPECT_EQ(s[1], Complex(-1.0));
  EXPECT_EQ(s[2], Complex(0.0));
}

TEST(Prox, ProjectionsOfInteriorPointsAreIdentity)
{
  CVector v(2);
  v << Complex(0.1, 0.2), Complex(-0.3, 0);
  EXPECT_EQ(project_linf_ball(v), v);
  EXPECT_EQ(project_l2_ball(v, 1.0), v);
  EXPECT_EQ(shrink_l2(v, 1.0), CVector::Zero(2));
  EXPECT_EQ(project_l2_ball(v, 0.0), CVector::Zero(2));
}

TEST(Prox, HalfspaceLeavesImaginaryPart)
{
  CVector v(2);
  v << Complex(3.0, -7.0), Complex(-4.0, 2.0);
  CVector const p = project_halfspace_F(v);
  EXPECT_EQ(p[0], Complex(1.0, -7.0));
  EXPECT_EQ(p[1], Complex(-4.0, 2.0));
}

TEST(Prox, DualSetSplitsHalfspaceAndBall)
{
  CVector v(3);
  v << Complex(5, 1), Complex(-5, 0), Complex(0, 3);
  RVector w = RVector::Constant(3, 2.0);
  DualSet const set{w, 1};
  CVector const p = set.project(v);
  EXPECT_EQ(p[0], Complex(2, 1));
  EXPECT_EQ(p[1], Complex(-2, 0));
  EXPECT_EQ(p[2], Complex(0, 2));
  EXPECT_TRUE(set.contains(p));
  EXPECT_FALSE(set.contains(v));
}

TEST(Prox, RejectsBadParameters)
{
  CVector const v = CVector::Ones(3);
  EXPECT_THROW(shrink(v, -1.0), InvalidParameter);
  EXPECT_THROW(shrink(v, RVector::Ones(2)), DimensionMismatch);
  EXPECT_THROW(project_l2_ball(v, -1.0), InvalidParameter);
  EXPECT_THROW(project_linf_ball(v, RVector::Zero(3)), InvalidParameter);
  EXPECT_THROW((DualSet{RVector::Ones(3), 4}.project(v)), InvalidParameter);
}

TEST(ProxProperties, NonExpansive)
{
  PropertyReport const r = check_nonexpansive(1000, 101);
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
}

TEST(ProxProperties, ResultsLieInTheSet)
{
  PropertyReport const r = check_membership(1000, 102);
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
}

TEST(ProxProperties, VariationalInequality)
{
  PropertyReport const r = check_variational(1000, 103);
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
}

TEST(ProxProperties, GridSearchOracle)
{
  PropertyReport const r = check_grid_oracle(1000, 104);
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
}
