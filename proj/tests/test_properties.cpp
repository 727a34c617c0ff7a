#include <gtest/gtest.h>

#include "oracles.hpp"

TEST(Property, GMatrixCompositionLaw) {
  const auto o = oracle::gmatrix_composition(10000, 101);
  EXPECT_TRUE(o.ok) << o.detail;
  EXPECT_EQ(o.cases, 10000u);
}

TEST(Property, FactorizationRoundTrip) {
  const auto o = oracle::factor_round_trip(1000, 102);
  EXPECT_TRUE(o.ok) << o.detail;
  EXPECT_EQ(o.cases, 1000u);
}

TEST(Property, GenerationMatchesClosure) {
  const auto o = oracle::generation_vs_closure(10, 103);
  EXPECT_TRUE(o.ok) << o.detail;
}

TEST(Property, MinimalTorsionMatchesExhaustiveScan) {
  const auto o = oracle::torsion_vs_exhaustive(3, 12);
  EXPECT_TRUE(o.ok) << o.detail;
}

TEST(Property, NormalFormInvariance) {
  const auto o = oracle::normal_form_invariance(1000, 104);
  EXPECT_TRUE(o.ok) << o.detail;
  EXPECT_EQ(o.cases, 1000u);
}

TEST(Property, GorensteinIffReflexiveUpToDimensionFour) {
  const auto o = oracle::gorenstein_vs_reflexive(4);
  EXPECT_TRUE(o.ok) << o.detail;
  EXPECT_EQ(o.cases, 5u + 48u + 1561u);
}

TEST(Property, ClosureOracleSanity) {
  using namespace fwps;
  const InvariantFactorGroup g(1, {2});
  const std::vector<GroupElement> yes{make_element(g, {1}, {0}), make_element(g, {0}, {1})};
  const std::vector<GroupElement> no{make_element(g, {2}, {0}), make_element(g, {0}, {1})};
  EXPECT_TRUE(oracle::closure_generates(yes, g, 3));
  EXPECT_FALSE(oracle::closure_generates(no, g, 3));
}
