#include <gtest/gtest.h>

#include <set>

#include "fwps/torsion.hpp"
#include "oracles.hpp"

using namespace fwps;

namespace {

std::vector<IntVector> entries(const std::vector<TorsionVector>& ts) {
  std::vector<IntVector> out;
  for (const auto& t : ts) out.push_back(t.entries);
  return out;
}

std::set<int64_t> orders(const WeightVector& w) {
  std::set<int64_t> out;
  for (const auto& p : admissible_order_pairs(w)) out.insert(p.order().to_int64());
  return out;
}

std::vector<IntVector> by_order(const WeightVector& w, int64_t mu) {
  std::vector<IntVector> out;
  for (const auto& p : admissible_order_pairs(w))
    if (p.order() == Integer(mu))
      for (auto& e : entries(minimal_torsion_vectors(w, p))) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

TorsionVector tv(WeightVector w, IntVector eta, int64_t mu) { return {mu, std::move(eta), std::move(w)}; }

}  // namespace

TEST(OrderPairs, Examples) {
  EXPECT_EQ(orders({1, 1, 1}), (std::set<int64_t>{3}));
  for (int64_t mu : orders({1, 1, 2})) EXPECT_TRUE(mu == 2 || mu == 4);
  for (const auto& p : admissible_order_pairs({1, 2, 3})) EXPECT_EQ(p.b, Integer(1));
}

TEST(OrderPairs, FactorShape) {
  for (const auto& w : enumerate_gorenstein_weights(4)) {
    Integer l = 1, s = 0;
    for (const auto& x : w) {
      l = lcm(l, x);
      s += x;
    }
    for (const auto& p : admissible_order_pairs(w)) {
      EXPECT_TRUE(divides(p.a, l));
      EXPECT_TRUE(divides(p.b, s / l));
      EXPECT_GE(p.order(), Integer(2));
      EXPECT_TRUE(divides(p.order(), s));
    }
  }
}

TEST(MinimalTorsion, Examples) {
  EXPECT_EQ(by_order({1, 1, 1}, 3), (std::vector<IntVector>{{0, 1, 2}}));
  EXPECT_EQ(by_order({1, 1, 2}, 2), (std::vector<IntVector>{{0, 1, 1}}));
  EXPECT_EQ(by_order({1, 1, 1, 1}, 2), (std::vector<IntVector>{{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}}));
}

TEST(MinimalTorsion, ExhaustiveOracleExamples) {
  EXPECT_EQ(oracle::exhaustive_minimal_torsion({1, 1, 1}, 3), (std::vector<IntVector>{{0, 1, 2}}));
  EXPECT_EQ(oracle::exhaustive_minimal_torsion({1, 1, 2}, 2), (std::vector<IntVector>{{0, 1, 1}}));
}

TEST(MinimalTorsion, MatchesExhaustiveScan) {
  const auto o = oracle::torsion_vs_exhaustive(3, 12);
  EXPECT_TRUE(o.ok) << o.detail;
  EXPECT_GT(o.cases, 100u);
}

TEST(MinimalTorsion, PrunedEqualsUnpruned) {
  for (size_t n = 1; n <= 3; ++n)
    for (const auto& w : enumerate_gorenstein_weights(n))
      for (const auto& p : admissible_order_pairs(w)) {
        auto a = entries(minimal_torsion_vectors(w, p)), b = entries(minimal_torsion_vectors_unpruned(w, p));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        EXPECT_EQ(a, b);
      }
}

TEST(MinimalTorsion, EveryOutputSatisfiesThePredicates) {
  for (const auto& w : enumerate_gorenstein_weights(4))
    for (const auto& p : admissible_order_pairs(w))
      for (const auto& t : minimal_torsion_vectors(w, p)) {
        EXPECT_TRUE(is_minimal(t));
        EXPECT_TRUE(is_gorenstein_torsion(t));
        const auto d = minimality_bounds(w, t.order);
        for (size_t i = 0; i < w.size(); ++i) EXPECT_LT(t.entries[i], d[i]);
      }
}

TEST(Minimality, Examples) {
  EXPECT_TRUE(is_minimal(tv({1, 1, 1}, {0, 1, 2}, 3)));
  EXPECT_FALSE(is_minimal(tv({1, 1, 1}, {0, 2, 1}, 3)));
  EXPECT_FALSE(is_minimal(tv({1, 1, 2}, {1, 0, 1}, 2)));
  EXPECT_EQ(minimality_bounds({1, 1, 1}, 3), (IntVector{1, 3, 3}));
  EXPECT_EQ(scale_torsion({0, 1, 2}, 2, 3), (IntVector{0, 2, 1}));
  EXPECT_EQ(units_mod(12), (std::vector<Integer>{1, 5, 7, 11}));
}

TEST(GorensteinTorsion, Examples) {
  EXPECT_TRUE(is_gorenstein_torsion(tv({1, 1, 1}, {0, 1, 2}, 3)));
  EXPECT_FALSE(is_gorenstein_torsion(tv({1, 1, 1}, {0, 0, 0}, 3)));
  EXPECT_FALSE(is_gorenstein_torsion(tv({1, 1, 1}, {0, 1, 1}, 2)));
}
