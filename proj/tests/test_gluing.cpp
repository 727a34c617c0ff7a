#include <gtest/gtest.h>

#include <set>

#include "fwps/gluing.hpp"
#include "fwps/normal_form.hpp"
#include "fwps/reflexivity.hpp"
#include "fwps/verify.hpp"
#include "oracles.hpp"

using namespace fwps;

namespace {

DegreeMatrix q(const std::string& literal) { return degree_matrix_from_literal(parse_degree_literal(literal)); }
TorsionVector tv(WeightVector w, IntVector eta, int64_t mu) { return {mu, std::move(eta), std::move(w)}; }

std::set<std::string> forms(const std::vector<DegreeMatrix>& ds) {
  std::set<std::string> out;
  for (const auto& d : ds) out.insert(normal_form(generator_from_degree(d), d.weights()).bytes);
  return out;
}

std::set<std::string> forms(const std::vector<AssembledClass>& cs, const WeightVector& w) {
  std::set<std::string> out;
  for (const auto& c : cs) out.insert(lattice_normal_form(c.lattice, w).bytes);
  return out;
}

}  // namespace

TEST(Extend, Examples) {
  const auto a = extend_degree_matrix(q("1,1,1"), tv({1, 1, 1}, {0, 1, 2}, 3));
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->group(), InvariantFactorGroup(1, {3}));
  EXPECT_TRUE(extend_degree_matrix(q("1,1,1,1;0,0,1,1@2"), tv({1, 1, 1, 1}, {0, 1, 0, 1}, 2)).has_value());
  EXPECT_FALSE(extend_degree_matrix(q("1,1,1;0,1,2@3"), tv({1, 1, 1}, {0, 1, 1}, 2)).has_value());
  EXPECT_THROW(extend_degree_matrix(q("1,1,1"), tv({1, 1, 1}, {0, 1}, 3)), std::invalid_argument);
  EXPECT_THROW(extend_degree_matrix(q("1,1,1"), tv({1, 1, 1}, {0, 1, 3}, 3)), std::invalid_argument);
}

TEST(Extend, ResultIsDegreeMatrixWithSameKernelAsLiteralStack) {
  const auto ext = extend_degree_matrix(q("1,1,1,1;0,0,1,1@2"), tv({1, 1, 1, 1}, {0, 1, 0, 1}, 2));
  ASSERT_TRUE(ext.has_value());
  EXPECT_TRUE(failing_column_subset(ext->group(), ext->columns()).empty());
  EXPECT_TRUE(is_reflexive(generator_from_degree(*ext)));
}

TEST(Assemble, Examples) {
  const WeightVector w{1, 1, 1};
  const auto pool = make_pool(w, {tv(w, {0, 1, 2}, 3)});
  const auto all = assemble_all(w, pool);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0], q("1,1,1"));
  EXPECT_EQ(all[1], q("1,1,1;0,1,2@3"));

  const WeightVector w2{1, 1, 2};
  const auto all2 = assemble_all(w2, torsion_pool(w2));
  EXPECT_NE(std::find(all2.begin(), all2.end(), q("1,1,2")), all2.end());
  EXPECT_NE(std::find(all2.begin(), all2.end(), q("1,1,2;0,1,1@2")), all2.end());

  const WeightVector w4{1, 1, 1, 1};
  bool depth_two = false;
  for (const auto& d : assemble_all(w4, torsion_pool(w4))) {
    if (d.group().torsion_count() == 2 && d.group().factor(1) == Integer(2)) {
      depth_two = true;
      EXPECT_TRUE(is_reflexive(generator_from_degree(d)));
    }
  }
  EXPECT_TRUE(depth_two);
}

TEST(Assemble, RejectsForeignPool) {
  EXPECT_THROW(assemble_all({1, 1, 2}, torsion_pool({1, 1, 1})), std::invalid_argument);
  EXPECT_THROW(assemble_lattices({1, 1, 2}, torsion_pool({1, 1, 1})), std::invalid_argument);
  EXPECT_THROW(make_pool({1, 1, 2}, {tv({1, 1, 1}, {0, 1, 2}, 3)}), std::invalid_argument);
}

TEST(Assemble, PoolIsOrderedAndDuplicateFree) {
  for (const auto& w : enumerate_gorenstein_weights(4)) {
    const auto pool = torsion_pool(w);
    for (size_t i = 1; i < pool.rows.size(); ++i) {
      const auto& a = pool.rows[i - 1];
      const auto& b = pool.rows[i];
      EXPECT_TRUE(a.order > b.order || (a.order == b.order && a.entries < b.entries));
    }
    // Two pairs may share mu = a*b, but a is read off the vector, so no
    // vector is produced by two pairs.
    std::set<std::pair<Integer, IntVector>> seen;
    size_t total = 0;
    for (const auto& p : admissible_order_pairs(w))
      for (const auto& t : minimal_torsion_vectors(w, p)) {
        seen.insert({t.order, t.entries});
        ++total;
      }
    EXPECT_EQ(seen.size(), total);
    EXPECT_EQ(pool.rows.size(), total);
  }
}

TEST(Assemble, EveryStackIsGorensteinAndValid) {
  for (size_t n = 2; n <= 3; ++n)
    for (const auto& w : enumerate_gorenstein_weights(n))
      for (const auto& d : assemble_all(w, torsion_pool(w))) {
        EXPECT_TRUE(failing_column_subset(d.group(), d.columns()).empty()) << d.to_string();
        EXPECT_TRUE(is_gorenstein(d)) << d.to_string();
      }
}

TEST(Assemble, PruningDoesNotChangeOutput) {
  for (size_t n = 1; n <= 3; ++n)
    for (const auto& w : enumerate_gorenstein_weights(n)) {
      const auto pool = torsion_pool(w);
      EXPECT_EQ(assemble_all(w, pool, true), assemble_all(w, pool, false));
    }
}

TEST(Assemble, StreamingMatchesCollected) {
  const WeightVector w{1, 1, 1, 1};
  const auto pool = torsion_pool(w);
  std::vector<DegreeMatrix> streamed;
  const size_t visited = for_each_assembled(w, pool, [&](const DegreeMatrix& d) { streamed.push_back(d); });
  EXPECT_EQ(visited, streamed.size());
  EXPECT_EQ(streamed, assemble_all(w, pool));
}

TEST(Lattices, SameClassesAsLiteralStacking) {
  for (size_t n = 1; n <= 4; ++n)
    for (const auto& w : enumerate_gorenstein_weights(n)) {
      const auto pool = torsion_pool(w);
      const auto lattices = assemble_lattices(w, pool);
      EXPECT_EQ(forms(lattices, w), forms(assemble_all(w, pool))) << "n=" << n;
      // One entry per kernel lattice, and the stored matrix is its kernel.
      std::set<std::string> kernels;
      for (const auto& c : lattices) {
        EXPECT_TRUE(kernels.insert(encode_canonical(c.lattice)).second);
        EXPECT_EQ(hermite(generator_from_degree(c.degree).matrix()).form, c.lattice);
      }
    }
}

TEST(Lattices, CompleteAgainstSublatticeScan) {
  for (size_t n = 1; n <= 3; ++n)
    for (const auto& w : enumerate_gorenstein_weights(n)) {
      std::set<std::string> got;
      for (const auto& r : classify_shard(w)) got.insert(r.normal.bytes);
      EXPECT_EQ(got, oracle::lattice_classes(w));
    }
}
