#include <gtest/gtest.h>

#include "fwps/reflexivity.hpp"
#include "fwps/verify.hpp"
#include "oracles.hpp"

using namespace fwps;

namespace {

DegreeMatrix q(const std::string& literal, bool validate = true) {
  return degree_matrix_from_literal(parse_degree_literal(literal), validate);
}

mpq_class pair(const RationalVector& u, const IntMatrix& p, size_t c) {
  mpq_class s = 0;
  for (size_t r = 0; r < p.rows(); ++r) s += u[r] * p(r, c).to_mpz();
  return s;
}

const IntMatrix kPlane = IntMatrix::from_rows({{1, 0, -1}, {0, 1, -1}});
// Generator matrix with a non-primitive second column, as given for the
// Z + Z/4 example with weights (1,1,1,4).
const IntMatrix kGolden = IntMatrix::from_rows({{1, -2, 1, 0}, {-2, -2, 0, 1}, {-3, 2, 1, 0}});

}  // namespace

TEST(FacetDuals, PlaneExample) {
  const auto d = facet_duals(GeneratorMatrix(kPlane));
  ASSERT_EQ(d.duals.size(), 3u);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      if (j != i) EXPECT_EQ(pair(d.duals[i], kPlane, j), -1);
}

TEST(FacetDuals, QuotientOfPlane) {
  const IntMatrix p = IntMatrix::from_rows({{1, 1, -2}, {1, -2, 1}});
  const auto d = facet_duals(p);
  EXPECT_EQ(d.duals[0], (RationalVector{1, 1}));
  EXPECT_EQ(pair(d.duals[0], p, 1), -1);
  EXPECT_EQ(pair(d.duals[0], p, 2), -1);
}

TEST(FacetDuals, RejectsDegenerateInput) {
  EXPECT_THROW(facet_duals(IntMatrix::from_rows({{1, 1, -1}, {0, 0, -1}})), std::invalid_argument);
  EXPECT_THROW(facet_duals(IntMatrix::from_rows({{1, 0}, {0, 1}})), std::invalid_argument);
}

TEST(Reflexive, Examples) {
  EXPECT_TRUE(is_reflexive(GeneratorMatrix(kPlane)));
  EXPECT_FALSE(is_reflexive(facet_duals(kGolden), kGolden));
  EXPECT_THROW(GeneratorMatrix{kGolden}, std::invalid_argument);
  EXPECT_FALSE(is_reflexive(generator_from_degree(q("1,1,3"))));
  EXPECT_TRUE(is_reflexive(generator_from_degree(q("1,1,1;0,1,2@3"))));
}

TEST(Reflexive, GoldenDegreeMatrixHasNoGeneratorMatrix) {
  EXPECT_THROW(generator_from_degree(q("1,1,1,4;0,1,2,2@4", false)), std::invalid_argument);
}

TEST(CrossCheck, Examples) {
  EXPECT_TRUE(cross_check(q("1,1,2")));
  EXPECT_TRUE(cross_check(q("1,1,1;0,1,2@3")));
  EXPECT_TRUE(cross_check(q("1,1,3")));
  EXPECT_TRUE(cross_check(q("2,3,5")));
}

TEST(CrossCheck, RandomGeneratorMatrices) {
  oracle::Rng rng(51);
  size_t tried = 0, reflexive = 0;
  while (tried < 2000) {
    const size_t n = oracle::uniform(rng, 2, 4);
    IntMatrix m(n, n + 1);
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c <= n; ++c) m(r, c) = oracle::uniform(rng, -2, 2);
    std::optional<GeneratorMatrix> p;
    try {
      p.emplace(m);
    } catch (const std::invalid_argument&) {
      continue;
    }
    ++tried;
    const bool refl = is_reflexive(*p);
    reflexive += refl;
    EXPECT_EQ(is_gorenstein(degree_from_generator(*p)), refl) << m.to_string();
  }
  EXPECT_GT(reflexive, 0u);
}

TEST(CrossCheck, GorensteinIffReflexiveOnClassification) {
  const auto o = oracle::gorenstein_vs_reflexive(3);
  EXPECT_TRUE(o.ok) << o.detail;
}
