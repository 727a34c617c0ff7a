#include <gtest/gtest.h>

#include <numeric>

#include "fwps/abelian.hpp"
#include "oracles.hpp"

using namespace fwps;

namespace {

const InvariantFactorGroup kZ4(1, {4});

GroupElement el(const InvariantFactorGroup& g, IntVector f, IntVector t) { return make_element(g, f, t); }

GMatrix gm(const InvariantFactorGroup& g, ElementaryKind k, size_t i, size_t j, int64_t c) {
  return elementary_automorphism(g, {k, i, j, c});
}

}  // namespace

TEST(Group, RejectsBadFactors) {
  EXPECT_THROW(InvariantFactorGroup(1, {2, 4}), std::invalid_argument);
  EXPECT_THROW(InvariantFactorGroup(1, {1}), std::invalid_argument);
  EXPECT_NO_THROW(InvariantFactorGroup(0, {12, 6, 2}));
  EXPECT_THROW(kZ4.with_factor(3), std::invalid_argument);
  EXPECT_EQ(kZ4.with_factor(2), InvariantFactorGroup(1, {4, 2}));
}

TEST(Group, ElementsAreReduced) {
  const auto e = el(kZ4, {5}, {-1});
  EXPECT_EQ(e.torsion, IntVector{3});
  EXPECT_TRUE(belongs_to(e, kZ4));
  EXPECT_FALSE(belongs_to(GroupElement{{1}, {4}}, kZ4));
}

TEST(GMatrix, FromEndomorphismExamples) {
  const InvariantFactorGroup z(1, {});
  const std::vector<GroupElement> one{el(z, {1}, {})};
  EXPECT_EQ(GMatrix::from_endomorphism(one, z).entries(), IntMatrix::identity(1));

  const std::vector<GroupElement> id{el(kZ4, {1}, {0}), el(kZ4, {0}, {1})};
  EXPECT_EQ(GMatrix::from_endomorphism(id, kZ4), GMatrix::identity(kZ4));

  const InvariantFactorGroup t(0, {4, 2});
  const std::vector<GroupElement> ok{el(t, {}, {0, 1}), el(t, {}, {2, 1})};
  EXPECT_NO_THROW(GMatrix::from_endomorphism(ok, t));
  // Z/2 generator sent to an element of order 4.
  const std::vector<GroupElement> bad{el(t, {}, {0, 1}), el(t, {}, {1, 0})};
  EXPECT_THROW(GMatrix::from_endomorphism(bad, t), std::invalid_argument);
  // Torsion generator sent to a free element.
  const std::vector<GroupElement> freebad{el(kZ4, {1}, {0}), el(kZ4, {1}, {0})};
  EXPECT_THROW(GMatrix::from_endomorphism(freebad, kZ4), std::invalid_argument);
}

TEST(GMatrix, ApplyExamples) {
  const auto w = el(kZ4, {7}, {2});
  EXPECT_EQ(GMatrix::identity(kZ4).apply(w), w);
  EXPECT_EQ(gm(kZ4, ElementaryKind::FreeToTorsion, 0, 0, 1).apply(el(kZ4, {3}, {1})), el(kZ4, {3}, {0}));
  EXPECT_EQ(gm(kZ4, ElementaryKind::TorsionUnit, 0, 0, 3).apply(el(kZ4, {2}, {3})), el(kZ4, {2}, {1}));
}

TEST(GMatrix, ProductExamples) {
  const GMatrix beta = gm(kZ4, ElementaryKind::FreeToTorsion, 0, 0, 1);
  const GMatrix psi = gm(kZ4, ElementaryKind::FreeSign, 0, 0, 0);
  EXPECT_EQ(beta * GMatrix::identity(kZ4), beta);
  EXPECT_EQ(psi * psi, GMatrix::identity(kZ4));
  EXPECT_EQ((beta * psi).apply(el(kZ4, {1}, {0})), el(kZ4, {-1}, {3}));
}

TEST(GMatrix, CompositionLawRandom) {
  const auto o = oracle::gmatrix_composition(2000, 21);
  EXPECT_TRUE(o.ok) << o.detail;
}

TEST(Elementary, InversesCancel) {
  oracle::Rng rng(22);
  for (const auto& g : oracle::small_groups(3, 12)) {
    for (int t = 0; t < 5; ++t) {
      const auto e = oracle::random_elementary(g, rng);
      const GMatrix m = elementary_automorphism(g, e);
      EXPECT_EQ(m * elementary_inverse(g, e), GMatrix::identity(g));
      EXPECT_EQ(elementary_automorphism(g, inverse(g, e)) * m, GMatrix::identity(g));
    }
  }
}

TEST(CoprimeShift, Examples) {
  EXPECT_EQ(coprime_shift(0, 1, 5), Integer(1));
  EXPECT_EQ(coprime_shift(2, 3, 4), Integer(1));
  EXPECT_EQ(coprime_shift(6, 10, 15), Integer(1));
  EXPECT_EQ(coprime_shift(1, 0, 7), Integer(0));
  EXPECT_THROW(coprime_shift(2, 4, 6), std::invalid_argument);
  EXPECT_THROW(coprime_shift(1, 1, 0), std::invalid_argument);
}

TEST(CoprimeShift, MatchesSmallestShift) {
  for (int64_t a = -30; a <= 30; ++a)
    for (int64_t b = -30; b <= 30; ++b)
      for (int64_t c = -30; c <= 30; ++c) {
        if (c == 0 || std::gcd(std::gcd(a, b), c) != 1) continue;
        int64_t k = 0;
        while (std::gcd(a + k * b, c) != 1) ++k;
        ASSERT_EQ(coprime_shift(a, b, c), Integer(k)) << a << " " << b << " " << c;
      }
}

TEST(Generation, Examples) {
  const InvariantFactorGroup z(1, {});
  const std::vector<GroupElement> a{el(z, {1}, {})};
  EXPECT_TRUE(is_generating(a, z));
  const InvariantFactorGroup z3(1, {3});
  const std::vector<GroupElement> b{el(z3, {1}, {0}), el(z3, {1}, {1})};
  EXPECT_TRUE(is_generating(b, z3));
  const InvariantFactorGroup z2(1, {2});
  const std::vector<GroupElement> c{el(z2, {1}, {0}), el(z2, {1}, {0})};
  EXPECT_FALSE(is_generating(c, z2));
  const std::vector<GroupElement> d{el(z, {2}, {}), el(z, {3}, {})};
  EXPECT_TRUE(is_generating(d, z));
}

TEST(Generation, MinorsAgreeWithSmithAndClosure) {
  oracle::Rng rng(23);
  for (const auto& g : oracle::small_groups(3, 8))
    for (int t = 0; t < 10; ++t) {
      std::vector<GroupElement> els;
      for (int i = 0, m = oracle::uniform(rng, 1, 4); i < m; ++i) els.push_back(oracle::random_element(g, rng, 2));
      EXPECT_EQ(is_generating(els, g), is_generating_snf(els, g));
    }
  const auto o = oracle::generation_vs_closure(2, 24);
  EXPECT_TRUE(o.ok) << o.detail;
}

TEST(Factorization, IdentityIsEmpty) {
  EXPECT_TRUE(factor_automorphism(GMatrix::identity(kZ4)).empty());
  EXPECT_TRUE(factor_automorphism(GMatrix::identity(InvariantFactorGroup(2, {6, 3}))).empty());
}

TEST(Factorization, SingleElementaryRoundTrip) {
  oracle::Rng rng(25);
  for (const auto& g : oracle::small_groups(3, 12)) {
    const auto e = oracle::random_elementary(g, rng);
    const GMatrix m = elementary_automorphism(g, e);
    EXPECT_EQ(product(g, factor_automorphism(m)), m);
  }
}

TEST(Factorization, RandomProductsOnZZ4Z2) {
  const InvariantFactorGroup g(1, {4, 2});
  oracle::Rng rng(26);
  for (int t = 0; t < 200; ++t) {
    std::vector<ElementaryAutomorphism> gens;
    for (int i = 0; i < 10; ++i) gens.push_back(oracle::random_elementary(g, rng));
    const GMatrix m = product(g, gens);
    EXPECT_EQ(product(g, factor_automorphism(m)), m);
  }
}

TEST(Factorization, RejectsNonInvertible) {
  const std::vector<GroupElement> dbl{el(kZ4, {2}, {0}), el(kZ4, {0}, {1})};
  EXPECT_THROW(factor_automorphism(GMatrix::from_endomorphism(dbl, kZ4)), std::invalid_argument);
}
