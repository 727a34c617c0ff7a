#include <gtest/gtest.h>

#include <set>

#include "fwps/normal_form.hpp"
#include "fwps/torsion.hpp"
#include "fwps/verify.hpp"
#include "oracles.hpp"

using namespace fwps;

namespace {

DegreeMatrix q(const std::string& literal) { return degree_matrix_from_literal(parse_degree_literal(literal)); }

}  // namespace

TEST(HermiteForm, Examples) {
  const IntMatrix plane = IntMatrix::from_rows({{1, 0, -1}, {0, 1, -1}});
  const auto h = hermite_normal_form(plane);
  EXPECT_EQ(h.matrix, plane);
  EXPECT_EQ(h.pivots, (std::vector<size_t>{0, 1}));
  EXPECT_EQ(hermite_normal_form(IntMatrix::from_rows({{-2, -4}})).matrix, IntMatrix::from_rows({{2, 4}}));
  EXPECT_EQ(hermite_normal_form(IntMatrix::from_rows({{-2, -4}})).pivots, std::vector<size_t>{0});
  EXPECT_THROW(hermite_normal_form(IntMatrix::from_rows({{1, 2, 3}, {2, 4, 6}})), std::invalid_argument);
}

TEST(HermiteForm, UnimodularOrbitInvariance) {
  oracle::Rng rng(41);
  const IntMatrix p = IntMatrix::from_rows({{1, 1, -2, 0}, {1, -2, 1, 0}, {0, 1, 1, -2}});
  const auto base = hermite_normal_form(p);
  for (int t = 0; t < 200; ++t) {
    IntMatrix e = IntMatrix::identity(3);
    for (int s = 0; s < 8; ++s) {
      const size_t a = oracle::uniform(rng, 0, 2), b = oracle::uniform(rng, 0, 2);
      if (a != b) e.add_row_multiple(a, b, Integer(oracle::uniform(rng, -5, 5)));
      else e.negate_row(a);
    }
    EXPECT_EQ(hermite_normal_form(e * p), base);
  }
}

TEST(Permutations, BlockExamples) {
  EXPECT_EQ(allowed_permutations({1, 2, 3}).size(), 1u);
  EXPECT_EQ(allowed_permutations({1, 2, 3})[0], (Permutation{0, 1, 2}));
  EXPECT_EQ(allowed_permutations({1, 1, 1}).size(), 6u);
  const auto two = allowed_permutations({1, 1, 2});
  EXPECT_EQ(two, (std::vector<Permutation>{{0, 1, 2}, {1, 0, 2}}));
  EXPECT_EQ(allowed_permutations({1, 1, 2, 2, 2}).size(), 12u);
  size_t calls = 0;
  for_each_allowed_permutation({1, 1, 1, 1}, [&](const Permutation&) { return ++calls < 5; });
  EXPECT_EQ(calls, 5u);
}

TEST(NormalForm, PermutationRelatedRowsCollapse) {
  const WeightVector w{1, 1, 1, 1};
  std::set<std::string> forms;
  for (const auto& p : admissible_order_pairs(w))
    if (p.order() == Integer(2))
      for (const auto& t : minimal_torsion_vectors(w, p)) {
        std::string lit = "1,1,1,1;";
        for (size_t i = 0; i < 4; ++i) lit += (i ? "," : "") + t.entries[i].to_string();
        forms.insert(normal_form(generator_from_degree(q(lit + "@2")), w).bytes);
      }
  EXPECT_EQ(forms.size(), 1u);
}

TEST(NormalForm, GeneratorAndLatticePathsAgree) {
  for (const auto& r : oracle::all_records(3)) {
    const auto w = r.degree.weights();
    const auto p = generator_from_degree(r.degree);
    const auto nf = normal_form(p, w);
    EXPECT_EQ(nf.bytes, r.normal.bytes);
    EXPECT_EQ(lattice_normal_form(hermite(p.matrix()).form, w), nf);
    // Idempotent.
    EXPECT_EQ(normal_form(GeneratorMatrix(nf.form.matrix), w), nf);
  }
}

TEST(NormalForm, InvariantUnderUnimodularAndBlockPermutations) {
  const auto o = oracle::normal_form_invariance(1000, 42);
  EXPECT_TRUE(o.ok) << o.detail;
}

TEST(NormalForm, RequiresAscendingWeights) {
  const auto p = generator_from_degree(q("1,1,2"));
  EXPECT_THROW(normal_form(p, {2, 1, 1}), std::invalid_argument);
}

TEST(Canonical, EncodeDecodeRoundTrip) {
  for (const auto& r : oracle::all_records(3)) {
    EXPECT_EQ(decode_canonical(r.normal.bytes), r.normal.form.matrix);
    EXPECT_EQ(encode_canonical(r.normal.form.matrix), r.normal.bytes);
  }
  IntMatrix big(1, 2);
  big(0, 0) = Integer::from_string("-123456789012345678901234567890");
  big(0, 1) = 7;
  EXPECT_EQ(decode_canonical(encode_canonical(big)), big);
  EXPECT_THROW(decode_canonical("garbage"), std::invalid_argument);
  EXPECT_THROW(decode_canonical(""), std::invalid_argument);
}

TEST(Filter, OneRepresentativePerForm) {
  std::vector<DegreeMatrix> stream;
  for (const char* lit : {"1,1,1,1;0,0,1,1@2", "1,1,1,1;0,1,0,1@2", "1,1,1,1", "1,1,1,1;0,1,1,0@2"})
    stream.push_back(q(lit));
  const auto reps = filter_representatives(stream);
  ASSERT_EQ(reps.size(), 2u);
  EXPECT_EQ(reps[0].degree, stream[0]);
  EXPECT_EQ(reps[1].degree, stream[2]);

  std::vector<DegreeMatrix> distinct;
  for (const auto& r : oracle::all_records(2)) distinct.push_back(r.degree);
  EXPECT_EQ(filter_representatives(distinct).size(), distinct.size());
}
