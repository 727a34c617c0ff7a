#pragma once

// Canonical form of a generator matrix up to unimodular row operations and
// column permutations inside blocks of equal weight.

#include <functional>
#include <string>
#include <vector>

#include "fwps/fwps.hpp"
#include "fwps/weights.hpp"

namespace fwps {

struct HermiteForm {
  IntMatrix matrix;
  std::vector<size_t> pivots;

  friend bool operator==(const HermiteForm&, const HermiteForm&) = default;
};

// Throws std::invalid_argument if p does not have full row rank.
HermiteForm hermite_normal_form(const IntMatrix& p);

using Permutation = std::vector<size_t>;  // new column c is old column perm[c]

// Permutations of equal-weight blocks of an ascending weight vector, starting
// with the identity. Stops early when f returns false.
void for_each_allowed_permutation(const WeightVector& w, const std::function<bool(const Permutation&)>& f);
std::vector<Permutation> allowed_permutations(const WeightVector& w);

struct NormalForm {
  HermiteForm form;
  std::string bytes;

  friend bool operator==(const NormalForm& a, const NormalForm& b) { return a.bytes == b.bytes; }
};

NormalForm normal_form(const GeneratorMatrix& p, const WeightVector& w);
// Same, for any full-row-rank basis of the kernel lattice (not validated as a
// generator matrix).
NormalForm lattice_normal_form(const IntMatrix& basis, const WeightVector& w);

// Versioned, length-prefixed row-major serialization of an n x (n+1) matrix.
std::string encode_canonical(const IntMatrix& m);
IntMatrix decode_canonical(const std::string& bytes);

struct ClassificationRecord {
  DegreeMatrix degree;
  NormalForm normal;
};

// One record per distinct normal form, keeping the first degree matrix seen,
// in first-seen order.
std::vector<ClassificationRecord> filter_representatives(const std::vector<DegreeMatrix>& stream);

}  // namespace fwps
