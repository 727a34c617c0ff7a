#pragma once

// Fake weighted projective spaces encoded by generator matrices (rays of the
// Fano simplex) and by degree matrices (images of the standard basis in the
// class group Z + Z/mu_1 + ... + Z/mu_r).

#include <string>
#include <vector>

#include "fwps/abelian.hpp"

namespace fwps {

// n x (n+1) integer matrix whose columns are pairwise distinct primitive
// vectors that positively span Q^n.
class GeneratorMatrix {
 public:
  explicit GeneratorMatrix(IntMatrix columns);

  size_t dim() const { return m_.rows(); }
  const IntMatrix& matrix() const { return m_; }
  IntVector vertex(size_t i) const { return m_.column(i); }

  friend bool operator==(const GeneratorMatrix&, const GeneratorMatrix&) = default;

 private:
  IntMatrix m_;
};

class DegreeMatrix {
 public:
  // Keeps the given column order; weights must already be ascending. Throws
  // std::invalid_argument if some n-subset of columns fails to generate.
  DegreeMatrix(InvariantFactorGroup group, std::vector<GroupElement> columns);
  // Sorts columns by weight, ties by torsion residues, then validates.
  static DegreeMatrix from_unsorted(InvariantFactorGroup group, std::vector<GroupElement> columns);
  // Weight row plus torsion rows; rows[j] lives in Z/factors[j].
  static DegreeMatrix from_rows(const IntVector& weights, const std::vector<IntVector>& torsion_rows,
                                const std::vector<Integer>& factors, bool sort_columns = false);

  // Skips the generation check; for callers that established it already.
  static DegreeMatrix assume_valid(InvariantFactorGroup group, std::vector<GroupElement> columns);

  size_t dim() const { return columns_.size() - 1; }
  const InvariantFactorGroup& group() const { return group_; }
  const std::vector<GroupElement>& columns() const { return columns_; }
  IntVector weights() const;
  IntVector torsion_row(size_t j) const;

  friend bool operator==(const DegreeMatrix&, const DegreeMatrix&) = default;

  std::string to_string() const;

 private:
  DegreeMatrix(InvariantFactorGroup group, std::vector<GroupElement> columns, bool check);

  InvariantFactorGroup group_;
  std::vector<GroupElement> columns_;
};

// Indices of an n-subset of columns that does not generate the class group,
// or empty when the matrix is a valid degree matrix.
std::vector<size_t> failing_column_subset(const InvariantFactorGroup& group,
                                          const std::vector<GroupElement>& columns);

struct InvariantBundle {
  Integer lcm_weights;                      // L
  std::vector<IntVector> scaled_torsion;    // L_ij = (L / w_i) * eta'_ij, indexed [i][j]
  IntVector torsion_orders;                 // M_j = mu_j / gcd(mu_j, L_0j, ..., L_nj)
  Integer torsion_lcm;                      // M
  Integer weight_sum;                       // S
};

InvariantBundle invariant_bundle(const DegreeMatrix& q);
// Pic(Z) is generated by (L*M, 0); returns L*M.
Integer picard_index(const DegreeMatrix& q);
Integer gorenstein_index(const DegreeMatrix& q);

struct GorensteinBreakdown {
  bool lcm_divides_sum = false;            // L | S
  std::vector<bool> order_divides_ratio;   // M_j | S / L
  std::vector<bool> torsion_row_sums_zero; // sum_i eta_ij = 0 in Z/mu_j
  bool holds() const;
};

GorensteinBreakdown gorenstein_breakdown(const DegreeMatrix& q);
bool is_gorenstein(const DegreeMatrix& q);

// Rows form an HNF basis of the kernel lattice of Q; column i is the ray of
// the i-th column of Q.
GeneratorMatrix generator_from_degree(const DegreeMatrix& q);
// Class group Z^{n+1}/im(P^T) in invariant factor form with positive weights.
DegreeMatrix degree_from_generator(const GeneratorMatrix& p);

}  // namespace fwps
