#pragma once

// Finitely generated abelian groups Z^k + Z/mu_1 + ... + Z/mu_r in invariant
// factor form (mu_{j+1} | mu_j), their elements, and endomorphisms written as
// G-matrices. Coordinates are 0-based throughout: free coordinates
// 0..k-1, torsion coordinates 0..r-1 (matrix index k+i).

#include <span>
#include <vector>

#include "fwps/int_matrix.hpp"

namespace fwps {

class InvariantFactorGroup {
 public:
  InvariantFactorGroup() = default;
  // Throws std::invalid_argument unless every factor is >= 2 and each
  // factor divides its predecessor.
  InvariantFactorGroup(size_t rank, std::vector<Integer> factors);

  size_t rank() const { return rank_; }
  const std::vector<Integer>& factors() const { return factors_; }
  size_t torsion_count() const { return factors_.size(); }
  size_t dimension() const { return rank_ + factors_.size(); }
  const Integer& factor(size_t i) const { return factors_[i]; }

  // Adds Z/mu as a new last factor; mu must divide the current last factor.
  InvariantFactorGroup with_factor(const Integer& mu) const;

  friend bool operator==(const InvariantFactorGroup&, const InvariantFactorGroup&) = default;

 private:
  size_t rank_ = 0;
  std::vector<Integer> factors_;
};

struct GroupElement {
  IntVector free;
  IntVector torsion;  // canonical residues in [0, mu_j)

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

// Reduces torsion coordinates to canonical residues; checks lengths.
GroupElement make_element(const InvariantFactorGroup& g, IntVector free, IntVector torsion);
bool belongs_to(const GroupElement& e, const InvariantFactorGroup& g);

class GMatrix {
 public:
  static GMatrix identity(const InvariantFactorGroup& g);
  // Column i is the image of the i-th basis element. Rejects images that
  // do not define an endomorphism (mu_i * image of e_{k+i} must vanish).
  static GMatrix from_endomorphism(std::span<const GroupElement> images,
                                   const InvariantFactorGroup& g);

  const InvariantFactorGroup& group() const { return group_; }
  const IntMatrix& entries() const { return entries_; }
  GroupElement column(size_t c) const;

  GroupElement apply(const GroupElement& w) const;
  friend GMatrix operator*(const GMatrix& a, const GMatrix& b);
  friend bool operator==(const GMatrix&, const GMatrix&) = default;

 private:
  GMatrix(InvariantFactorGroup g, IntMatrix e) : group_(std::move(g)), entries_(std::move(e)) {}
  static GMatrix checked(InvariantFactorGroup g, IntMatrix e);
  void validate() const;

  InvariantFactorGroup group_;
  IntMatrix entries_;
};

enum class ElementaryKind {
  FreeSign,       // psi_i      : w_i -> -w_i
  TorsionUnit,    // psi_{i,u}  : eta_i -> u * eta_i
  FreeShear,      // alpha_{i,j}: w_i -> w_i + c * w_j            (i != j)
  FreeToTorsion,  // beta_{i,j} : eta_i -> eta_i + c * w_j
  TorsionDown,    // gamma_{i,j}: eta_i -> eta_i + c * eta_j       (j < i)
  TorsionUp,      // delta_{i,j}: eta_i -> eta_i + c * (mu_i/mu_j) * eta_j  (i < j)
};

// One generator of Aut(G), or a power of one. `parameter` is the unit u for
// TorsionUnit and the multiplicity c for the shear kinds; FreeSign ignores it.
struct ElementaryAutomorphism {
  ElementaryKind kind;
  size_t i = 0;
  size_t j = 0;
  Integer parameter = 1;

  friend bool operator==(const ElementaryAutomorphism&, const ElementaryAutomorphism&) = default;
};

GMatrix elementary_automorphism(const InvariantFactorGroup& g, const ElementaryAutomorphism& e);
ElementaryAutomorphism inverse(const InvariantFactorGroup& g, const ElementaryAutomorphism& e);
GMatrix elementary_inverse(const InvariantFactorGroup& g, const ElementaryAutomorphism& e);

// Smallest k >= 0 with gcd(a + k b, c) = 1. Requires c != 0 and
// gcd(a, b, c) = 1.
Integer coprime_shift(const Integer& a, const Integer& b, const Integer& c);

// Generation test by maximal minors of the stacked coordinate matrices.
bool is_generating(std::span<const GroupElement> elements, const InvariantFactorGroup& g);
// Same question answered through the Smith form of [Q'_r | diag(mu)].
bool is_generating_snf(std::span<const GroupElement> elements, const InvariantFactorGroup& g);

// Ordered factors whose product (left to right) equals the input automorphism.
std::vector<ElementaryAutomorphism> factor_automorphism(const GMatrix& a);
GMatrix product(const InvariantFactorGroup& g, std::span<const ElementaryAutomorphism> factors);

}  // namespace fwps
