#pragma once

// Minimal Gorenstein torsion vectors for a Gorenstein weight vector: single
// torsion rows eta in (Z/mu)^{n+1} such that [w; eta] is the degree matrix of
// a Gorenstein fwps, taken lexicographically least among all u*eta + k*w.

#include <vector>

#include "fwps/int_matrix.hpp"
#include "fwps/weights.hpp"

namespace fwps {

struct TorsionVector {
  Integer order;       // mu >= 2
  IntVector entries;   // canonical residues in [0, mu)
  WeightVector weights;

  friend bool operator==(const TorsionVector&, const TorsionVector&) = default;
};

// Order mu = a*b with a | L and b | S/L; a is gcd(mu, L_0, ..., L_n).
struct OrderPair {
  Integer a;
  Integer b;
  Integer order() const { return a * b; }
  friend bool operator==(const OrderPair&, const OrderPair&) = default;
};

std::vector<OrderPair> admissible_order_pairs(const WeightVector& w);

std::vector<TorsionVector> minimal_torsion_vectors(const WeightVector& w, const OrderPair& pair);
// Same enumeration without the running prefix-minimality pruning; every
// leaf is checked against all units instead.
std::vector<TorsionVector> minimal_torsion_vectors_unpruned(const WeightVector& w, const OrderPair& pair);

// 0 <= eta_i < d_i with d_i = mu * gcd(mu, w_0..w_i) / gcd(mu, w_0..w_{i-1}).
IntVector minimality_bounds(const WeightVector& w, const Integer& mu);
bool is_minimal(const TorsionVector& t);
// [w; eta] is a degree matrix of a Gorenstein fwps.
bool is_gorenstein_torsion(const TorsionVector& t);

// u*eta mod mu for a unit u.
IntVector scale_torsion(const IntVector& eta, const Integer& u, const Integer& mu);
std::vector<Integer> units_mod(const Integer& mu);

}  // namespace fwps
