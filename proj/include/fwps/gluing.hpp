#pragma once

// Stacking minimal torsion rows on a weight vector to obtain every Gorenstein
// degree matrix with that weight row.

#include <functional>
#include <optional>
#include <vector>

#include "fwps/fwps.hpp"
#include "fwps/torsion.hpp"

namespace fwps {

// All minimal Gorenstein torsion vectors of w, ordered by (mu descending,
// entries ascending).
struct TorsionPool {
  WeightVector weights;
  std::vector<TorsionVector> rows;
};

TorsionPool torsion_pool(const WeightVector& w);
// Orders a hand-built pool and drops duplicates.
TorsionPool make_pool(WeightVector w, std::vector<TorsionVector> rows);

// Appends zeta as a new torsion row, or nullopt when the result is not a
// degree matrix (or zeta's order does not divide the last invariant factor).
// Throws std::invalid_argument on shape or weight mismatch.
std::optional<DegreeMatrix> extend_degree_matrix(const DegreeMatrix& q, const TorsionVector& zeta);

// [w] followed by every admissible stack, in depth-first order. With
// prune = false, rows rejected higher up are retried deeper (same output).
std::vector<DegreeMatrix> assemble_all(const WeightVector& w, const TorsionPool& pool, bool prune = true);
// Streaming form of assemble_all; returns the number of matrices visited.
size_t for_each_assembled(const WeightVector& w, const TorsionPool& pool,
                          const std::function<void(const DegreeMatrix&)>& emit, bool prune = true);

// Degree matrix with the Hermite basis of its kernel lattice.
struct AssembledClass {
  DegreeMatrix degree;
  IntMatrix lattice;
};

// Same classes as assemble_all, one stack per distinct kernel lattice:
// breadth-first over kernels, extending each by every pool row allowed by the
// divisibility gate, in any order. Level by level, pool order within a level.
std::vector<AssembledClass> assemble_lattices(const WeightVector& w, const TorsionPool& pool);

}  // namespace fwps
