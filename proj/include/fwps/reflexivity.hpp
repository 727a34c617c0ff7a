#pragma once

// Reflexivity of the simplex spanned by the columns of a generator matrix,
// decided with exact rational linear algebra and no class-group machinery.

#include <vector>

#include <gmpxx.h>

#include "fwps/fwps.hpp"

namespace fwps {

using RationalVector = std::vector<mpq_class>;

// duals[i] is the u with <u, v_j> = -1 for every vertex v_j, j != i.
struct SimplexFacetData {
  std::vector<RationalVector> duals;
};

SimplexFacetData facet_duals(const GeneratorMatrix& p);
// Unvalidated input: throws std::invalid_argument on a wrong shape, a
// repeated column or a singular facet system.
SimplexFacetData facet_duals(const IntMatrix& p);

// Every facet dual is integral and the origin is interior (<u_i, v_i> > -1).
bool is_reflexive(const GeneratorMatrix& p);
bool is_reflexive(const SimplexFacetData& duals, const IntMatrix& p);

// is_gorenstein(q) == is_reflexive(generator_from_degree(q)).
bool cross_check(const DegreeMatrix& q);

}  // namespace fwps
