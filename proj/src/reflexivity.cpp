#include "fwps/reflexivity.hpp"

#include <stdexcept>

namespace fwps {

namespace {

// Solves a x = b for square a by Gauss-Jordan elimination over Q.
RationalVector solve(std::vector<RationalVector> a, RationalVector b) {
  const size_t n = a.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::invalid_argument("singular facet system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      mpq_class f = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  RationalVector x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

mpq_class pairing(const RationalVector& u, const IntMatrix& p, size_t j) {
  mpq_class s = 0;
  for (size_t r = 0; r < p.rows(); ++r) s += u[r] * mpq_class(p(r, j).to_mpz());
  return s;
}

}  // namespace

SimplexFacetData facet_duals(const IntMatrix& p) {
  const size_t n = p.rows();
  if (n == 0 || p.cols() != n + 1) throw std::invalid_argument("expected an n x (n+1) matrix");
  for (size_t i = 0; i < p.cols(); ++i)
    for (size_t j = i + 1; j < p.cols(); ++j)
      if (p.column(i) == p.column(j)) throw std::invalid_argument("repeated column");
  SimplexFacetData out;
  for (size_t i = 0; i <= n; ++i) {
    std::vector<RationalVector> a;
    for (size_t j = 0; j <= n; ++j) {
      if (j == i) continue;
      RationalVector row(n);
      for (size_t r = 0; r < n; ++r) row[r] = mpq_class(p(r, j).to_mpz());
      a.push_back(std::move(row));
    }
    out.duals.push_back(solve(std::move(a), RationalVector(n, mpq_class(-1))));
  }
  return out;
}

SimplexFacetData facet_duals(const GeneratorMatrix& p) { return facet_duals(p.matrix()); }

bool is_reflexive(const SimplexFacetData& d, const IntMatrix& p) {
  for (size_t i = 0; i < d.duals.size(); ++i) {
    for (const auto& x : d.duals[i])
      if (x.get_den() != 1) return false;
    if (!(pairing(d.duals[i], p, i) > -1)) return false;
  }
  return true;
}

bool is_reflexive(const GeneratorMatrix& p) { return is_reflexive(facet_duals(p), p.matrix()); }

bool cross_check(const DegreeMatrix& q) { return is_gorenstein(q) == is_reflexive(generator_from_degree(q)); }

}  // namespace fwps
