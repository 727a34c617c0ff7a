#include "fwps/fwps.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fwps {

GeneratorMatrix::GeneratorMatrix(IntMatrix columns) : m_(std::move(columns)) {
  const size_t n = m_.rows();
  if (n == 0 || m_.cols() != n + 1) throw std::invalid_argument("generator matrix must be n x (n+1)");
  for (size_t c = 0; c < n + 1; ++c) {
    Integer g = 0;
    for (size_t r = 0; r < n; ++r) g = gcd(g, m_(r, c));
    if (!g.is_one()) throw std::invalid_argument("generator matrix column " + std::to_string(c) + " is not primitive");
    for (size_t d = 0; d < c; ++d)
      if (m_.column(c) == m_.column(d)) throw std::invalid_argument("generator matrix has repeated columns");
  }
  IntMatrix ker = integer_kernel(m_);
  if (ker.rows() != 1) throw std::invalid_argument("generator matrix does not have rank n");
  const int s = ker(0, 0).sign();
  for (size_t c = 0; c < n + 1; ++c)
    if (s == 0 || ker(0, c).sign() != s)
      throw std::invalid_argument("generator matrix columns do not positively span");
}

// ---------------------------------------------------------------------------

std::vector<size_t> failing_column_subset(const InvariantFactorGroup& group,
                                          const std::vector<GroupElement>& columns) {
  const size_t cols = columns.size();
  std::vector<size_t> failing;
  std::vector<GroupElement> subset(cols - 1);
  for (size_t skip = 0; skip < cols; ++skip) {
    for (size_t c = 0, t = 0; c < cols; ++c)
      if (c != skip) subset[t++] = columns[c];
    if (!is_generating(subset, group)) {
      for (size_t c = 0; c < cols; ++c)
        if (c != skip) failing.push_back(c);
      break;
    }
  }
  return failing;
}

DegreeMatrix::DegreeMatrix(InvariantFactorGroup group, std::vector<GroupElement> columns)
    : DegreeMatrix(std::move(group), std::move(columns), true) {}

DegreeMatrix DegreeMatrix::assume_valid(InvariantFactorGroup group, std::vector<GroupElement> columns) {
  return DegreeMatrix(std::move(group), std::move(columns), false);
}

DegreeMatrix::DegreeMatrix(InvariantFactorGroup group, std::vector<GroupElement> columns, bool check)
    : group_(std::move(group)), columns_(std::move(columns)) {
  if (!check) return;
  if (group_.rank() != 1) throw std::invalid_argument("degree matrix needs a rank-one class group");
  if (columns_.size() < 2) throw std::invalid_argument("degree matrix needs at least two columns");
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (!belongs_to(columns_[i], group_)) throw std::invalid_argument("degree matrix column outside the group");
    if (columns_[i].free[0] < Integer(1)) throw std::invalid_argument("weights must be positive");
    if (i > 0 && columns_[i].free[0] < columns_[i - 1].free[0])
      throw std::invalid_argument("weights must be ascending");
  }
  auto bad = failing_column_subset(group_, columns_);
  if (!bad.empty()) {
    std::ostringstream os;
    os << "columns {";
    for (size_t t = 0; t < bad.size(); ++t) os << (t ? "," : "") << bad[t];
    os << "} do not generate the class group";
    throw std::invalid_argument(os.str());
  }
}

DegreeMatrix DegreeMatrix::from_unsorted(InvariantFactorGroup group, std::vector<GroupElement> columns) {
  std::sort(columns.begin(), columns.end());
  return DegreeMatrix(std::move(group), std::move(columns));
}

DegreeMatrix DegreeMatrix::from_rows(const IntVector& weights, const std::vector<IntVector>& torsion_rows,
                                     const std::vector<Integer>& factors, bool sort_columns) {
  if (torsion_rows.size() != factors.size()) throw std::invalid_argument("one factor per torsion row");
  InvariantFactorGroup g(1, factors);
  std::vector<GroupElement> cols;
  for (size_t i = 0; i < weights.size(); ++i) {
    IntVector t;
    for (const auto& row : torsion_rows) {
      if (row.size() != weights.size()) throw std::invalid_argument("torsion row length mismatch");
      t.push_back(row[i]);
    }
    cols.push_back(make_element(g, {weights[i]}, std::move(t)));
  }
  return sort_columns ? from_unsorted(std::move(g), std::move(cols)) : DegreeMatrix(std::move(g), std::move(cols));
}

IntVector DegreeMatrix::weights() const {
  IntVector w;
  for (const auto& c : columns_) w.push_back(c.free[0]);
  return w;
}

IntVector DegreeMatrix::torsion_row(size_t j) const {
  IntVector t;
  for (const auto& c : columns_) t.push_back(c.torsion[j]);
  return t;
}

std::string DegreeMatrix::to_string() const {
  std::ostringstream os;
  auto w = weights();
  for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  for (size_t j = 0; j < group_.torsion_count(); ++j) {
    os << ';';
    auto t = torsion_row(j);
    for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
    os << '@' << group_.factor(j);
  }
  return os.str();
}

// ---------------------------------------------------------------------------

InvariantBundle invariant_bundle(const DegreeMatrix& q) {
  InvariantBundle b;
  const auto w = q.weights();
  const size_t r = q.group().torsion_count();
  b.lcm_weights = 1;
  b.weight_sum = 0;
  for (const auto& wi : w) {
    b.lcm_weights = lcm(b.lcm_weights, wi);
    b.weight_sum += wi;
  }
  b.scaled_torsion.assign(w.size(), IntVector(r));
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = 0; j < r; ++j)
      b.scaled_torsion[i][j] = divexact(b.lcm_weights, w[i]) * q.columns()[i].torsion[j];
  b.torsion_lcm = 1;
  for (size_t j = 0; j < r; ++j) {
    const Integer& mu = q.group().factor(j);
    Integer g = mu;
    for (size_t i = 0; i < w.size(); ++i) g = gcd(g, b.scaled_torsion[i][j]);
    b.torsion_orders.push_back(divexact(mu, g));
    b.torsion_lcm = lcm(b.torsion_lcm, b.torsion_orders.back());
  }
  return b;
}

Integer picard_index(const DegreeMatrix& q) {
  InvariantBundle b = invariant_bundle(q);
  return b.lcm_weights * b.torsion_lcm;
}

Integer gorenstein_index(const DegreeMatrix& q) {
  InvariantBundle b = invariant_bundle(q);
  Integer lm = b.lcm_weights * b.torsion_lcm;
  Integer iota = divexact(lm, gcd(lm, b.weight_sum));
  for (size_t j = 0; j < q.group().torsion_count(); ++j) {
    const Integer& mu = q.group().factor(j);
    Integer row_sum = 0;
    for (const auto& c : q.columns()) row_sum += c.torsion[j];
    iota = lcm(iota, divexact(mu, gcd(mu, row_sum)));
  }
  return iota;
}

bool GorensteinBreakdown::holds() const {
  return lcm_divides_sum && std::all_of(order_divides_ratio.begin(), order_divides_ratio.end(), [](bool b) { return b; }) &&
         std::all_of(torsion_row_sums_zero.begin(), torsion_row_sums_zero.end(), [](bool b) { return b; });
}

GorensteinBreakdown gorenstein_breakdown(const DegreeMatrix& q) {
  InvariantBundle b = invariant_bundle(q);
  GorensteinBreakdown out;
  out.lcm_divides_sum = divides(b.lcm_weights, b.weight_sum);
  for (size_t j = 0; j < q.group().torsion_count(); ++j) {
    // M_j | S/L only makes sense once L | S.
    out.order_divides_ratio.push_back(out.lcm_divides_sum &&
                                      divides(b.torsion_orders[j], b.weight_sum / b.lcm_weights));
    Integer row_sum = 0;
    for (const auto& c : q.columns()) row_sum += c.torsion[j];
    out.torsion_row_sums_zero.push_back(divides(q.group().factor(j), row_sum));
  }
  return out;
}

bool is_gorenstein(const DegreeMatrix& q) { return gorenstein_breakdown(q).holds(); }

// ---------------------------------------------------------------------------

GeneratorMatrix generator_from_degree(const DegreeMatrix& q) {
  const size_t cols = q.columns().size();
  const size_t r = q.group().torsion_count();
  // Kernel of [w 0; eta' diag(mu)], projected to the first n+1 coordinates.
  IntMatrix relations(1 + r, cols + r);
  for (size_t i = 0; i < cols; ++i) {
    relations(0, i) = q.columns()[i].free[0];
    for (size_t j = 0; j < r; ++j) relations(1 + j, i) = q.columns()[i].torsion[j];
  }
  for (size_t j = 0; j < r; ++j) relations(1 + j, cols + j) = q.group().factor(j);
  IntMatrix ker = integer_kernel(relations);
  IntMatrix basis(ker.rows(), cols);
  for (size_t t = 0; t < ker.rows(); ++t)
    for (size_t i = 0; i < cols; ++i) basis(t, i) = ker(t, i);
  return GeneratorMatrix(hermite(basis).form);
}

DegreeMatrix degree_from_generator(const GeneratorMatrix& p) {
  const size_t n = p.dim();
  SmithResult s = smith(p.matrix().transpose());
  for (const auto& d : s.diagonal)
    if (d.is_zero()) throw std::invalid_argument("generator matrix is rank deficient");
  // Coordinate n of U is the free part; coordinates with d_t > 1 are torsion.
  std::vector<size_t> torsion_coords;
  for (size_t t = n; t-- > 0;)
    if (!s.diagonal[t].is_one()) torsion_coords.push_back(t);
  std::vector<Integer> factors;
  for (size_t t : torsion_coords) factors.push_back(s.diagonal[t]);
  InvariantFactorGroup g(1, factors);

  int sign = 0;
  for (size_t i = 0; i <= n; ++i) {
    int si = s.left(n, i).sign();
    if (si == 0 || (sign != 0 && si != sign)) throw std::invalid_argument("generator matrix has no positive relation");
    sign = si;
  }
  std::vector<GroupElement> cols;
  for (size_t i = 0; i <= n; ++i) {
    IntVector t;
    for (size_t coord : torsion_coords) t.push_back(s.left(coord, i));
    Integer w = sign < 0 ? -s.left(n, i) : s.left(n, i);
    cols.push_back(make_element(g, {w}, std::move(t)));
  }
  return DegreeMatrix::from_unsorted(std::move(g), std::move(cols));
}

}  // namespace fwps
