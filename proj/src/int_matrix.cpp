#include "fwps/int_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace fwps {

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) return {};
  IntMatrix m(rows.size(), rows[0].size());
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
    for (size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector IntMatrix::column(size_t c) const {
  IntVector v(rows_);
  for (size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::select_columns(std::span<const size_t> cols) const {
  IntMatrix m(rows_, cols.size());
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols.size(); ++c) m(r, c) = (*this)(r, cols[c]);
  return m;
}

IntMatrix IntMatrix::select_rows(std::span<const size_t> rows) const {
  IntMatrix m(rows.size(), cols_);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(rows[r], c);
  return m;
}

void IntMatrix::swap_rows(size_t a, size_t b) {
  if (a == b) return;
  for (size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_columns(size_t a, size_t b) {
  if (a == b) return;
  for (size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(size_t dst, size_t src, const Integer& factor) {
  if (factor.is_zero()) return;
  for (size_t c = 0; c < cols_; ++c) {
    const Integer& s = (*this)(src, c);
    if (!s.is_zero()) (*this)(dst, c) += factor * s;
  }
}

void IntMatrix::add_column_multiple(size_t dst, size_t src, const Integer& factor) {
  if (factor.is_zero()) return;
  for (size_t r = 0; r < rows_; ++r) {
    const Integer& s = (*this)(r, src);
    if (!s.is_zero()) (*this)(r, dst) += factor * s;
  }
}

void IntMatrix::negate_row(size_t r) {
  for (size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix p(a.rows_, b.cols_);
  for (size_t i = 0; i < a.rows_; ++i)
    for (size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (x.is_zero()) continue;
      for (size_t j = 0; j < b.cols_; ++j) p(i, j) += x * b(k, j);
    }
  return p;
}

std::strong_ordering operator<=>(const IntMatrix& a, const IntMatrix& b) {
  if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
  if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
  for (size_t i = 0; i < a.data_.size(); ++i)
    if (auto c = a.data_[i] <=> b.data_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (size_t r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
  }
  os << ']';
  return os.str();
}

Integer determinant(const IntMatrix& a) {
  const size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      size_t p = k + 1;
      while (p < n && m(p, k).is_zero()) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j)
        m(i, j) = divexact(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign < 0 ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

HermiteResult hermite(const IntMatrix& a, bool with_transform) {
  HermiteResult res{a, with_transform ? IntMatrix::identity(a.rows()) : IntMatrix(), {}};
  IntMatrix& h = res.form;
  IntMatrix& u = res.transform;
  const size_t rows = h.rows(), cols = h.cols();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    while (true) {
      size_t best = rows;
      for (size_t i = row; i < rows; ++i)
        if (!h(i, col).is_zero() && (best == rows || abs(h(i, col)) < abs(h(best, col)))) best = i;
      if (best == rows) break;
      h.swap_rows(row, best);
      if (with_transform) u.swap_rows(row, best);
      bool clean = true;
      for (size_t i = row + 1; i < rows; ++i) {
        if (h(i, col).is_zero()) continue;
        Integer q = floor_div(h(i, col), h(row, col));
        h.add_row_multiple(i, row, -q);
        if (with_transform) u.add_row_multiple(i, row, -q);
        if (!h(i, col).is_zero()) clean = false;
      }
      if (clean) break;
    }
    if (h(row, col).is_zero()) continue;
    if (h(row, col).sign() < 0) {
      h.negate_row(row);
      if (with_transform) u.negate_row(row);
    }
    for (size_t i = 0; i < row; ++i) {
      Integer q = floor_div(h(i, col), h(row, col));
      h.add_row_multiple(i, row, -q);
      if (with_transform) u.add_row_multiple(i, row, -q);
    }
    res.pivots.push_back(col);
    ++row;
  }
  return res;
}

size_t rank(const IntMatrix& a) { return hermite(a).pivots.size(); }

SmithResult smith(const IntMatrix& a) {
  IntMatrix m = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  const size_t rows = m.rows(), cols = m.cols();
  const size_t diag = std::min(rows, cols);
  for (size_t t = 0; t < diag; ++t) {
    while (true) {
      size_t bi = rows, bj = cols;
      for (size_t i = t; i < rows; ++i)
        for (size_t j = t; j < cols; ++j)
          if (!m(i, j).is_zero() && (bi == rows || abs(m(i, j)) < abs(m(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == rows) break;
      m.swap_rows(t, bi);
      u.swap_rows(t, bi);
      m.swap_columns(t, bj);
      bool dirty = false;
      for (size_t i = t + 1; i < rows; ++i) {
        if (m(i, t).is_zero()) continue;
        Integer q = m(i, t) / m(t, t);
        m.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        dirty = dirty || !m(i, t).is_zero();
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (m(t, j).is_zero()) continue;
        Integer q = m(t, j) / m(t, t);
        m.add_column_multiple(j, t, -q);
        dirty = dirty || !m(t, j).is_zero();
      }
      if (dirty) continue;
      size_t bad = rows;
      for (size_t i = t + 1; i < rows && bad == rows; ++i)
        for (size_t j = t + 1; j < cols; ++j)
          if (!divides(m(t, t), m(i, j))) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      m.add_row_multiple(t, bad, 1);
      u.add_row_multiple(t, bad, 1);
    }
    if (m(t, t).sign() < 0) {
      m.negate_row(t);
      u.negate_row(t);
    }
  }
  SmithResult res;
  res.left = std::move(u);
  for (size_t t = 0; t < diag; ++t) res.diagonal.push_back(m(t, t));
  return res;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  HermiteResult h = hermite(a.transpose(), true);
  const size_t r = h.pivots.size();
  const size_t n = a.cols();
  IntMatrix basis(n - r, n);
  for (size_t i = r; i < n; ++i)
    for (size_t c = 0; c < n; ++c) basis(i - r, c) = h.transform(i, c);
  if (basis.rows() == 0) return basis;
  return hermite(basis).form;
}

}  // namespace fwps
