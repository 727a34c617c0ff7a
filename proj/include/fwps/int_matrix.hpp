#pragma once

#include <span>
#include <string>
#include <vector>

#include "fwps/integer.hpp"

namespace fwps {

using IntVector = std::vector<Integer>;

// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Integer& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  std::span<Integer> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Integer> row(size_t r) const { return {data_.data() + r * cols_, cols_}; }
  IntVector column(size_t c) const;

  IntMatrix transpose() const;
  IntMatrix select_columns(std::span<const size_t> cols) const;
  IntMatrix select_rows(std::span<const size_t> rows) const;

  void swap_rows(size_t a, size_t b);
  void swap_columns(size_t a, size_t b);
  // row[dst] += factor * row[src]
  void add_row_multiple(size_t dst, size_t src, const Integer& factor);
  void add_column_multiple(size_t dst, size_t src, const Integer& factor);
  void negate_row(size_t r);

  const std::vector<Integer>& data() const { return data_; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  // Row-major lexicographic comparison; shapes must agree.
  friend std::strong_ordering operator<=>(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Fraction-free Gaussian elimination (Bareiss). Square input only.
Integer determinant(const IntMatrix& a);
size_t rank(const IntMatrix& a);

struct HermiteResult {
  IntMatrix form;               // echelon form, zero rows at the bottom
  IntMatrix transform;          // unimodular U with U * input == form
  std::vector<size_t> pivots;   // pivot column of each nonzero row
};

// Row-style Hermite normal form under left GL(Z) action: pivots positive,
// entries below pivots zero, entries above pivots reduced into [0, pivot).
HermiteResult hermite(const IntMatrix& a, bool with_transform = false);

struct SmithResult {
  std::vector<Integer> diagonal;  // d_1 | d_2 | ... , nonnegative; length min(rows, cols)
  IntMatrix left;                 // unimodular U with U * A * V == D
};

SmithResult smith(const IntMatrix& a);

// Basis (as rows) of the integer kernel {x : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

// Invokes f(indices) for each k-subset of {0, ..., n-1} in lexicographic
// order; stops early when f returns false. Returns false iff stopped early.
template <typename F>
bool for_each_subset(size_t n, size_t k, F&& f) {
  if (k > n) return true;
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!f(std::span<const size_t>(idx))) return false;
    size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace fwps
