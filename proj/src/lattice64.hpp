#pragma once

// Machine-word lattice kernels for the hot paths. Every routine reports
// overflow instead of wrapping; callers then fall back to Integer code.

#include <cstdint>
#include <vector>

#include "fwps/int_matrix.hpp"

namespace fwps::detail {

struct Overflow {};

inline int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}

inline int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}

inline int64_t checked_sub(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}

inline int64_t floor_div64(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Row-major dense matrix of int64.
struct Mat64 {
  size_t rows = 0, cols = 0;
  std::vector<int64_t> a;

  Mat64() = default;
  Mat64(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}
  int64_t& operator()(size_t r, size_t c) { return a[r * cols + c]; }
  int64_t operator()(size_t r, size_t c) const { return a[r * cols + c]; }

  static Mat64 from(const IntMatrix& m) {
    Mat64 out(m.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); ++r)
      for (size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).to_int64();  // throws std::overflow_error
    return out;
  }

  IntMatrix to_int_matrix() const {
    IntMatrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r)
      for (size_t c = 0; c < cols; ++c) m(r, c) = Integer(a[r * cols + c]);
    return m;
  }
};

// (row x, row y) <- (s x + t y, u x + v y)
inline void combine_rows(Mat64& m, size_t x, size_t y, int64_t s, int64_t t, int64_t u, int64_t v) {
  for (size_t c = 0; c < m.cols; ++c) {
    const int64_t px = m(x, c), py = m(y, c);
    m(x, c) = checked_add(checked_mul(s, px), checked_mul(t, py));
    m(y, c) = checked_add(checked_mul(u, px), checked_mul(v, py));
  }
}

struct Egcd64 {
  int64_t g, s, t;
};

inline Egcd64 egcd64(int64_t a, int64_t b) {
  int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const int64_t q = floor_div64(old_r, r);
    int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

// Row-style Hermite normal form, same convention as hermite(): pivots
// positive, zeros below, entries above a pivot in [0, pivot). Returns the
// rank; rows past it are zero.
inline size_t hermite64(Mat64& m) {
  size_t r = 0;
  for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
    for (size_t i = r + 1; i < m.rows; ++i) {
      const int64_t b = m(i, c);
      if (b == 0) continue;
      const int64_t a = m(r, c);
      if (a != 0 && b % a == 0) {
        const int64_t q = b / a;
        for (size_t k = c; k < m.cols; ++k) m(i, k) = checked_sub(m(i, k), checked_mul(q, m(r, k)));
        continue;
      }
      const Egcd64 e = egcd64(a, b);
      combine_rows(m, r, i, e.s, e.t, -b / e.g, a / e.g);
    }
    if (m(r, c) == 0) continue;
    if (m(r, c) < 0)
      for (size_t k = c; k < m.cols; ++k) m(r, k) = checked_sub(0, m(r, k));
    const int64_t p = m(r, c);
    for (size_t i = 0; i < r; ++i) {
      const int64_t q = floor_div64(m(i, c), p);
      if (q == 0) continue;
      for (size_t k = c; k < m.cols; ++k) m(i, k) = checked_sub(m(i, k), checked_mul(q, m(r, k)));
    }
    ++r;
  }
  return r;
}

}  // namespace fwps::detail
