#pragma once

// Arbitrary-precision signed integer with an inline 64-bit fast path.
//
// Values that fit in int64_t are stored inline; anything larger spills into a
// GMP integer. Every operation checks for overflow and promotes, so results
// are always exact. The representation is canonical: a value is big only if
// it does not fit in int64_t.

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace fwps {

class Integer {
 public:
  Integer() = default;
  Integer(int64_t v) : small_(v) {}  // NOLINT: implicit by intent
  Integer(int v) : small_(v) {}      // NOLINT
  explicit Integer(const mpz_class& v);

  static Integer from_string(std::string_view text);

  bool is_small() const { return !big_.has_value(); }
  bool fits_int64() const { return is_small(); }
  int64_t to_int64() const;  // throws std::overflow_error when big
  mpz_class to_mpz() const;
  std::string to_string() const;

  int sign() const;
  bool is_zero() const { return is_small() && small_ == 0; }
  bool is_one() const { return is_small() && small_ == 1; }

  Integer operator-() const;
  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  // Truncating division and remainder, matching built-in integer semantics.
  friend Integer operator/(const Integer& a, const Integer& b);
  friend Integer operator%(const Integer& a, const Integer& b);

  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

  friend std::ostream& operator<<(std::ostream& os, const Integer& v);

  size_t hash() const;

 private:
  void normalize();

  int64_t small_ = 0;
  std::optional<mpz_class> big_;
};

Integer abs(const Integer& a);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
// Rounds toward negative infinity.
Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);
// Residue in [0, |m|).
Integer mod(const Integer& a, const Integer& m);
// Division known to be exact; throws std::domain_error otherwise.
Integer divexact(const Integer& a, const Integer& b);
bool divides(const Integer& d, const Integer& a);

struct ExtendedGcd {
  Integer g, s, t;  // g = s*a + t*b, g >= 0
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

// Inverse of a modulo m, if a is a unit.
std::optional<Integer> mod_inverse(const Integer& a, const Integer& m);

// Prime factorization of |a| by trial division, primes ascending.
std::vector<std::pair<Integer, int>> factorize(const Integer& a);
// Positive divisors of |a|, ascending. a must be nonzero.
std::vector<Integer> divisors(const Integer& a);

}  // namespace fwps

template <>
struct std::hash<fwps::Integer> {
  size_t operator()(const fwps::Integer& v) const noexcept { return v.hash(); }
};
