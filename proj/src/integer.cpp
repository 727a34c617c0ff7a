#include "fwps/integer.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace fwps {

namespace {

constexpr int64_t kMin = std::numeric_limits<int64_t>::min();

mpz_class as_mpz(int64_t v) {
  mpz_class r;
  mpz_set_si(r.get_mpz_t(), v);  // long is 64-bit on supported targets
  return r;
}

uint64_t unsigned_abs(int64_t v) { return v < 0 ? uint64_t{0} - uint64_t(v) : uint64_t(v); }

}  // namespace

Integer::Integer(const mpz_class& v) : big_(v) { normalize(); }

void Integer::normalize() {
  if (big_ && mpz_fits_slong_p(big_->get_mpz_t())) {
    small_ = mpz_get_si(big_->get_mpz_t());
    big_.reset();
  }
}

Integer Integer::from_string(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("bad integer literal: " + s);
  for (size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal: " + s);
  if (s[0] == '+') s.erase(0, 1);
  return Integer(mpz_class(s, 10));
}

int64_t Integer::to_int64() const {
  if (big_) throw std::overflow_error("integer does not fit in 64 bits");
  return small_;
}

mpz_class Integer::to_mpz() const { return big_ ? *big_ : as_mpz(small_); }

std::string Integer::to_string() const { return big_ ? big_->get_str() : std::to_string(small_); }

int Integer::sign() const {
  if (big_) return sgn(*big_);
  return (small_ > 0) - (small_ < 0);
}

Integer Integer::operator-() const {
  if (is_small() && small_ != kMin) return Integer(-small_);
  return Integer(mpz_class(-to_mpz()));
}

Integer& Integer::operator+=(const Integer& o) {
  if (is_small() && o.is_small()) {
    int64_t r;
    if (!__builtin_add_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  big_ = to_mpz() + o.to_mpz();
  normalize();
  return *this;
}

Integer& Integer::operator-=(const Integer& o) {
  if (is_small() && o.is_small()) {
    int64_t r;
    if (!__builtin_sub_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  big_ = to_mpz() - o.to_mpz();
  normalize();
  return *this;
}

Integer& Integer::operator*=(const Integer& o) {
  if (is_small() && o.is_small()) {
    int64_t r;
    if (!__builtin_mul_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  big_ = to_mpz() * o.to_mpz();
  normalize();
  return *this;
}

Integer operator/(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small() && !(a.small_ == kMin && b.small_ == -1))
    return Integer(a.small_ / b.small_);
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(q);
}

Integer operator%(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small()) {
    if (b.small_ == -1) return Integer(0);
    return Integer(a.small_ % b.small_);
  }
  mpz_class r;
  mpz_tdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(r);
}

bool operator==(const Integer& a, const Integer& b) {
  if (a.is_small() != b.is_small()) return false;
  if (a.is_small()) return a.small_ == b.small_;
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) return a.small_ <=> b.small_;
  int c = cmp(a.to_mpz(), b.to_mpz());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

size_t Integer::hash() const {
  if (is_small()) return std::hash<int64_t>{}(small_);
  return std::hash<std::string>{}(big_->get_str(16));
}

Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

Integer gcd(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) {
    uint64_t g = std::gcd(unsigned_abs(a.to_int64()), unsigned_abs(b.to_int64()));
    if (g <= uint64_t(std::numeric_limits<int64_t>::max())) return Integer(int64_t(g));
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(g);
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a.is_zero() || b.is_zero()) return Integer(0);
  return abs(divexact(a, gcd(a, b)) * b);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (!(q * b == a) && ((a.sign() < 0) != (b.sign() < 0))) q -= 1;
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) { return -floor_div(-a, b); }

Integer mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r.sign() < 0) r += abs(m);
  return r;
}

Integer divexact(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (!(q * b == a)) throw std::domain_error("inexact division");
  return q;
}

bool divides(const Integer& d, const Integer& a) {
  if (d.is_zero()) return a.is_zero();
  return (a % d).is_zero();
}

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (!r.is_zero()) {
    Integer q = floor_div(old_r, r);
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r.sign() < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

std::optional<Integer> mod_inverse(const Integer& a, const Integer& m) {
  auto e = extended_gcd(mod(a, m), m);
  if (!e.g.is_one()) return std::nullopt;
  return mod(e.s, m);
}

std::vector<std::pair<Integer, int>> factorize(const Integer& a) {
  std::vector<std::pair<Integer, int>> out;
  Integer x = abs(a);
  auto strip = [&](const Integer& p) {
    int e = 0;
    while (divides(p, x)) {
      x = x / p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  };
  strip(2);
  for (Integer p = 3; p * p <= x; p += 2) strip(p);
  if (x > Integer(1)) out.emplace_back(x, 1);
  return out;
}

std::vector<Integer> divisors(const Integer& a) {
  if (a.is_zero()) throw std::domain_error("divisors of zero");
  std::vector<Integer> out{1};
  for (const auto& [p, e] : factorize(a)) {
    const size_t base = out.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fwps
