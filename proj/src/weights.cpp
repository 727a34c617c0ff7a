#include "fwps/weights.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fwps {

bool is_unit_fraction_tuple(const UnitFractionTuple& t) {
  if (t.empty()) return false;
  mpq_class sum = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i] < Integer(1)) return false;
    if (i > 0 && t[i] > t[i - 1]) return false;
    sum += mpq_class(mpz_class(1), t[i].to_mpz());
  }
  return sum == 1;
}

namespace {

// Ascending-denominator search x_0 <= x_1 <= ... with exact remainder p/q.
class UnitFractionSearch {
 public:
  UnitFractionSearch(size_t n, const std::function<void(const UnitFractionTuple&)>& emit)
      : terms_(n + 1), emit_(emit) {}

  size_t run() {
    prefix_.clear();
    count_ = 0;
    recurse(1, 1, 1, {});
    return count_;
  }

 private:
  void emit_with(std::initializer_list<Integer> tail) {
    UnitFractionTuple t(prefix_.rbegin(), prefix_.rend());
    t.insert(t.begin(), std::rbegin(tail), std::rend(tail));
    ++count_;
    emit_(t);
  }

  static void add_prime_factors(Integer x, std::vector<Integer>& primes) {
    for (Integer p = 2; p * p <= x; p += (p == Integer(2) ? 1 : 2)) {
      if (!divides(p, x)) continue;
      if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
      while (divides(p, x)) x = x / p;
    }
    if (x > Integer(1) && std::find(primes.begin(), primes.end(), x) == primes.end()) primes.push_back(x);
  }

  // 1/x + 1/y = p/q with lo <= x <= y, via (px - q)(py - q) = q^2.
  void solve_two(const Integer& p, const Integer& q, const Integer& lo, const std::vector<Integer>& primes) {
    std::vector<std::pair<Integer, int>> fac;  // prime, exponent in q^2
    Integer rest = q;
    for (const auto& pr : primes) {
      int e = 0;
      while (divides(pr, rest)) {
        rest = rest / pr;
        ++e;
      }
      if (e) fac.emplace_back(pr, 2 * e);
    }
    if (!rest.is_one()) throw std::logic_error("unit fraction search lost track of a prime factor");
    const Integer neg_q = mod(-q, p);
    std::vector<std::pair<Integer, Integer>> found;  // (x, y)
    std::function<void(size_t, const Integer&)> walk = [&](size_t idx, const Integer& a) {
      if (a > q) return;
      if (idx == fac.size()) {
        if (!(mod(a, p) == neg_q)) return;
        Integer x = (a + q) / p;
        if (x < lo) return;
        Integer b = (q * q) / a;
        found.emplace_back(x, (b + q) / p);
        return;
      }
      Integer d = a;
      for (int e = 0; e <= fac[idx].second; ++e) {
        if (d > q) break;
        walk(idx + 1, d);
        d *= fac[idx].first;
      }
    };
    walk(0, 1);
    for (const auto& [x, y] : found) emit_with({x, y});
  }

  void recurse(const Integer& p, const Integer& q, const Integer& lo, std::vector<Integer> primes) {
    const size_t remaining = terms_ - prefix_.size();
    if (remaining == 1) {
      if (p.is_one() && q >= lo) emit_with({q});
      return;
    }
    if (remaining == 2) {
      solve_two(p, q, lo, primes);
      return;
    }
    Integer first = std::max(lo, q / p + 1);
    Integer last = (Integer(int64_t(remaining)) * q) / p;
    for (Integer x = first; x <= last; x += 1) {
      Integer np = p * x - q, nq = q * x;
      Integer g = gcd(np, nq);
      std::vector<Integer> next = primes;
      add_prime_factors(x, next);
      prefix_.push_back(x);
      recurse(np / g, nq / g, x, std::move(next));
      prefix_.pop_back();
    }
  }

  size_t terms_;
  const std::function<void(const UnitFractionTuple&)>& emit_;
  std::vector<Integer> prefix_;  // ascending x_0..x_{i-1}
  size_t count_ = 0;
};

}  // namespace

size_t for_each_unit_fraction(size_t n, const std::function<void(const UnitFractionTuple&)>& emit) {
  if (n < 1) throw std::invalid_argument("dimension must be at least 1");
  return UnitFractionSearch(n, emit).run();
}

std::vector<UnitFractionTuple> enumerate_unit_fractions(size_t n) {
  std::vector<UnitFractionTuple> out;
  for_each_unit_fraction(n, [&](const UnitFractionTuple& t) { out.push_back(t); });
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

WeightVector weight_from_unit_fraction(const UnitFractionTuple& t) {
  Integer u = 1;
  for (const auto& ui : t) u = lcm(u, ui);
  WeightVector w;
  for (const auto& ui : t) w.push_back(divexact(u, ui));
  std::sort(w.begin(), w.end());
  return w;
}

UnitFractionTuple unit_fraction_from_weight(const WeightVector& w) {
  Integer s = 0;
  for (const auto& wi : w) s += wi;
  UnitFractionTuple t;
  for (const auto& wi : w) t.push_back(divexact(s, wi));
  std::sort(t.begin(), t.end(), std::greater<>());
  return t;
}

bool is_well_formed(const WeightVector& w) {
  if (w.size() < 2) return false;
  for (const auto& wi : w)
    if (wi < Integer(1)) return false;
  for (size_t skip = 0; skip < w.size(); ++skip) {
    Integer g = 0;
    for (size_t i = 0; i < w.size(); ++i)
      if (i != skip) g = gcd(g, w[i]);
    if (!g.is_one()) return false;
  }
  return true;
}

bool is_gorenstein_weight(const WeightVector& w) {
  if (!is_well_formed(w)) return false;
  Integer l = 1, s = 0;
  for (const auto& wi : w) {
    l = lcm(l, wi);
    s += wi;
  }
  return divides(l, s);
}

namespace {

bool weight_order(const WeightVector& a, const WeightVector& b) {
  Integer sa = 0, sb = 0;
  for (const auto& x : a) sa += x;
  for (const auto& x : b) sb += x;
  if (sa != sb) return sa < sb;
  return a < b;
}

}  // namespace

std::vector<WeightVector> enumerate_gorenstein_weights(size_t n) {
  std::vector<WeightVector> out;
  for_each_unit_fraction(n, [&](const UnitFractionTuple& t) { out.push_back(weight_from_unit_fraction(t)); });
  std::sort(out.begin(), out.end(), weight_order);
  return out;
}

void write_weights(const std::vector<WeightVector>& weights, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    for (const auto& w : weights) {
      for (size_t i = 0; i < w.size(); ++i) os << (i ? " " : "") << w[i];
      os << '\n';
    }
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::vector<WeightVector> read_weights(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  std::vector<WeightVector> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    WeightVector w;
    std::string tok;
    while (ls >> tok) w.push_back(Integer::from_string(tok));
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<WeightVector> load_or_compute_gorenstein_weights(size_t n, const std::filesystem::path& path) {
  if (std::filesystem::exists(path)) {
    auto w = read_weights(path);
    if (!w.empty() && w.front().size() == n + 1) return w;
  }
  auto w = enumerate_gorenstein_weights(n);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  write_weights(w, path);
  return w;
}

}  // namespace fwps
