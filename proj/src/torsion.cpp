#include "fwps/torsion.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "fwps/fwps.hpp"

namespace fwps {

namespace {

struct WeightData {
  Integer lcm = 1, sum = 0;
};

WeightData weight_data(const WeightVector& w) {
  WeightData d;
  for (const auto& x : w) {
    d.lcm = lcm(d.lcm, x);
    d.sum += x;
  }
  return d;
}

// Shift normalization: the lex-least vector in eta + Z*w (mod mu). Coordinate
// i can be moved by multiples of d_i while keeping the prefix fixed.
class ShiftReducer {
 public:
  ShiftReducer(const WeightVector& w, const Integer& mu) : w_(w), mu_(mu), bounds_(minimality_bounds(w, mu)) {
    Integer g = mu;  // gcd(mu, w_0..w_{i-1})
    for (size_t i = 0; i < w.size(); ++i) {
      Integer step = divexact(mu, g);  // shifts k*step keep the prefix fixed
      Integer unit_part = divexact(step * w[i], bounds_[i]);
      Integer modulus = divexact(mu, bounds_[i]);
      steps_.push_back(step);
      inverses_.push_back(modulus.is_one() ? Integer(0) : *mod_inverse(unit_part, modulus));
      g = gcd(g, w[i]);
    }
  }

  const IntVector& bounds() const { return bounds_; }

  // Reduce coordinate i of (z + shift*w); updates shift, returns the residue.
  Integer reduce(size_t i, const Integer& z, Integer& shift) const {
    Integer cur = mod(z + shift * w_[i], mu_);
    Integer target = mod(cur, bounds_[i]);
    Integer modulus = divexact(mu_, bounds_[i]);
    if (!modulus.is_one()) {
      // t * (step*w_i/d_i) = -(cur - target)/d_i  mod mu/d_i
      Integer t = mod(-divexact(cur - target, bounds_[i]) * inverses_[i], modulus);
      shift = mod(shift + t * steps_[i], mu_);
    }
    return target;
  }

  IntVector normalize(const IntVector& eta) const {
    IntVector out(eta.size());
    Integer shift = 0;
    for (size_t i = 0; i < eta.size(); ++i) out[i] = reduce(i, eta[i], shift);
    return out;
  }

 private:
  const WeightVector& w_;
  Integer mu_;
  IntVector bounds_;
  IntVector steps_, inverses_;
};

// Every n-subset of columns (w_i, eta_i) generates Z + Z/mu: the 2x2 minors
// avoiding each deleted column have gcd coprime to mu. Weights are well formed.
bool generates(const WeightVector& w, const IntVector& eta, const Integer& mu) {
  const size_t m = w.size();
  if (m == 2) return false;  // Z + Z/mu is not cyclic
  std::vector<Integer> minor(m * m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) minor[i * m + j] = eta[i] * w[j] - eta[j] * w[i];
  for (size_t l = 0; l < m; ++l) {
    Integer g = mu;
    for (size_t i = 0; i < m && !g.is_one(); ++i) {
      if (i == l) continue;
      for (size_t j = i + 1; j < m && !g.is_one(); ++j)
        if (j != l) g = gcd(g, minor[i * m + j]);
    }
    if (!g.is_one()) return false;
  }
  return true;
}

Integer torsion_gcd(const WeightVector& w, const IntVector& eta, const Integer& mu, const Integer& l) {
  Integer g = mu;
  for (size_t i = 0; i < w.size(); ++i) g = gcd(g, divexact(l, w[i]) * eta[i]);
  return g;
}

class TorsionSearch {
 public:
  TorsionSearch(const WeightVector& w, const OrderPair& pair, bool prune)
      : w_(w), a_(pair.a), mu_(pair.order()), prune_(prune), reducer_(w, mu_) {
    const WeightData wd = weight_data(w);
    l_ = wd.lcm;
    if (!divides(a_, l_) || !divides(pair.b, divexact(wd.sum, l_)))
      throw std::invalid_argument("order pair does not divide (L, S/L)");
    const Integer alpha = divexact(l_, a_);
    for (size_t i = 0; i < w.size(); ++i) {
      c_.push_back(divexact(w[i], gcd(alpha, w[i])));
      counts_.push_back(ceil_div(reducer_.bounds()[i], c_.back()));
    }
    for (const auto& u : units_mod(mu_))
      if (!u.is_one()) units_.push_back(u);
    eta_.assign(w.size(), Integer(0));
  }

  std::vector<TorsionVector> run() {
    std::vector<Tied> tied;
    for (const auto& u : units_) tied.push_back({u, 0});
    dfs(0, 0, tied);
    return std::move(out_);
  }

 private:
  struct Tied {
    Integer u, shift;
  };

  // Drops units whose image now exceeds eta; false if one undercuts it.
  bool advance(size_t i, std::vector<Tied>& tied) const {
    size_t keep = 0;
    for (auto& t : tied) {
      Integer r = reducer_.reduce(i, t.u * eta_[i], t.shift);
      if (r < eta_[i]) return false;
      if (r == eta_[i]) tied[keep++] = t;
    }
    tied.resize(keep);
    return true;
  }

  void dfs(size_t i, const Integer& sum, const std::vector<Tied>& tied) {
    const size_t last = w_.size() - 1;
    if (i == last) {
      // c_n k_n = -sum mod mu
      Integer g = gcd(c_[last], mu_);
      Integer rhs = mod(-sum, mu_);
      if (!divides(g, rhs)) return;
      Integer m = divexact(mu_, g);
      Integer k0 = m.is_one() ? Integer(0) : mod(divexact(rhs, g) * *mod_inverse(divexact(c_[last], g), m), m);
      for (Integer k = k0; k < counts_[last]; k += m) {
        eta_[last] = c_[last] * k;
        std::vector<Tied> t = tied;
        if (prune_ && !advance(last, t)) continue;
        leaf();
      }
      return;
    }
    for (Integer k = 0; k < counts_[i]; k += 1) {
      eta_[i] = c_[i] * k;
      if (prune_) {
        std::vector<Tied> t = tied;
        if (!advance(i, t)) continue;
        dfs(i + 1, sum + eta_[i], t);
      } else {
        dfs(i + 1, sum + eta_[i], tied);
      }
    }
  }

  void leaf() {
    if (!(torsion_gcd(w_, eta_, mu_, l_) == a_)) return;
    if (!generates(w_, eta_, mu_)) return;
    TorsionVector t{mu_, eta_, w_};
    if (!prune_ && !is_minimal(t)) return;
    out_.push_back(std::move(t));
  }

  const WeightVector& w_;
  Integer a_, mu_, l_;
  bool prune_;
  ShiftReducer reducer_;
  IntVector c_, counts_;
  std::vector<Integer> units_;
  IntVector eta_;
  std::vector<TorsionVector> out_;
};


// Machine-word version of the pruned search. The tied units form a group
// acting on coordinate i by x -> u*x + shift*w_i (mod d_i); once that group is
// large, candidates are swept in ascending order and each orbit is marked the
// first time it is met, so non-minimal candidates cost O(1).
class FastTorsionSearch {
  using i64 = int64_t;
  using i128 = __int128;

 public:
  static bool fits(const WeightVector& w, const OrderPair& pair) {
    const Integer limit = Integer(int64_t(1) << 62);
    if (pair.order() >= limit) return false;
    Integer s = 0;
    for (const auto& x : w) s += x;
    return s < limit;
  }

  FastTorsionSearch(const WeightVector& w, const OrderPair& pair) : weights_(w) {
    const WeightData wd = weight_data(w);
    if (!divides(pair.a, wd.lcm) || !divides(pair.b, divexact(wd.sum, wd.lcm)))
      throw std::invalid_argument("order pair does not divide (L, S/L)");
    mu_ = pair.order().to_int64();
    a_ = pair.a.to_int64();
    const Integer alpha = divexact(wd.lcm, pair.a);
    ShiftReducer reducer(w, pair.order());
    Integer g = pair.order();
    for (size_t i = 0; i < w.size(); ++i) {
      w_.push_back(w[i].to_int64());
      d_.push_back(reducer.bounds()[i].to_int64());
      Integer step = divexact(pair.order(), g);
      step_.push_back(step.to_int64());
      Integer modulus = divexact(pair.order(), reducer.bounds()[i]);
      inv_.push_back(modulus.is_one() ? 0
                                      : mod_inverse(divexact(step * w[i], reducer.bounds()[i]), modulus)->to_int64());
      c_.push_back(divexact(w[i], gcd(alpha, w[i])).to_int64());
      lw_.push_back(mod(divexact(wd.lcm, w[i]), pair.order()).to_int64());
      g = gcd(g, w[i]);
    }
    eta_.assign(w.size(), 0);
  }

  std::vector<TorsionVector> run() {
    if (run_unpruned()) return std::move(out_);
    out_.clear();
    std::vector<Tied> tied;
    for (i64 u = 2; u < mu_; ++u)
      if (std::gcd(u, mu_) == 1) tied.push_back({u, 0});
    dfs(0, 0, tied);
    return std::move(out_);
  }

 private:
  struct Tied {
    i64 u, shift;
  };

  i64 mulmod(i64 x, i64 y) const { return i64(i128(x) * y % mu_); }

  // Image of x under t on coordinate i; updates t.shift to the reducing shift.
  i64 image(size_t i, i64 x, Tied& t) const {
    i64 cur = (mulmod(t.u, x) + mulmod(t.shift, w_[i] % mu_)) % mu_;
    i64 y = cur % d_[i];
    i64 modulus = mu_ / d_[i];
    if (modulus > 1) {
      i64 q = ((cur - y) / d_[i]) % modulus;
      i64 tt = i64(i128(modulus - q) % modulus * inv_[i] % modulus);
      t.shift = (t.shift + i64(i128(tt) * step_[i] % mu_)) % mu_;
    }
    return y;
  }

  // Checks x against the tied units; fills `next` with those still tied.
  bool scan(size_t i, i64 x, const std::vector<Tied>& tied, std::vector<Tied>& next,
            std::vector<uint64_t>* seen) const {
    next.clear();
    for (Tied t : tied) {
      i64 y = image(i, x, t);
      if (y < x) return false;
      if (seen) (*seen)[size_t(y) >> 6] |= uint64_t(1) << (y & 63);
      if (y == x) next.push_back(t);
    }
    return true;
  }

  void dfs(size_t i, i64 sum, const std::vector<Tied>& tied) {
    const size_t last = w_.size() - 1;
    std::vector<Tied> next;
    if (i == last) {
      for_each_solution(last, sum, [&](i64 x) {
        eta_[last] = x;
        if (scan(last, x, tied, next, nullptr)) leaf();
      });
      return;
    }
    const i64 count = (d_[i] + c_[i] - 1) / c_[i];
    const bool orbits = tied.size() > 32 && d_[i] <= (i64(1) << 30) && count > 1;
    std::vector<uint64_t> seen;
    if (orbits) seen.assign(size_t(d_[i] >> 6) + 1, 0);
    for (i64 k = 0; k < count; ++k) {
      const i64 x = c_[i] * k;
      if (orbits && (seen[size_t(x) >> 6] >> (x & 63) & 1)) continue;
      if (!scan(i, x, tied, next, orbits ? &seen : nullptr)) continue;
      eta_[i] = x;
      dfs(i + 1, (sum + x) % mu_, next);
    }
  }

  // Large orders usually admit few vectors. Enumerate shift-normalized
  // candidates without unit pruning, solving the widest coordinate from the
  // sum congruence, then test the few survivors against every unit. False
  // when the search or the survivor list would be too large.
  bool run_unpruned() {
    constexpr double kNodeBudget = double(1 << 24);
    constexpr size_t kSurvivorBudget = 64;
    const size_t m = w_.size();
    std::vector<i64> count(m);
    size_t solved = 0;
    for (size_t i = 0; i < m; ++i) {
      count[i] = (d_[i] + c_[i] - 1) / c_[i];
      if (count[i] > count[solved]) solved = i;
    }
    double nodes = 1;
    for (size_t i = 0; i < m; ++i)
      if (i != solved) nodes *= double(count[i]);
    if (nodes > kNodeBudget) return false;

    std::vector<std::vector<i64>> survivors;
    bool ok = true;
    auto dfs_raw = [&](auto&& self, size_t i, i64 sum) -> void {
      if (!ok) return;
      if (i == solved) return self(self, i + 1, sum);
      if (i == m) {
        for_each_solution(solved, sum, [&](i64 x) {
          eta_[solved] = x;
          if (!leaf_conditions()) return;
          if (survivors.size() == kSurvivorBudget) ok = false;
          else survivors.push_back(eta_);
        });
        return;
      }
      for (i64 k = 0; k < count[i] && ok; ++k) {
        eta_[i] = c_[i] * k;
        self(self, i + 1, (sum + eta_[i]) % mu_);
      }
    };
    dfs_raw(dfs_raw, 0, 0);
    if (!ok) return false;
    std::sort(survivors.begin(), survivors.end());
    for (const auto& eta : survivors) {
      if (!minimal_under_units(eta)) continue;
      out_.push_back({Integer(mu_), IntVector(eta.begin(), eta.end()), weights_});
    }
    return true;
  }

  bool minimal_under_units(const std::vector<i64>& eta) const {
    for (i64 u = 2; u < mu_; ++u) {
      if (std::gcd(u, mu_) != 1) continue;
      Tied t{u, 0};
      for (size_t i = 0; i < eta.size(); ++i) {
        const i64 y = image(i, eta[i], t);
        if (y < eta[i]) return false;
        if (y > eta[i]) break;
      }
    }
    return true;
  }

  // Calls f for each admissible value of coordinate `last` making the total
  // sum vanish, given the sum of the other coordinates.
  template <class F>
  void for_each_solution(size_t last, i64 sum, F&& f) const {
    i64 g = std::gcd(c_[last], mu_);
    i64 rhs = (mu_ - sum) % mu_;
    if (rhs % g != 0) return;
    i64 m = mu_ / g;
    i64 k0 = 0;
    if (m > 1) {
      i64 inv = mod_inverse(Integer(c_[last] / g), Integer(m))->to_int64();
      k0 = i64(i128(rhs / g) * inv % m);
    }
    const i64 count = (d_[last] + c_[last] - 1) / c_[last];
    for (i64 k = k0; k < count; k += m) f(c_[last] * k);
  }

  bool leaf_conditions() const {
    i64 g = mu_;
    for (size_t i = 0; i < w_.size(); ++i) g = std::gcd(g, mulmod(lw_[i], eta_[i]));
    return g == a_ && generates();
  }

  bool generates() const {
    const size_t m = w_.size();
    if (m == 2) return false;
    std::vector<i64> minor(m * m);
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j)
        minor[i * m + j] = (mulmod(eta_[i], w_[j] % mu_) - mulmod(eta_[j], w_[i] % mu_) + mu_) % mu_;
    for (size_t l = 0; l < m; ++l) {
      i64 g = mu_;
      for (size_t i = 0; i < m && g != 1; ++i) {
        if (i == l) continue;
        for (size_t j = i + 1; j < m && g != 1; ++j)
          if (j != l) g = std::gcd(g, minor[i * m + j]);
      }
      if (g != 1) return false;
    }
    return true;
  }

  void leaf() {
    if (!leaf_conditions()) return;
    IntVector entries(eta_.begin(), eta_.end());
    out_.push_back({Integer(mu_), std::move(entries), weights_});
  }

  const WeightVector& weights_;
  i64 mu_ = 0, a_ = 0;
  std::vector<i64> w_, d_, step_, inv_, c_, lw_, eta_;
  std::vector<TorsionVector> out_;
};

}  // namespace

std::vector<OrderPair> admissible_order_pairs(const WeightVector& w) {
  const WeightData wd = weight_data(w);
  if (!divides(wd.lcm, wd.sum)) throw std::invalid_argument("weight vector is not Gorenstein");
  std::vector<OrderPair> out;
  const auto as = divisors(wd.lcm), bs = divisors(divexact(wd.sum, wd.lcm));
  for (const auto& a : as) {
    const Integer alpha = divexact(wd.lcm, a);
    Integer g = 0;  // gcd of w_i w_j / gcd(alpha, w_i w_j)
    for (size_t i = 0; i < w.size(); ++i)
      for (size_t j = i; j < w.size(); ++j) {
        Integer p = w[i] * w[j];
        g = gcd(g, divexact(p, gcd(alpha, p)));
      }
    for (const auto& b : bs) {
      Integer mu = a * b;
      if (mu < Integer(2) || !gcd(mu, g).is_one()) continue;
      out.push_back({a, b});
    }
  }
  std::sort(out.begin(), out.end(), [](const OrderPair& x, const OrderPair& y) {
    Integer mx = x.order(), my = y.order();
    return mx != my ? mx < my : x.a < y.a;
  });
  return out;
}

std::vector<TorsionVector> minimal_torsion_vectors(const WeightVector& w, const OrderPair& pair) {
  if (pair.order() < Integer(2)) throw std::invalid_argument("torsion order must be >= 2");
  if (FastTorsionSearch::fits(w, pair)) return FastTorsionSearch(w, pair).run();
  return TorsionSearch(w, pair, true).run();
}

std::vector<TorsionVector> minimal_torsion_vectors_unpruned(const WeightVector& w, const OrderPair& pair) {
  if (pair.order() < Integer(2)) throw std::invalid_argument("torsion order must be >= 2");
  return TorsionSearch(w, pair, false).run();
}

IntVector minimality_bounds(const WeightVector& w, const Integer& mu) {
  IntVector d;
  Integer prev = mu;
  for (const auto& x : w) {
    Integer cur = gcd(prev, x);
    d.push_back(divexact(mu * cur, prev));
    prev = cur;
  }
  return d;
}

bool is_minimal(const TorsionVector& t) {
  const Integer& mu = t.order;
  if (t.entries.size() != t.weights.size() || mu < Integer(2)) return false;
  for (const auto& e : t.entries)
    if (e.sign() < 0 || e >= mu) return false;
  ShiftReducer reducer(t.weights, mu);
  if (reducer.normalize(t.entries) != t.entries) return false;
  for (const auto& u : units_mod(mu))
    if (reducer.normalize(scale_torsion(t.entries, u, mu)) < t.entries) return false;
  return true;
}

bool is_gorenstein_torsion(const TorsionVector& t) {
  if (t.order < Integer(2) || t.entries.size() != t.weights.size() || t.weights.size() < 2) return false;
  if (!std::is_sorted(t.weights.begin(), t.weights.end())) return false;
  for (const auto& x : t.weights)
    if (x.sign() <= 0) return false;
  InvariantFactorGroup g(1, {t.order});
  std::vector<GroupElement> cols;
  for (size_t i = 0; i < t.weights.size(); ++i) cols.push_back(make_element(g, {t.weights[i]}, {t.entries[i]}));
  if (!failing_column_subset(g, cols).empty()) return false;
  return is_gorenstein(DegreeMatrix(g, std::move(cols)));
}

IntVector scale_torsion(const IntVector& eta, const Integer& u, const Integer& mu) {
  IntVector out;
  out.reserve(eta.size());
  for (const auto& e : eta) out.push_back(mod(u * e, mu));
  return out;
}

std::vector<Integer> units_mod(const Integer& mu) {
  std::vector<Integer> out;
  for (Integer u = 1; u < mu; u += 1)
    if (gcd(u, mu).is_one()) out.push_back(u);
  if (mu.is_one()) out.push_back(0);
  return out;
}

}  // namespace fwps
