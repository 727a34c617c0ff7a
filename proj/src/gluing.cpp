#include "fwps/gluing.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "lattice64.hpp"
#include "fwps/normal_form.hpp"

namespace fwps {

namespace {

bool pool_order(const TorsionVector& x, const TorsionVector& y) {
  if (x.order != y.order) return x.order > y.order;
  return x.entries < y.entries;
}

// Weight row plus torsion rows, without the DegreeMatrix bookkeeping.
struct Stack {
  std::vector<IntVector> rows;  // rows[0] = weights
  std::vector<Integer> factors;
};

// For every prime p | mu: with any one column deleted, the stacked rows are
// linearly independent mod p. This is the maximal-minor condition, since the
// minors generate Z/mu iff they do not all vanish mod any p | mu.
bool full_rank_mod(const std::vector<const IntVector*>& rows, size_t del, int64_t p) {
  const size_t m = rows.size(), cols = rows[0]->size();
  std::vector<std::vector<int64_t>> a(m);
  for (size_t i = 0; i < m; ++i)
    for (size_t c = 0; c < cols; ++c)
      if (c != del) a[i].push_back(mod((*rows[i])[c], Integer(p)).to_int64());
  size_t rank = 0;
  for (size_t c = 0; c + 1 < cols && rank < m; ++c) {
    size_t piv = rank;
    while (piv < m && a[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[rank]);
    const int64_t inv = mod_inverse(Integer(a[rank][c]), Integer(p))->to_int64();
    for (size_t r = rank + 1; r < m; ++r) {
      if (a[r][c] == 0) continue;
      const int64_t f = int64_t((__int128)a[r][c] * inv % p);
      for (size_t k = c; k + 1 < cols; ++k)
        a[r][k] = int64_t(((__int128)a[r][k] - (__int128)f * a[rank][k] % p + p) % p);
    }
    ++rank;
  }
  return rank == m;
}

bool full_rank_mod(const std::vector<const IntVector*>& rows, size_t del, const Integer& p) {
  if (p.fits_int64() && p < Integer(int64_t(1) << 62)) return full_rank_mod(rows, del, p.to_int64());
  // Oversized prime: fall back to maximal minors.
  const size_t m = rows.size(), cols = rows[0]->size();
  std::vector<size_t> kept;
  for (size_t c = 0; c < cols; ++c)
    if (c != del) kept.push_back(c);
  bool found = false;
  for_each_subset(kept.size(), m, [&](std::span<const size_t> sub) {
    IntMatrix a(m, m);
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) a(i, j) = (*rows[i])[kept[sub[j]]];
    found = !divides(p, determinant(a));
    return !found;
  });
  return found;
}

// zeta can be appended: divisibility gate, then the maximal-minor condition
// for every deleted column.
bool accepts(const Stack& s, const TorsionVector& zeta, const std::vector<Integer>& primes) {
  const Integer& mu = zeta.order;
  if (!s.factors.empty() && !divides(mu, s.factors.back())) return false;
  const size_t cols = s.rows[0].size();
  const size_t m = s.rows.size() + 1;
  if (m > cols - 1) return false;
  std::vector<const IntVector*> rows;
  for (const auto& r : s.rows) rows.push_back(&r);
  rows.push_back(&zeta.entries);
  for (const auto& p : primes)
    for (size_t del = 0; del < cols; ++del)
      if (!full_rank_mod(rows, del, p)) return false;
  return true;
}

std::vector<Integer> prime_divisors(const Integer& mu) {
  std::vector<Integer> out;
  for (const auto& [p, e] : factorize(mu)) out.push_back(p);
  return out;
}

DegreeMatrix to_degree_matrix(const Stack& s) {
  InvariantFactorGroup g(1, s.factors);
  std::vector<GroupElement> cols(s.rows[0].size());
  for (size_t c = 0; c < cols.size(); ++c) {
    cols[c].free = {s.rows[0][c]};
    for (size_t j = 1; j < s.rows.size(); ++j) cols[c].torsion.push_back(s.rows[j][c]);
  }
  return DegreeMatrix::assume_valid(std::move(g), std::move(cols));
}

class Assembler {
 public:
  Assembler(const TorsionPool& pool, bool prune, const std::function<void(const DegreeMatrix&)>& emit)
      : pool_(pool), prune_(prune), emit_(emit) {
    std::map<Integer, std::vector<Integer>> cache;
    for (const auto& z : pool.rows) {
      auto it = cache.find(z.order);
      if (it == cache.end()) it = cache.emplace(z.order, prime_divisors(z.order)).first;
      primes_.push_back(it->second);
    }
  }

  size_t run(const WeightVector& w) {
    Stack s{{w}, {}};
    emit(s);
    std::vector<size_t> all(pool_.rows.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    grow(s, all);
    return count_;
  }

 private:
  void grow(Stack& s, const std::vector<size_t>& candidates) {
    std::vector<size_t> accepted;
    for (size_t idx : candidates)
      if (accepts(s, pool_.rows[idx], primes_[idx])) accepted.push_back(idx);
    for (size_t p = 0; p < accepted.size(); ++p) {
      const TorsionVector& z = pool_.rows[accepted[p]];
      s.rows.push_back(z.entries);
      s.factors.push_back(z.order);
      emit(s);
      std::vector<size_t> next;
      if (prune_) {
        next.assign(accepted.begin() + p + 1, accepted.end());
      } else {
        for (size_t idx : candidates)
          if (idx > accepted[p]) next.push_back(idx);
      }
      if (!next.empty()) grow(s, next);
      s.rows.pop_back();
      s.factors.pop_back();
    }
  }

  void emit(const Stack& s) {
    ++count_;
    emit_(to_degree_matrix(s));
  }

  const TorsionPool& pool_;
  std::vector<std::vector<Integer>> primes_;  // prime divisors of each row's order
  bool prune_;
  const std::function<void(const DegreeMatrix&)>& emit_;
  size_t count_ = 0;
};

// Kernel-lattice search: one node per distinct kernel of the stacked rows.
// Nodes carry the kernel basis in Hermite form; the basis is extended by
// zeta in machine words when possible, otherwise recomputed exactly.
class LatticeSearch {
 public:
  LatticeSearch(const WeightVector& w, const TorsionPool& pool) : w_(w), pool_(pool) {
    std::map<Integer, std::vector<Integer>> cache;
    for (const auto& z : pool.rows) {
      auto it = cache.find(z.order);
      if (it == cache.end()) it = cache.emplace(z.order, prime_divisors(z.order)).first;
      primes_.push_back(it->second);
    }
  }

  std::vector<AssembledClass> run() {
    Stack root{{w_}, {}};
    IntMatrix basis = generator_from_degree(to_degree_matrix(root)).matrix();
    std::vector<Node> level;
    level.push_back({root, basis});
    seen_.insert(encode_canonical(basis));
    std::vector<AssembledClass> out;
    while (!level.empty()) {
      std::vector<Node> next;
      for (auto& node : level) {
        for (size_t idx = 0; idx < pool_.rows.size(); ++idx) {
          const TorsionVector& z = pool_.rows[idx];
          if (!accepts(node.stack, z, primes_[idx])) continue;
          Stack s = node.stack;
          s.rows.push_back(z.entries);
          s.factors.push_back(z.order);
          IntMatrix b = extend_basis(node.basis, s, z);
          if (!seen_.insert(encode_canonical(b)).second) continue;
          next.push_back({std::move(s), std::move(b)});
        }
        out.push_back({to_degree_matrix(node.stack), std::move(node.basis)});
      }
      level = std::move(next);
    }
    return out;
  }

 private:
  struct Node {
    Stack stack;
    IntMatrix basis;
  };

  static IntMatrix extend_basis(const IntMatrix& basis, const Stack& s, const TorsionVector& z) {
    try {
      return extend_basis64(basis, z);
    } catch (const detail::Overflow&) {
    } catch (const std::overflow_error&) {
    }
    return hermite(generator_from_degree(to_degree_matrix(s)).matrix()).form;
  }

  // Kernel of x -> zeta.x mod mu on the lattice spanned by basis: rotate the
  // basis so only row 0 pairs nontrivially with zeta, then scale row 0.
  static IntMatrix extend_basis64(const IntMatrix& basis, const TorsionVector& z) {
    using namespace detail;
    Mat64 b = Mat64::from(basis);
    if (!z.order.fits_int64()) throw Overflow{};
    const int64_t mu = z.order.to_int64();
    std::vector<int64_t> zeta(b.cols);
    for (size_t c = 0; c < b.cols; ++c) zeta[c] = z.entries[c].to_int64();
    std::vector<int64_t> a(b.rows);
    for (size_t r = 0; r < b.rows; ++r) {
      __int128 acc = 0;
      for (size_t c = 0; c < b.cols; ++c) acc = (acc + (__int128)zeta[c] * b(r, c)) % mu;
      a[r] = int64_t((acc + mu) % mu);
    }
    for (size_t r = 1; r < b.rows; ++r) {
      if (a[r] == 0) continue;
      if (a[0] == 0) {
        std::swap_ranges(b.a.begin(), b.a.begin() + b.cols, b.a.begin() + r * b.cols);
        std::swap(a[0], a[r]);
        continue;
      }
      const Egcd64 e = egcd64(a[0], a[r]);
      combine_rows(b, 0, r, e.s, e.t, -a[r] / e.g, a[0] / e.g);
      a[0] = e.g;
      a[r] = 0;
    }
    const int64_t scale = mu / std::gcd(a[0], mu);
    for (size_t c = 0; c < b.cols; ++c) b(0, c) = checked_mul(b(0, c), scale);
    hermite64(b);
    return b.to_int_matrix();
  }

  const WeightVector& w_;
  const TorsionPool& pool_;
  std::vector<std::vector<Integer>> primes_;
  std::unordered_set<std::string> seen_;
};

}  // namespace

TorsionPool make_pool(WeightVector w, std::vector<TorsionVector> rows) {
  for (const auto& r : rows)
    if (r.weights != w || r.entries.size() != w.size())
      throw std::invalid_argument("torsion vector belongs to a different weight vector");
  std::sort(rows.begin(), rows.end(), pool_order);
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return {std::move(w), std::move(rows)};
}

TorsionPool torsion_pool(const WeightVector& w) {
  std::vector<TorsionVector> rows;
  for (const auto& pair : admissible_order_pairs(w)) {
    auto part = minimal_torsion_vectors(w, pair);
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return make_pool(w, std::move(rows));
}

std::optional<DegreeMatrix> extend_degree_matrix(const DegreeMatrix& q, const TorsionVector& zeta) {
  if (zeta.order < Integer(2)) throw std::invalid_argument("torsion order must be >= 2");
  if (zeta.entries.size() != q.columns().size()) throw std::invalid_argument("torsion row has the wrong length");
  for (const auto& e : zeta.entries)
    if (e.sign() < 0 || e >= zeta.order) throw std::invalid_argument("torsion entries must be canonical residues");
  Stack s{{q.weights()}, q.group().factors()};
  for (size_t j = 0; j < q.group().torsion_count(); ++j) s.rows.push_back(q.torsion_row(j));
  if (!accepts(s, zeta, prime_divisors(zeta.order))) return std::nullopt;
  s.rows.push_back(zeta.entries);
  s.factors.push_back(zeta.order);
  return to_degree_matrix(s);
}

std::vector<DegreeMatrix> assemble_all(const WeightVector& w, const TorsionPool& pool, bool prune) {
  std::vector<DegreeMatrix> out;
  for_each_assembled(w, pool, [&](const DegreeMatrix& q) { out.push_back(q); }, prune);
  return out;
}

size_t for_each_assembled(const WeightVector& w, const TorsionPool& pool,
                          const std::function<void(const DegreeMatrix&)>& emit, bool prune) {
  if (pool.weights != w) throw std::invalid_argument("torsion pool belongs to a different weight vector");
  return Assembler(pool, prune, emit).run(w);
}

}  // namespace fwps

namespace fwps {

std::vector<AssembledClass> assemble_lattices(const WeightVector& w, const TorsionPool& pool) {
  if (pool.weights != w) throw std::invalid_argument("torsion pool belongs to a different weight vector");
  return LatticeSearch(w, pool).run();
}

}  // namespace fwps
