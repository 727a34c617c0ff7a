#include "fwps/abelian.hpp"

#include <stdexcept>
#include <string>

namespace fwps {

InvariantFactorGroup::InvariantFactorGroup(size_t rank, std::vector<Integer> factors)
    : rank_(rank), factors_(std::move(factors)) {
  for (size_t j = 0; j < factors_.size(); ++j) {
    if (factors_[j] < Integer(2))
      throw std::invalid_argument("invariant factor must be >= 2, got " + factors_[j].to_string());
    if (j > 0 && !divides(factors_[j], factors_[j - 1]))
      throw std::invalid_argument("invariant factors must form a divisibility chain");
  }
}

InvariantFactorGroup InvariantFactorGroup::with_factor(const Integer& mu) const {
  std::vector<Integer> f = factors_;
  f.push_back(mu);
  return InvariantFactorGroup(rank_, std::move(f));
}

GroupElement make_element(const InvariantFactorGroup& g, IntVector free, IntVector torsion) {
  if (free.size() != g.rank() || torsion.size() != g.torsion_count())
    throw std::invalid_argument("element shape does not match group");
  for (size_t j = 0; j < torsion.size(); ++j) torsion[j] = mod(torsion[j], g.factor(j));
  return {std::move(free), std::move(torsion)};
}

bool belongs_to(const GroupElement& e, const InvariantFactorGroup& g) {
  if (e.free.size() != g.rank() || e.torsion.size() != g.torsion_count()) return false;
  for (size_t j = 0; j < e.torsion.size(); ++j)
    if (e.torsion[j].sign() < 0 || e.torsion[j] >= g.factor(j)) return false;
  return true;
}

// ---------------------------------------------------------------------------

void GMatrix::validate() const {
  const size_t k = group_.rank(), r = group_.torsion_count(), d = k + r;
  if (entries_.rows() != d || entries_.cols() != d)
    throw std::invalid_argument("G-matrix has wrong shape");
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < r; ++j)
      if (!entries_(i, k + j).is_zero())
        throw std::invalid_argument("G-matrix top-right block must vanish");
  for (size_t i = 0; i < r; ++i) {
    const Integer& mu_i = group_.factor(i);
    for (size_t c = 0; c < d; ++c) {
      const Integer& a = entries_(k + i, c);
      if (a.sign() < 0 || a >= mu_i)
        throw std::invalid_argument("G-matrix torsion entry not canonical");
    }
    for (size_t j = 0; j < r; ++j)
      if (!divides(mu_i, group_.factor(j) * entries_(k + i, k + j)))
        throw std::invalid_argument("not a well-defined endomorphism: mu_" + std::to_string(j + 1) +
                                    " * e_" + std::to_string(k + j + 1) + " maps to nonzero");
  }
}

GMatrix GMatrix::checked(InvariantFactorGroup g, IntMatrix e) {
  const size_t k = g.rank();
  for (size_t i = 0; i < g.torsion_count(); ++i)
    for (size_t c = 0; c < e.cols(); ++c) e(k + i, c) = mod(e(k + i, c), g.factor(i));
  GMatrix m(std::move(g), std::move(e));
  m.validate();
  return m;
}

GMatrix GMatrix::identity(const InvariantFactorGroup& g) {
  return GMatrix(g, IntMatrix::identity(g.dimension()));
}

GMatrix GMatrix::from_endomorphism(std::span<const GroupElement> images,
                                   const InvariantFactorGroup& g) {
  const size_t k = g.rank(), d = g.dimension();
  if (images.size() != d) throw std::invalid_argument("need one image per basis element");
  IntMatrix e(d, d);
  for (size_t c = 0; c < d; ++c) {
    if (images[c].free.size() != k || images[c].torsion.size() != g.torsion_count())
      throw std::invalid_argument("image does not belong to the group");
    for (size_t i = 0; i < k; ++i) e(i, c) = images[c].free[i];
    for (size_t i = 0; i < g.torsion_count(); ++i) e(k + i, c) = images[c].torsion[i];
  }
  return checked(g, std::move(e));
}

GroupElement GMatrix::column(size_t c) const {
  const size_t k = group_.rank();
  GroupElement e;
  for (size_t i = 0; i < k; ++i) e.free.push_back(entries_(i, c));
  for (size_t i = 0; i < group_.torsion_count(); ++i) e.torsion.push_back(entries_(k + i, c));
  return e;
}

GroupElement GMatrix::apply(const GroupElement& w) const {
  if (!belongs_to(w, group_)) throw std::invalid_argument("element does not belong to the group");
  const size_t k = group_.rank(), r = group_.torsion_count();
  auto coord = [&](size_t c) -> const Integer& { return c < k ? w.free[c] : w.torsion[c - k]; };
  GroupElement out;
  for (size_t i = 0; i < k; ++i) {
    Integer s = 0;
    for (size_t c = 0; c < k; ++c) s += entries_(i, c) * coord(c);
    out.free.push_back(std::move(s));
  }
  for (size_t i = 0; i < r; ++i) {
    Integer s = 0;
    for (size_t c = 0; c < k + r; ++c) s += entries_(k + i, c) * coord(c);
    out.torsion.push_back(mod(s, group_.factor(i)));
  }
  return out;
}

GMatrix operator*(const GMatrix& a, const GMatrix& b) {
  if (!(a.group_ == b.group_)) throw std::invalid_argument("G-matrices over different groups");
  return GMatrix::checked(a.group_, a.entries_ * b.entries_);
}

// ---------------------------------------------------------------------------

namespace {

void check_elementary(const InvariantFactorGroup& g, const ElementaryAutomorphism& e) {
  const size_t k = g.rank(), r = g.torsion_count();
  auto fail = [](const char* msg) { throw std::invalid_argument(msg); };
  switch (e.kind) {
    case ElementaryKind::FreeSign:
      if (e.i >= k) fail("psi_i: index out of range");
      break;
    case ElementaryKind::TorsionUnit:
      if (e.i >= r) fail("psi_{i,u}: index out of range");
      if (!gcd(e.parameter, g.factor(e.i)).is_one()) fail("psi_{i,u}: u is not a unit");
      break;
    case ElementaryKind::FreeShear:
      if (e.i >= k || e.j >= k || e.i == e.j) fail("alpha_{i,j}: indices out of range");
      break;
    case ElementaryKind::FreeToTorsion:
      if (e.i >= r || e.j >= k) fail("beta_{i,j}: indices out of range");
      break;
    case ElementaryKind::TorsionDown:
      if (e.i >= r || e.j >= e.i) fail("gamma_{i,j}: requires j < i < r");
      break;
    case ElementaryKind::TorsionUp:
      if (e.j >= r || e.i >= e.j) fail("delta_{i,j}: requires i < j < r");
      break;
  }
}

}  // namespace

GMatrix elementary_automorphism(const InvariantFactorGroup& g, const ElementaryAutomorphism& e) {
  check_elementary(g, e);
  const size_t k = g.rank();
  IntMatrix m = IntMatrix::identity(g.dimension());
  switch (e.kind) {
    case ElementaryKind::FreeSign: m(e.i, e.i) = -1; break;
    case ElementaryKind::TorsionUnit: m(k + e.i, k + e.i) = e.parameter; break;
    case ElementaryKind::FreeShear: m(e.i, e.j) = e.parameter; break;
    case ElementaryKind::FreeToTorsion: m(k + e.i, e.j) = e.parameter; break;
    case ElementaryKind::TorsionDown: m(k + e.i, k + e.j) = e.parameter; break;
    case ElementaryKind::TorsionUp:
      m(k + e.i, k + e.j) = e.parameter * divexact(g.factor(e.i), g.factor(e.j));
      break;
  }
  return GMatrix::from_endomorphism(
      [&] {
        std::vector<GroupElement> cols;
        for (size_t c = 0; c < m.cols(); ++c) {
          GroupElement col;
          for (size_t i = 0; i < k; ++i) col.free.push_back(m(i, c));
          for (size_t i = 0; i < g.torsion_count(); ++i) col.torsion.push_back(m(k + i, c));
          cols.push_back(std::move(col));
        }
        return cols;
      }(),
      g);
}

ElementaryAutomorphism inverse(const InvariantFactorGroup& g, const ElementaryAutomorphism& e) {
  check_elementary(g, e);
  ElementaryAutomorphism inv = e;
  switch (e.kind) {
    case ElementaryKind::FreeSign: break;
    case ElementaryKind::TorsionUnit: inv.parameter = *mod_inverse(e.parameter, g.factor(e.i)); break;
    case ElementaryKind::FreeShear: inv.parameter = -e.parameter; break;
    case ElementaryKind::FreeToTorsion:
    case ElementaryKind::TorsionDown: inv.parameter = mod(-e.parameter, g.factor(e.i)); break;
    case ElementaryKind::TorsionUp: inv.parameter = mod(-e.parameter, g.factor(e.j)); break;
  }
  return inv;
}

GMatrix elementary_inverse(const InvariantFactorGroup& g, const ElementaryAutomorphism& e) {
  return elementary_automorphism(g, inverse(g, e));
}

// ---------------------------------------------------------------------------

Integer coprime_shift(const Integer& a, const Integer& b, const Integer& c) {
  if (c.is_zero()) throw std::invalid_argument("coprime_shift: modulus must be nonzero");
  if (!gcd(gcd(a, b), c).is_one()) throw std::invalid_argument("coprime_shift: gcd(a, b, c) != 1");
  // Chinese remainder construction: k = 0 mod p where p does not divide a,
  // k = 1 mod p where it does. This bounds the search below.
  Integer k = 0, modulus = 1;
  for (const auto& [p, e] : factorize(c)) {
    Integer target = divides(p, a) ? 1 : 0;
    // solve k + modulus * t = target (mod p)
    Integer inv = *mod_inverse(modulus, p);
    Integer t = mod((target - k) * inv, p);
    k += modulus * t;
    modulus *= p;
  }
  for (Integer s = 0; s < k; s += 1)
    if (gcd(a + s * b, c).is_one()) return s;
  return k;
}

// ---------------------------------------------------------------------------

namespace {

IntMatrix stacked_coordinates(std::span<const GroupElement> elements, const InvariantFactorGroup& g,
                              size_t torsion_rows) {
  const size_t k = g.rank();
  IntMatrix q(k + torsion_rows, elements.size());
  for (size_t c = 0; c < elements.size(); ++c) {
    if (!belongs_to(elements[c], g)) throw std::invalid_argument("element does not belong to the group");
    for (size_t i = 0; i < k; ++i) q(i, c) = elements[c].free[i];
    for (size_t i = 0; i < torsion_rows; ++i) q(k + i, c) = elements[c].torsion[i];
  }
  return q;
}

// gcd of all maximal minors of q together with `modulus` (0 means over Z).
Integer minor_gcd(const IntMatrix& q, const Integer& modulus) {
  Integer g = modulus;
  for_each_subset(q.cols(), q.rows(), [&](std::span<const size_t> cols) {
    g = gcd(g, determinant(q.select_columns(cols)));
    return !g.is_one();
  });
  return g;
}

}  // namespace

bool is_generating(std::span<const GroupElement> elements, const InvariantFactorGroup& g) {
  const size_t k = g.rank(), n = elements.size();
  if (k + g.torsion_count() == 0) {
    for (const auto& e : elements)
      if (!belongs_to(e, g)) throw std::invalid_argument("element does not belong to the group");
    return true;
  }
  if (k > n) return false;
  IntMatrix full = stacked_coordinates(elements, g, g.torsion_count());
  if (k > 0) {
    std::vector<size_t> rows(k);
    for (size_t i = 0; i < k; ++i) rows[i] = i;
    if (!minor_gcd(full.select_rows(rows), 0).is_one()) return false;
  }
  for (size_t j = 1; j <= g.torsion_count(); ++j) {
    if (k + j > n) return false;
    std::vector<size_t> rows(k + j);
    for (size_t i = 0; i < k + j; ++i) rows[i] = i;
    if (!minor_gcd(full.select_rows(rows), g.factor(j - 1)).is_one()) return false;
  }
  return true;
}

bool is_generating_snf(std::span<const GroupElement> elements, const InvariantFactorGroup& g) {
  const size_t k = g.rank(), r = g.torsion_count(), n = elements.size();
  if (k + r == 0) return true;
  IntMatrix q = stacked_coordinates(elements, g, r);
  IntMatrix m(k + r, n + r);
  for (size_t i = 0; i < k + r; ++i)
    for (size_t c = 0; c < n; ++c) m(i, c) = q(i, c);
  for (size_t j = 0; j < r; ++j) m(k + j, n + j) = g.factor(j);
  SmithResult s = smith(m);
  if (s.diagonal.size() < k + r) return false;
  for (size_t i = 0; i < k + r; ++i)
    if (!s.diagonal[i].is_one()) return false;
  return true;
}

// ---------------------------------------------------------------------------

GMatrix product(const InvariantFactorGroup& g, std::span<const ElementaryAutomorphism> factors) {
  GMatrix p = GMatrix::identity(g);
  for (const auto& e : factors) p = p * elementary_automorphism(g, e);
  return p;
}

std::vector<ElementaryAutomorphism> factor_automorphism(const GMatrix& a) {
  const InvariantFactorGroup& g = a.group();
  const size_t k = g.rank(), r = g.torsion_count();
  {
    std::vector<GroupElement> cols;
    for (size_t c = 0; c < k + r; ++c) cols.push_back(a.column(c));
    if (!is_generating(cols, g)) throw std::invalid_argument("factor_automorphism: matrix is not invertible");
  }

  // Reduce `cur` to the identity by left multiplications, recording each.
  GMatrix cur = a;
  std::vector<ElementaryAutomorphism> applied;
  auto step = [&](ElementaryKind kind, size_t i, size_t j, Integer param) {
    switch (kind) {
      case ElementaryKind::FreeSign: break;
      case ElementaryKind::TorsionUnit:
        param = mod(param, g.factor(i));
        if (param.is_one()) return;
        break;
      case ElementaryKind::FreeShear:
        if (param.is_zero()) return;
        break;
      case ElementaryKind::FreeToTorsion:
      case ElementaryKind::TorsionDown:
        param = mod(param, g.factor(i));
        if (param.is_zero()) return;
        break;
      case ElementaryKind::TorsionUp:
        param = mod(param, g.factor(j));
        if (param.is_zero()) return;
        break;
    }
    ElementaryAutomorphism e{kind, i, j, std::move(param)};
    cur = elementary_automorphism(g, e) * cur;
    applied.push_back(std::move(e));
  };
  auto at = [&](size_t row, size_t col) -> const Integer& { return cur.entries()(row, col); };
  auto singular = [] { throw std::invalid_argument("factor_automorphism: matrix is not invertible"); };

  // Free block: Euclid on each column with shears, then signs.
  for (size_t c = 0; c < k; ++c) {
    size_t p;
    while (true) {
      p = k;
      for (size_t i = c; i < k; ++i)
        if (!at(i, c).is_zero() && (p == k || abs(at(i, c)) < abs(at(p, c)))) p = i;
      if (p == k) singular();
      bool clean = true;
      for (size_t i = c; i < k; ++i) {
        if (i == p || at(i, c).is_zero()) continue;
        step(ElementaryKind::FreeShear, i, p, -(at(i, c) / at(p, c)));
        if (!at(i, c).is_zero()) clean = false;
      }
      if (clean) break;
    }
    if (p != c) {
      step(ElementaryKind::FreeShear, c, p, 1);
      step(ElementaryKind::FreeShear, p, c, -divexact(at(p, c), at(c, c)));
    }
    if (!abs(at(c, c)).is_one()) singular();
    if (at(c, c).sign() < 0) step(ElementaryKind::FreeSign, c, 0, 1);
    for (size_t i = 0; i < k; ++i)
      if (i != c) step(ElementaryKind::FreeShear, i, c, -at(i, c));
  }
  // Torsion rows, free columns.
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < k; ++j) step(ElementaryKind::FreeToTorsion, i, j, -at(k + i, j));
  // Torsion block, last column first: make the diagonal entry a unit, scale
  // it to one, clear the entries above.
  for (size_t c = r; c-- > 0;) {
    const Integer& mu_c = g.factor(c);
    Integer above = 0;
    for (size_t i = 0; i < c; ++i) above = gcd(above, at(k + i, k + c));
    if (!gcd(gcd(at(k + c, k + c), above), mu_c).is_one()) singular();
    Integer shift = coprime_shift(at(k + c, k + c), above, mu_c);
    if (!shift.is_zero() && !above.is_zero()) {
      // above = sum s_i * a_i by successive Bezout combinations
      std::vector<Integer> coeff(c, 0);
      Integer acc = 0;
      for (size_t i = 0; i < c; ++i) {
        ExtendedGcd e = extended_gcd(acc, at(k + i, k + c));
        for (size_t t = 0; t < i; ++t) coeff[t] *= e.s;
        coeff[i] = e.t;
        acc = e.g;
      }
      for (size_t i = 0; i < c; ++i) step(ElementaryKind::TorsionDown, c, i, shift * coeff[i]);
    }
    auto u_inv = mod_inverse(at(k + c, k + c), mu_c);
    if (!u_inv) singular();
    step(ElementaryKind::TorsionUnit, c, 0, *u_inv);
    for (size_t i = 0; i < c; ++i) {
      Integer x = divexact(at(k + i, k + c), divexact(g.factor(i), mu_c));
      step(ElementaryKind::TorsionUp, i, c, -x);
    }
  }
  // Lower unitriangular remainder.
  for (size_t c = 0; c < r; ++c)
    for (size_t i = c + 1; i < r; ++i) step(ElementaryKind::TorsionDown, i, c, -at(k + i, k + c));

  if (!(cur == GMatrix::identity(g)))
    throw std::logic_error("factor_automorphism: reduction did not reach the identity");

  std::vector<ElementaryAutomorphism> factors;
  factors.reserve(applied.size());
  for (const auto& e : applied) factors.push_back(inverse(g, e));
  return factors;
}

}  // namespace fwps
