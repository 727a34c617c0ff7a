#include "fwps/normal_form.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_set>

#include "lattice64.hpp"

namespace fwps {

namespace {

constexpr char kFormatVersion = '\x01';

IntMatrix permute_columns(const IntMatrix& p, const Permutation& perm) {
  IntMatrix out(p.rows(), p.cols());
  for (size_t r = 0; r < p.rows(); ++r)
    for (size_t c = 0; c < p.cols(); ++c) out(r, c) = p(r, perm[c]);
  return out;
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& p) {
  auto h = hermite(p);
  if (h.pivots.size() != p.rows()) throw std::invalid_argument("matrix does not have full row rank");
  return {std::move(h.form), std::move(h.pivots)};
}

void for_each_allowed_permutation(const WeightVector& w, const std::function<bool(const Permutation&)>& f) {
  if (!std::is_sorted(w.begin(), w.end())) throw std::invalid_argument("weights must be ascending");
  Permutation perm(w.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::vector<std::pair<size_t, size_t>> blocks;
  for (size_t i = 0; i < w.size();) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (j - i > 1) blocks.emplace_back(i, j);
    i = j;
  }
  // Odometer over the blocks; next_permutation wraps each block back to sorted.
  while (true) {
    if (!f(perm)) return;
    size_t b = 0;
    for (; b < blocks.size(); ++b)
      if (std::next_permutation(perm.begin() + blocks[b].first, perm.begin() + blocks[b].second)) break;
    if (b == blocks.size()) return;
  }
}

std::vector<Permutation> allowed_permutations(const WeightVector& w) {
  std::vector<Permutation> out;
  for_each_allowed_permutation(w, [&](const Permutation& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

NormalForm normal_form(const GeneratorMatrix& p, const WeightVector& w) { return lattice_normal_form(p.matrix(), w); }

namespace {

std::optional<HermiteForm> lattice_normal_form64(const IntMatrix& m, const WeightVector& w) {
  detail::Mat64 base;
  try {
    base = detail::Mat64::from(m);
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
  detail::Mat64 work(m.rows(), m.cols()), best;
  bool have = false;
  try {
    for_each_allowed_permutation(w, [&](const Permutation& perm) {
      for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) work(r, c) = base(r, perm[c]);
      if (detail::hermite64(work) != m.rows()) throw std::invalid_argument("matrix does not have full row rank");
      if (!have || work.a < best.a) {
        best = work;
        have = true;
      }
      return true;
    });
  } catch (const detail::Overflow&) {
    return std::nullopt;
  }
  HermiteForm h{best.to_int_matrix(), {}};
  for (size_t r = 0; r < m.rows(); ++r) {
    size_t c = 0;
    while (best(r, c) == 0) ++c;
    h.pivots.push_back(c);
  }
  return h;
}

}  // namespace

NormalForm lattice_normal_form(const IntMatrix& m, const WeightVector& w) {
  if (w.size() != m.cols()) throw std::invalid_argument("weight vector does not match the generator matrix");
  std::optional<HermiteForm> best = lattice_normal_form64(m, w);
  if (!best) {
    for_each_allowed_permutation(w, [&](const Permutation& perm) {
      HermiteForm h = hermite_normal_form(permute_columns(m, perm));
      if (!best || h.matrix < best->matrix) best = std::move(h);
      return true;
    });
  }
  std::string bytes = encode_canonical(best->matrix);
  return {std::move(*best), std::move(bytes)};
}

std::string encode_canonical(const IntMatrix& m) {
  if (m.cols() != m.rows() + 1) throw std::invalid_argument("expected an n x (n+1) matrix");
  std::string out(1, kFormatVersion);
  out += std::to_string(m.rows());
  out += '|';
  for (size_t r = 0; r < m.rows(); ++r)
    for (size_t c = 0; c < m.cols(); ++c) {
      std::string digits = m(r, c).to_string();
      out += std::to_string(digits.size());
      out += ':';
      out += digits;
    }
  return out;
}

IntMatrix decode_canonical(const std::string& bytes) {
  auto fail = [] { throw std::invalid_argument("malformed canonical bytes"); };
  if (bytes.empty() || bytes[0] != kFormatVersion) fail();
  size_t pos = 1;
  auto read_count = [&](char stop) {
    size_t start = pos;
    while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') ++pos;
    if (pos == start || pos >= bytes.size() || bytes[pos] != stop || pos - start > 9) fail();
    size_t v = std::stoul(bytes.substr(start, pos - start));
    ++pos;
    return v;
  };
  const size_t n = read_count('|');
  if (n == 0) fail();
  IntMatrix m(n, n + 1);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c <= n; ++c) {
      size_t len = read_count(':');
      if (pos + len > bytes.size()) fail();
      m(r, c) = Integer::from_string(bytes.substr(pos, len));
      pos += len;
    }
  if (pos != bytes.size()) fail();
  return m;
}

std::vector<ClassificationRecord> filter_representatives(const std::vector<DegreeMatrix>& stream) {
  std::vector<ClassificationRecord> out;
  std::unordered_set<std::string> seen;
  for (const auto& q : stream) {
    NormalForm nf = normal_form(generator_from_degree(q), q.weights());
    if (!seen.insert(nf.bytes).second) continue;
    out.push_back({q, std::move(nf)});
  }
  return out;
}

}  // namespace fwps
