#include "fwps/verify.hpp"

#include <algorithm>
#include <istream>
#include <unordered_set>

#include "fwps/normal_form.hpp"
#include "fwps/reflexivity.hpp"

namespace fwps {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Integer parse_integer(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) throw std::invalid_argument("empty entry");
  size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) throw std::invalid_argument("bad integer '" + t + "'");
  for (; i < t.size(); ++i)
    if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("bad integer '" + t + "'");
  return Integer::from_string(t[0] == '+' ? t.substr(1) : t);
}

IntVector parse_row(const std::string& s) {
  IntVector v;
  for (const auto& e : split(s, ',')) v.push_back(parse_integer(e));
  return v;
}

std::string join_columns(const std::vector<size_t>& cols) {
  std::string s;
  for (size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + std::to_string(cols[i]);
  return s;
}

}  // namespace

InvalidDegreeMatrix::InvalidDegreeMatrix(std::vector<size_t> cols)
    : std::invalid_argument("columns {" + join_columns(cols) + "} do not generate the class group"),
      failing_columns(std::move(cols)) {}

DegreeLiteral parse_degree_literal(const std::string& text) {
  if (trim(text).empty()) throw std::invalid_argument("empty matrix literal");
  const auto rows = split(text, ';');
  DegreeLiteral lit;
  if (rows[0].find('@') != std::string::npos) throw std::invalid_argument("the weight row takes no '@'");
  lit.weights = parse_row(rows[0]);
  if (lit.weights.size() < 2) throw std::invalid_argument("need at least two columns");
  for (const auto& w : lit.weights)
    if (w.sign() <= 0) throw std::invalid_argument("weights must be positive");
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto parts = split(rows[r], '@');
    if (parts.size() != 2) throw std::invalid_argument("torsion row " + std::to_string(r) + " needs one '@mu' suffix");
    const Integer mu = parse_integer(parts[1]);
    if (mu < Integer(2)) throw std::invalid_argument("torsion order must be >= 2");
    IntVector row = parse_row(parts[0]);
    if (row.size() != lit.weights.size())
      throw std::invalid_argument("torsion row " + std::to_string(r) + " has the wrong length");
    for (auto& x : row) x = mod(x, mu);
    lit.torsion_rows.push_back(std::move(row));
    lit.factors.push_back(mu);
  }
  for (size_t j = 1; j < lit.factors.size(); ++j)
    if (!divides(lit.factors[j], lit.factors[j - 1]))
      throw std::invalid_argument("torsion orders must form a divisibility chain mu_1, mu_2 | mu_1, ...");
  return lit;
}

namespace {

std::pair<InvariantFactorGroup, std::vector<GroupElement>> literal_columns(const DegreeLiteral& lit) {
  InvariantFactorGroup g(1, lit.factors);
  std::vector<GroupElement> cols;
  for (size_t i = 0; i < lit.weights.size(); ++i) {
    IntVector t;
    for (const auto& row : lit.torsion_rows) t.push_back(row[i]);
    cols.push_back(make_element(g, {lit.weights[i]}, std::move(t)));
  }
  return {std::move(g), std::move(cols)};
}

}  // namespace

std::vector<size_t> literal_failing_columns(const DegreeLiteral& lit) {
  auto [g, cols] = literal_columns(lit);
  return failing_column_subset(g, cols);
}

DegreeMatrix degree_matrix_from_literal(const DegreeLiteral& lit, bool validate) {
  auto [g, cols] = literal_columns(lit);
  if (validate) {
    auto bad = failing_column_subset(g, cols);
    if (!bad.empty()) throw InvalidDegreeMatrix(std::move(bad));
    return DegreeMatrix::from_unsorted(std::move(g), std::move(cols));
  }
  std::stable_sort(cols.begin(), cols.end(), [](const GroupElement& x, const GroupElement& y) {
    return x.free[0] != y.free[0] ? x.free[0] < y.free[0] : x.torsion < y.torsion;
  });
  return DegreeMatrix::assume_valid(std::move(g), std::move(cols));
}

std::optional<std::string> check_record(const RawRecord& r) {
  if (r.weights.size() != r.dim + 1) return "weights do not have dim+1 entries";
  if (r.torsion.size() != r.class_group.size()) return "one torsion row per class group factor required";
  for (size_t j = 0; j < r.torsion.size(); ++j) {
    if (r.class_group[j] < Integer(2)) return "class group factors must be >= 2";
    if (r.torsion[j].size() != r.weights.size()) return "torsion row " + std::to_string(j) + " has the wrong length";
    for (const auto& x : r.torsion[j])
      if (x.sign() < 0 || x >= r.class_group[j]) return "torsion entries must be canonical residues";
  }
  for (size_t i = 1; i < r.weights.size(); ++i)
    if (r.weights[i] < r.weights[i - 1]) return "weights must be ascending";
  std::optional<DegreeMatrix> q;
  try {
    q = DegreeMatrix::from_rows(r.weights, r.torsion, r.class_group);
  } catch (const std::invalid_argument& e) {
    return std::string("invalid degree matrix: ") + e.what();
  }
  if (!is_gorenstein(*q)) return "not Gorenstein";
  if (gorenstein_index(*q) != Integer(1)) return "Gorenstein index is not 1";
  if (r.gorenstein_index != gorenstein_index(*q)) return "stored Gorenstein index is wrong";
  if (r.picard_index != picard_index(*q)) return "stored Picard index is wrong";
  const GeneratorMatrix p = generator_from_degree(*q);
  if (!is_reflexive(p)) return "simplex is not reflexive";
  const NormalForm nf = normal_form(p, r.weights);
  if (nf.form.matrix != r.normal_form) return "stored normal form does not match the degree matrix";
  try {
    if (normal_form(GeneratorMatrix(r.normal_form), r.weights).form.matrix != r.normal_form)
      return "stored normal form is not idempotent";
  } catch (const std::invalid_argument& e) {
    return std::string("stored normal form is not a generator matrix: ") + e.what();
  }
  return std::nullopt;
}

VerifyReport verify_records(std::istream& in) {
  VerifyReport rep;
  std::unordered_set<std::string> seen;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto fail = [&](const std::string& msg) {
      rep.failure_line = lineno;
      rep.message = msg;
      return rep;
    };
    RawRecord r;
    try {
      r = parse_record_line(line);
    } catch (const std::exception& e) {
      return fail(std::string("malformed record: ") + e.what());
    }
    std::optional<std::string> err;
    try {
      err = check_record(r);
    } catch (const std::exception& e) {
      err = std::string("check failed: ") + e.what();
    }
    if (err) return fail(*err);
    if (!seen.insert(encode_canonical(r.normal_form)).second) return fail("duplicate normal form");
    ++rep.records;
  }
  return rep;
}

std::map<std::string, size_t> class_group_histogram(std::istream& in, size_t* records) {
  std::map<std::string, size_t> h;
  std::string line;
  size_t lineno = 0, count = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      ++h[class_group_label(parse_record_line(line).class_group)];
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
    ++count;
  }
  if (records) *records = count;
  return h;
}

}  // namespace fwps
