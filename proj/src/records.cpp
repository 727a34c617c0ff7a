#include "fwps/records.hpp"

#include <stdexcept>

namespace fwps {

namespace {

using nlohmann::ordered_json;

ordered_json strings(const IntVector& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

Integer integer_field(const nlohmann::json& j) {
  if (!j.is_string()) throw std::invalid_argument("expected a decimal string");
  return Integer::from_string(j.get<std::string>());
}

IntVector vector_field(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array");
  IntVector v;
  for (const auto& x : j) v.push_back(integer_field(x));
  return v;
}

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw std::invalid_argument(std::string("missing field '") + name + "'");
  return *it;
}

std::string joined(const IntVector& v, char sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i].to_string();
  }
  return s;
}

}  // namespace

ordered_json record_to_json(const ClassificationRecord& r) {
  const DegreeMatrix& q = r.degree;
  ordered_json j;
  j["dim"] = q.dim();
  j["class_group"] = strings(q.group().factors());
  j["weights"] = strings(q.weights());
  ordered_json rows = ordered_json::array();
  for (size_t t = 0; t < q.group().torsion_count(); ++t) rows.push_back(strings(q.torsion_row(t)));
  j["torsion"] = rows;
  ordered_json nf = ordered_json::array();
  const IntMatrix& m = r.normal.form.matrix;
  for (size_t i = 0; i < m.rows(); ++i) {
    IntVector row(m.row(i).begin(), m.row(i).end());
    nf.push_back(strings(row));
  }
  j["normal_form"] = nf;
  j["picard_index"] = picard_index(q).to_string();
  j["gorenstein_index"] = gorenstein_index(q).to_string();
  return j;
}

std::string record_to_line(const ClassificationRecord& r) { return record_to_json(r).dump(); }

RawRecord parse_record_line(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
  RawRecord r;
  const auto& dim = field(j, "dim");
  if (!dim.is_number_unsigned()) throw std::invalid_argument("dim must be a non-negative integer");
  r.dim = dim.get<size_t>();
  r.class_group = vector_field(field(j, "class_group"));
  r.weights = vector_field(field(j, "weights"));
  const auto& torsion = field(j, "torsion");
  if (!torsion.is_array()) throw std::invalid_argument("torsion must be an array");
  for (const auto& row : torsion) r.torsion.push_back(vector_field(row));
  const auto& nf = field(j, "normal_form");
  if (!nf.is_array() || nf.size() != r.dim) throw std::invalid_argument("normal_form must have dim rows");
  r.normal_form = IntMatrix(r.dim, r.dim + 1);
  for (size_t i = 0; i < r.dim; ++i) {
    IntVector row = vector_field(nf[i]);
    if (row.size() != r.dim + 1) throw std::invalid_argument("normal_form rows must have dim+1 entries");
    for (size_t c = 0; c <= r.dim; ++c) r.normal_form(i, c) = row[c];
  }
  r.picard_index = integer_field(field(j, "picard_index"));
  r.gorenstein_index = integer_field(field(j, "gorenstein_index"));
  return r;
}

std::string class_group_label(const std::vector<Integer>& factors) {
  std::string s = "Z";
  for (const auto& f : factors) s += " + Z/" + f.to_string();
  return s;
}

std::string csv_header() { return "index,weights,class_group,picard_index,gorenstein_index"; }

std::string record_to_csv(size_t index, const RawRecord& r) {
  return std::to_string(index) + ",\"" + joined(r.weights, ' ') + "\",\"" + class_group_label(r.class_group) + "\"," +
         r.picard_index.to_string() + "," + r.gorenstein_index.to_string();
}

}  // namespace fwps
