#pragma once

// JSON-lines record format. Integers are written as decimal strings.

#include <string>

#include "json.hpp"

#include "fwps/normal_form.hpp"

namespace fwps {

inline constexpr int kRecordFormatVersion = 1;

nlohmann::ordered_json record_to_json(const ClassificationRecord& r);
std::string record_to_line(const ClassificationRecord& r);

// Parsed fields of one line, before any mathematical validation.
struct RawRecord {
  size_t dim = 0;
  std::vector<Integer> class_group;
  IntVector weights;
  std::vector<IntVector> torsion;
  IntMatrix normal_form;
  Integer picard_index;
  Integer gorenstein_index;
};

// Throws std::invalid_argument on malformed JSON or missing fields.
RawRecord parse_record_line(const std::string& line);

// "Z", "Z + Z/3", "Z + Z/4 + Z/2", ...
std::string class_group_label(const std::vector<Integer>& factors);

std::string csv_header();
std::string record_to_csv(size_t index, const RawRecord& r);

}  // namespace fwps
