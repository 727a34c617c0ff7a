#pragma once

// Input parsing and record checking for the command-line tool.

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fwps/fwps.hpp"
#include "fwps/records.hpp"

namespace fwps {

// A degree-matrix literal: rows separated by ';', entries by ','; the first
// row holds the weights, every further row is a torsion row suffixed '@mu',
// e.g. "1,1,1,4;0,1,2,2@4". Torsion entries are reduced mod mu.
struct DegreeLiteral {
  IntVector weights;
  std::vector<IntVector> torsion_rows;
  std::vector<Integer> factors;
};

// Throws std::invalid_argument on syntax errors.
DegreeLiteral parse_degree_literal(const std::string& text);

// Thrown when a literal parses but some n columns fail to generate.
struct InvalidDegreeMatrix : std::invalid_argument {
  std::vector<size_t> failing_columns;
  explicit InvalidDegreeMatrix(std::vector<size_t> cols);
};

// Columns sorted by weight (ties by torsion). With validate, throws
// InvalidDegreeMatrix when generation fails; without, the matrix is built
// as given so the index formulas can still be evaluated.
DegreeMatrix degree_matrix_from_literal(const DegreeLiteral& lit, bool validate = true);
// Literal column indices of an n-subset that fails to generate, or empty.
std::vector<size_t> literal_failing_columns(const DegreeLiteral& lit);

// Checks one parsed record: the stored degree matrix is valid and Gorenstein,
// its stored invariants are right, the simplex is reflexive, and the stored
// normal form is that of the degree matrix and is idempotent. Returns an
// error message, or nullopt when the record is sound.
std::optional<std::string> check_record(const RawRecord& r);

struct VerifyReport {
  size_t records = 0;
  std::optional<size_t> failure_line;  // 1-based
  std::string message;
  bool clean() const { return !failure_line; }
};

// Checks every line (blank lines are skipped) and rejects duplicate normal
// forms. Stops at the first failure.
VerifyReport verify_records(std::istream& in);

// Record count per class group label; throws std::invalid_argument with the
// line number on malformed input.
std::map<std::string, size_t> class_group_histogram(std::istream& in, size_t* records = nullptr);

}  // namespace fwps
