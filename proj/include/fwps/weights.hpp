#pragma once

// Gorenstein weight vectors in dimension n, obtained from the decompositions
// 1 = 1/u_0 + ... + 1/u_n with u_0 >= ... >= u_n.

#include <filesystem>
#include <functional>
#include <vector>

#include "fwps/integer.hpp"

namespace fwps {

using UnitFractionTuple = std::vector<Integer>;  // descending denominators
using WeightVector = std::vector<Integer>;       // ascending weights

bool is_unit_fraction_tuple(const UnitFractionTuple& t);

// Calls `emit` once per tuple; returns the number of tuples.
size_t for_each_unit_fraction(size_t n, const std::function<void(const UnitFractionTuple&)>& emit);
// All tuples, lexicographically decreasing.
std::vector<UnitFractionTuple> enumerate_unit_fractions(size_t n);

WeightVector weight_from_unit_fraction(const UnitFractionTuple& t);
UnitFractionTuple unit_fraction_from_weight(const WeightVector& w);

// Any n of the n+1 weights are coprime.
bool is_well_formed(const WeightVector& w);
// Well formed and lcm(w) divides sum(w).
bool is_gorenstein_weight(const WeightVector& w);

// Ascending by (sum, weights).
std::vector<WeightVector> enumerate_gorenstein_weights(size_t n);

// Reads `path` if present (one vector per line, space separated), otherwise
// computes the list and writes it there.
std::vector<WeightVector> load_or_compute_gorenstein_weights(size_t n, const std::filesystem::path& path);
void write_weights(const std::vector<WeightVector>& weights, const std::filesystem::path& path);
std::vector<WeightVector> read_weights(const std::filesystem::path& path);

}  // namespace fwps
