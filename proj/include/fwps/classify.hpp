#pragma once

// Classification driver: one shard per Gorenstein weight vector (torsion
// enumeration, gluing, normal-form dedup), merged in weight order.

#include <atomic>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fwps/normal_form.hpp"
#include "fwps/version.hpp"
#include "fwps/weights.hpp"

namespace fwps {

// Records of one weight vector, sorted by normal-form bytes.
std::vector<ClassificationRecord> classify_shard(const WeightVector& w);

// Shard order used everywhere: lexicographic on the weight vector.
std::vector<WeightVector> shard_weights(size_t n, const std::optional<std::filesystem::path>& cache = std::nullopt);

// Reference implementation, one shard after another.
std::vector<std::vector<ClassificationRecord>> classify_serial(const std::vector<WeightVector>& shards);
// OpenMP worker pool; largest shards are scheduled first. Same result as the
// serial version.
std::vector<std::vector<ClassificationRecord>> classify_parallel(const std::vector<WeightVector>& shards,
                                                                 int threads);

std::vector<ClassificationRecord> classify(size_t n, int threads = 1);

// Estimated torsion search size, used for scheduling: S * number of order pairs.
double shard_cost(const WeightVector& w);

enum class OutputFormat { Jsonl, Csv };

struct RunConfig {
  size_t dim = 0;
  int threads = 1;
  std::filesystem::path out;
  OutputFormat format = OutputFormat::Jsonl;
  std::optional<size_t> sample;  // random subset of shards
  uint64_t seed = 0;
  std::optional<size_t> stop_after;  // process at most this many shards, then stop
  std::optional<std::filesystem::path> weights_cache;
  bool resume = false;  // keep finished shards listed in an existing manifest
};

struct RunSummary {
  size_t shards_total = 0;
  size_t shards_done = 0;
  size_t records = 0;
  bool complete = false;
  std::map<std::string, size_t> histogram;  // class group label -> count
};

std::filesystem::path manifest_path(const std::filesystem::path& out);
std::filesystem::path shard_dir(const std::filesystem::path& out);

// Runs (or continues) a checkpointed classification. Finished shards are
// written to shard_dir(out) and recorded in the manifest; the merged output is
// written once every shard is done. `stop` is polled between shards.
RunSummary run_classification(const RunConfig& cfg, std::ostream& log, const std::atomic<bool>* stop = nullptr);
// Reads the run configuration back from a manifest, with resume set.
RunConfig config_from_manifest(const std::filesystem::path& manifest);

}  // namespace fwps
