#include "fwps/classify.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include <omp.h>

#include "fwps/gluing.hpp"
#include "fwps/records.hpp"

namespace fwps {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::vector<ClassificationRecord> classify_shard(const WeightVector& w) {
  TorsionPool pool = torsion_pool(w);
  std::vector<ClassificationRecord> records;
  std::unordered_set<std::string> seen;
  for (auto& c : assemble_lattices(w, pool)) {
    NormalForm nf = lattice_normal_form(c.lattice, w);
    if (!seen.insert(nf.bytes).second) continue;
    records.push_back({std::move(c.degree), std::move(nf)});
  }
  std::sort(records.begin(), records.end(),
            [](const ClassificationRecord& a, const ClassificationRecord& b) { return a.normal.bytes < b.normal.bytes; });
  return records;
}

std::vector<WeightVector> shard_weights(size_t n, const std::optional<fs::path>& cache) {
  auto w = cache ? load_or_compute_gorenstein_weights(n, *cache) : enumerate_gorenstein_weights(n);
  std::sort(w.begin(), w.end());
  return w;
}

double shard_cost(const WeightVector& w) {
  Integer s = 0;
  for (const auto& x : w) s += x;
  return s.to_mpz().get_d() * double(admissible_order_pairs(w).size() + 1);
}

std::vector<std::vector<ClassificationRecord>> classify_serial(const std::vector<WeightVector>& shards) {
  std::vector<std::vector<ClassificationRecord>> out;
  out.reserve(shards.size());
  for (const auto& w : shards) out.push_back(classify_shard(w));
  return out;
}

namespace {

// Indices sorted by descending cost, ties by index.
std::vector<size_t> schedule(const std::vector<WeightVector>& shards, const std::vector<size_t>& which) {
  std::vector<double> cost(which.size());
  for (size_t t = 0; t < which.size(); ++t) cost[t] = shard_cost(shards[which[t]]);
  std::vector<size_t> order(which.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return cost[a] > cost[b]; });
  std::vector<size_t> out;
  for (size_t t : order) out.push_back(which[t]);
  return out;
}

// Collects the first exception thrown inside an OpenMP region.
class ErrorSlot {
 public:
  void capture() {
#pragma omp critical(fwps_error)
    if (!error_) error_ = std::current_exception();
    flag_.store(true);
  }
  bool failed() const { return flag_.load(); }
  void rethrow() {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
  std::atomic<bool> flag_{false};
};

}  // namespace

std::vector<std::vector<ClassificationRecord>> classify_parallel(const std::vector<WeightVector>& shards,
                                                                 int threads) {
  std::vector<size_t> all(shards.size());
  std::iota(all.begin(), all.end(), 0);
  const auto order = schedule(shards, all);
  std::vector<std::vector<ClassificationRecord>> out(shards.size());
  ErrorSlot errors;
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(threads, 1))
  for (size_t t = 0; t < order.size(); ++t) {
    try {
      out[order[t]] = classify_shard(shards[order[t]]);
    } catch (...) {
      errors.capture();
    }
  }
  errors.rethrow();
  return out;
}

std::vector<ClassificationRecord> classify(size_t n, int threads) {
  const auto shards = shard_weights(n);
  auto parts = threads > 1 ? classify_parallel(shards, threads) : classify_serial(shards);
  std::vector<ClassificationRecord> out;
  for (auto& p : parts)
    for (auto& r : p) out.push_back(std::move(r));
  return out;
}

// ---------------------------------------------------------------------------
// Checkpointed runs.

fs::path manifest_path(const fs::path& out) {
  fs::path p = out;
  p += ".manifest.json";
  return p;
}

fs::path shard_dir(const fs::path& out) {
  fs::path p = out;
  p += ".shards";
  return p;
}

namespace {

constexpr int kManifestVersion = 1;

std::string weight_key(const WeightVector& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += w[i].to_string();
  }
  return s;
}

fs::path shard_file(const fs::path& out, size_t idx) { return shard_dir(out) / (std::to_string(idx) + ".jsonl"); }

void write_atomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os << content;
    os.flush();
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

const char* format_name(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "jsonl"; }

struct Manifest {
  RunConfig cfg;
  std::vector<size_t> selected;  // shard indices of this run, ascending
  std::map<size_t, bool> done;
  std::vector<std::string> keys;  // weight key per selected shard

  std::string dump() const {
    ordered_json j;
    j["format_version"] = kManifestVersion;
    j["tool_version"] = kToolVersion;
    j["dim"] = cfg.dim;
    j["threads"] = cfg.threads;
    j["out"] = cfg.out.string();
    j["format"] = format_name(cfg.format);
    j["sample"] = cfg.sample ? ordered_json(*cfg.sample) : ordered_json(nullptr);
    j["seed"] = cfg.seed;
    if (cfg.weights_cache) j["weights_cache"] = cfg.weights_cache->string();
    j["shards_total"] = selected.size();
    ordered_json progress = ordered_json::object();
    for (size_t t = 0; t < selected.size(); ++t)
      progress[keys[t]] = done.at(selected[t]) ? "done" : "pending";
    j["progress"] = progress;
    return j.dump(1) + "\n";
  }
};

std::vector<size_t> select_shards(size_t total, const RunConfig& cfg) {
  std::vector<size_t> idx(total);
  std::iota(idx.begin(), idx.end(), 0);
  if (cfg.sample && *cfg.sample < total) {
    std::mt19937_64 rng(cfg.seed);
    // Partial Fisher-Yates with explicit index arithmetic, so the sample does
    // not depend on the standard library's distribution implementations.
    for (size_t i = 0; i < *cfg.sample; ++i) {
      size_t j = i + size_t(rng() % (total - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(*cfg.sample);
    std::sort(idx.begin(), idx.end());
  }
  return idx;
}

nlohmann::json read_manifest(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read manifest " + path.string());
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("malformed manifest " + path.string() + ": " + e.what());
  }
}

}  // namespace

RunConfig config_from_manifest(const fs::path& manifest) {
  const auto j = read_manifest(manifest);
  if (j.value("format_version", 0) != kManifestVersion) throw std::runtime_error("unsupported manifest version");
  RunConfig cfg;
  cfg.dim = j.at("dim").get<size_t>();
  cfg.threads = j.at("threads").get<int>();
  cfg.out = j.at("out").get<std::string>();
  cfg.format = j.at("format").get<std::string>() == "csv" ? OutputFormat::Csv : OutputFormat::Jsonl;
  if (!j.at("sample").is_null()) cfg.sample = j.at("sample").get<size_t>();
  cfg.seed = j.at("seed").get<uint64_t>();
  if (j.contains("weights_cache")) cfg.weights_cache = fs::path(j.at("weights_cache").get<std::string>());
  cfg.resume = true;
  return cfg;
}

RunSummary run_classification(const RunConfig& cfg, std::ostream& log, const std::atomic<bool>* stop) {
  if (cfg.dim < 1) throw std::invalid_argument("dimension must be at least 1");
  const auto weights = shard_weights(cfg.dim, cfg.weights_cache);
  Manifest m;
  m.cfg = cfg;
  m.selected = select_shards(weights.size(), cfg);
  for (size_t idx : m.selected) {
    m.keys.push_back(weight_key(weights[idx]));
    m.done[idx] = false;
  }

  fs::create_directories(shard_dir(cfg.out));
  const fs::path mpath = manifest_path(cfg.out);
  if (cfg.resume && fs::exists(mpath)) {
    const auto j = read_manifest(mpath);
    if (j.at("dim").get<size_t>() != cfg.dim) throw std::runtime_error("manifest is for a different dimension");
    const auto& progress = j.at("progress");
    for (size_t t = 0; t < m.selected.size(); ++t) {
      auto it = progress.find(m.keys[t]);
      if (it != progress.end() && *it == "done" && fs::exists(shard_file(cfg.out, m.selected[t])))
        m.done[m.selected[t]] = true;
    }
  } else {
    for (size_t idx : m.selected) fs::remove(shard_file(cfg.out, idx));
  }
  write_atomically(mpath, m.dump());

  std::vector<size_t> pending;
  for (size_t idx : m.selected)
    if (!m.done[idx]) pending.push_back(idx);
  const auto order = schedule(weights, pending);
  log << "dim " << cfg.dim << ": " << m.selected.size() << " shards, " << pending.size() << " pending, "
      << cfg.threads << " thread(s)\n";

  using clock = std::chrono::steady_clock;
  auto last_write = clock::now();
  size_t claimed = 0;
  ErrorSlot errors;
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(cfg.threads, 1))
  for (size_t t = 0; t < order.size(); ++t) {
    if (errors.failed() || (stop && stop->load())) continue;
    bool go = true;
#pragma omp critical(fwps_claim)
    {
      if (cfg.stop_after && claimed >= *cfg.stop_after) go = false;
      else ++claimed;
    }
    if (!go) continue;
    try {
      const size_t idx = order[t];
      std::string body;
      for (const auto& r : classify_shard(weights[idx])) body += record_to_line(r) + "\n";
      write_atomically(shard_file(cfg.out, idx), body);
#pragma omp critical(fwps_manifest)
      {
        m.done[idx] = true;
        if (clock::now() - last_write >= std::chrono::seconds(1)) {
          write_atomically(mpath, m.dump());
          last_write = clock::now();
        }
      }
    } catch (...) {
      errors.capture();
    }
  }
  write_atomically(mpath, m.dump());
  errors.rethrow();

  RunSummary s;
  s.shards_total = m.selected.size();
  for (const auto& [idx, d] : m.done) s.shards_done += d;
  if (s.shards_done < s.shards_total) {
    log << "stopped with " << s.shards_done << "/" << s.shards_total << " shards done; resume with --resume "
        << mpath.string() << "\n";
    return s;
  }

  // Merge in weight order.
  std::string merged;
  if (cfg.format == OutputFormat::Csv) merged = csv_header() + "\n";
  for (size_t idx : m.selected) {
    std::ifstream is(shard_file(cfg.out, idx));
    if (!is) throw std::runtime_error("missing shard file for shard " + std::to_string(idx));
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      RawRecord r = parse_record_line(line);
      ++s.histogram[class_group_label(r.class_group)];
      if (cfg.format == OutputFormat::Csv) merged += record_to_csv(s.records, r) + "\n";
      else merged += line + "\n";
      ++s.records;
    }
  }
  write_atomically(cfg.out, merged);
  s.complete = true;
  log << s.records << " classes\n";
  for (const auto& [label, count] : s.histogram) log << "  " << label << ": " << count << "\n";
  return s;
}

}  // namespace fwps
