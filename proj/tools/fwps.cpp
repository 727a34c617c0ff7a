#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <omp.h>

#include "CLI11.hpp"
#include "fwps/classify.hpp"
#include "fwps/verify.hpp"

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop.store(true); }

int default_threads() {
  if (const char* env = std::getenv("FWPS_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid FWPS_THREADS='" << env << "'\n";
  }
  return omp_get_max_threads();
}

int run_classify(fwps::RunConfig cfg, const std::string& resume) {
  if (!resume.empty()) {
    const int threads = cfg.threads;
    const auto stop_after = cfg.stop_after;
    cfg = fwps::config_from_manifest(resume);
    cfg.threads = threads;
    cfg.stop_after = stop_after;
  } else if (cfg.dim < 1) {
    std::cerr << "error: --dim must be at least 1\n";
    return kUsage;
  }
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  const auto s = fwps::run_classification(cfg, std::cout, &g_stop);
  return s.complete ? kOk : kFailed;
}

int run_verify(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return kUsage;
  }
  const auto rep = fwps::verify_records(in);
  if (rep.clean()) {
    std::cout << "clean: " << rep.records << " records\n";
    return kOk;
  }
  std::cout << path << ":" << *rep.failure_line << ": " << rep.message << "\n";
  return kFailed;
}

int run_invariants(const std::string& literal) {
  fwps::DegreeLiteral lit;
  try {
    lit = fwps::parse_degree_literal(literal);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  const auto failing = fwps::literal_failing_columns(lit);
  const auto q = fwps::degree_matrix_from_literal(lit, false);
  const auto b = fwps::gorenstein_breakdown(q);
  auto yes = [](bool v) { return v ? "yes" : "no"; };
  std::cout << "picard_index " << fwps::picard_index(q) << "\n";
  std::cout << "gorenstein_index " << fwps::gorenstein_index(q) << "\n";
  std::cout << "L divides S: " << yes(b.lcm_divides_sum) << "\n";
  for (size_t j = 0; j < b.order_divides_ratio.size(); ++j)
    std::cout << "M_" << j + 1 << " divides S/L: " << yes(b.order_divides_ratio[j]) << "\n";
  for (size_t j = 0; j < b.torsion_row_sums_zero.size(); ++j)
    std::cout << "torsion row " << j + 1 << " sums to 0: " << yes(b.torsion_row_sums_zero[j]) << "\n";
  std::cout << "gorenstein " << yes(b.holds()) << "\n";
  if (!failing.empty()) {
    std::cout << "invalid degree matrix: " << fwps::InvalidDegreeMatrix(failing).what() << "\n";
    return kFailed;
  }
  return kOk;
}

int run_stats(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return kUsage;
  }
  size_t records = 0;
  std::map<std::string, size_t> h;
  try {
    h = fwps::class_group_histogram(in, &records);
  } catch (const std::invalid_argument& e) {
    std::cout << path << ":" << e.what() << "\n";
    return kFailed;
  }
  std::cout << records << " records\n";
  for (const auto& [label, count] : h) std::cout << "  " << label << ": " << count << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify Gorenstein fake weighted projective spaces"};
  app.set_version_flag("--version", std::string(fwps::kToolVersion));
  app.require_subcommand(1);

  fwps::RunConfig cfg;
  cfg.threads = default_threads();
  std::string resume, format = "jsonl", weights_cache;
  size_t sample = 0, stop_after = 0;
  auto* classify = app.add_subcommand("classify", "Classify all Gorenstein fwps of a dimension");
  auto* dim_opt = classify->add_option("--dim", cfg.dim, "Dimension n");
  classify->add_option("--threads", cfg.threads, "Worker threads (default: FWPS_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  classify->add_option("--out", cfg.out, "Output path")->default_val("fwps.jsonl");
  classify->add_option("--format", format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
  auto* resume_opt = classify->add_option("--resume", resume, "Continue the run recorded in this manifest");
  classify->add_option("--sample", sample, "Only classify this many randomly chosen weight vectors");
  classify->add_option("--seed", cfg.seed, "Seed for --sample");
  classify->add_option("--stop-after", stop_after, "Stop after this many shards (resumable)");
  classify->add_option("--weights-cache", weights_cache, "File caching the weight vectors of this dimension");
  dim_opt->excludes(resume_opt);

  std::string verify_in, stats_in, literal;
  auto* verify = app.add_subcommand("verify", "Re-check every record of a classification file");
  verify->add_option("--in", verify_in, "Records file")->required();
  auto* invariants = app.add_subcommand("invariants", "Picard and Gorenstein index of a degree matrix");
  invariants->add_option("--matrix", literal, "Degree matrix, e.g. \"1,1,1,4;0,1,2,2@4\"")->required();
  auto* stats = app.add_subcommand("stats", "Histogram of class group structures");
  stats->add_option("--in", stats_in, "Records file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*classify) {
      if (dim_opt->count() == 0 && resume.empty()) {
        std::cerr << "error: classify needs --dim or --resume\n";
        return kUsage;
      }
      cfg.format = format == "csv" ? fwps::OutputFormat::Csv : fwps::OutputFormat::Jsonl;
      if (sample) cfg.sample = sample;
      if (stop_after) cfg.stop_after = stop_after;
      if (!weights_cache.empty()) cfg.weights_cache = weights_cache;
      return run_classify(cfg, resume);
    }
    if (*verify) return run_verify(verify_in);
    if (*invariants) return run_invariants(literal);
    return run_stats(stats_in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}
