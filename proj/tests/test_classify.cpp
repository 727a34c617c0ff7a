#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "fwps/classify.hpp"
#include "fwps/records.hpp"
#include "fwps/verify.hpp"
#include "oracles.hpp"

using namespace fwps;
namespace fs = std::filesystem;

namespace {

size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  size_t n = 0;
  for (std::string l; std::getline(in, l);) n += !l.empty();
  return n;
}

}  // namespace

TEST(Classify, CountsInLowDimensions) {
  EXPECT_EQ(classify(1).size(), 1u);
  EXPECT_EQ(classify(2).size(), 5u);
  EXPECT_EQ(classify(3).size(), 48u);
}

TEST(Classify, DimensionFour) { EXPECT_EQ(classify(4, 2).size(), 1561u); }

TEST(Classify, NormalFormsAreDistinctAndShardsSorted) {
  const auto rs = classify(3);
  std::set<std::string> forms;
  for (const auto& r : rs) EXPECT_TRUE(forms.insert(r.normal.bytes).second);
  for (const auto& w : shard_weights(3)) {
    const auto shard = classify_shard(w);
    for (size_t i = 1; i < shard.size(); ++i) EXPECT_LT(shard[i - 1].normal.bytes, shard[i].normal.bytes);
  }
}

TEST(Classify, SerialAndParallelAgree) {
  const auto shards = shard_weights(3);
  const auto a = classify_serial(shards);
  const auto b = classify_parallel(shards, 4);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].size(), b[i].size());
    for (size_t j = 0; j < a[i].size(); ++j) EXPECT_EQ(record_to_line(a[i][j]), record_to_line(b[i][j]));
  }
}

TEST(Run, WritesVerifiableOutput) {
  const auto dir = oracle::scratch_dir("run3");
  RunConfig cfg;
  cfg.dim = 3;
  cfg.out = dir / "d3.jsonl";
  std::ostringstream log;
  const auto s = run_classification(cfg, log);
  EXPECT_TRUE(s.complete);
  EXPECT_EQ(s.records, 48u);
  EXPECT_EQ(line_count(cfg.out), 48u);
  std::ifstream in(cfg.out);
  EXPECT_TRUE(verify_records(in).clean());
  EXPECT_TRUE(fs::exists(manifest_path(cfg.out)));
  const auto m = nlohmann::json::parse(oracle::read_file(manifest_path(cfg.out)));
  EXPECT_EQ(m["dim"], 3);
  EXPECT_EQ(m["shards_total"], 14);
  for (const auto& [k, v] : m["progress"].items()) EXPECT_EQ(v, "done") << k;
}

TEST(Run, StopAndResumeIsByteIdentical) {
  const auto dir = oracle::scratch_dir("resume");
  RunConfig full;
  full.dim = 3;
  full.out = dir / "full.jsonl";
  std::ostringstream log;
  ASSERT_TRUE(run_classification(full, log).complete);

  RunConfig part = full;
  part.out = dir / "part.jsonl";
  part.stop_after = 5;
  const auto s1 = run_classification(part, log);
  EXPECT_FALSE(s1.complete);
  EXPECT_EQ(s1.shards_done, 5u);
  EXPECT_FALSE(fs::exists(part.out));

  RunConfig again = config_from_manifest(manifest_path(part.out));
  EXPECT_TRUE(again.resume);
  EXPECT_EQ(again.dim, 3u);
  const auto s2 = run_classification(again, log);
  EXPECT_TRUE(s2.complete);
  EXPECT_EQ(oracle::read_file(part.out), oracle::read_file(full.out));
}

TEST(Run, StopFlagInterrupts) {
  const auto dir = oracle::scratch_dir("stop");
  RunConfig cfg;
  cfg.dim = 3;
  cfg.out = dir / "d3.jsonl";
  std::atomic<bool> stop{true};
  std::ostringstream log;
  const auto s = run_classification(cfg, log, &stop);
  EXPECT_FALSE(s.complete);
  EXPECT_EQ(s.shards_done, 0u);
  stop = false;
  cfg.resume = true;
  EXPECT_TRUE(run_classification(cfg, log, &stop).complete);
}

TEST(Run, SampleIsDeterministicAndVerifiable) {
  const auto dir = oracle::scratch_dir("sample");
  RunConfig cfg;
  cfg.dim = 4;
  cfg.sample = 10;
  cfg.seed = 7;
  cfg.out = dir / "a.jsonl";
  std::ostringstream log;
  const auto s = run_classification(cfg, log);
  EXPECT_EQ(s.shards_total, 10u);
  RunConfig again = cfg;
  again.out = dir / "b.jsonl";
  again.threads = 3;
  run_classification(again, log);
  EXPECT_EQ(oracle::read_file(cfg.out), oracle::read_file(again.out));
  std::ifstream in(cfg.out);
  EXPECT_TRUE(verify_records(in).clean());
}

TEST(Run, CsvOutput) {
  const auto dir = oracle::scratch_dir("csv");
  RunConfig cfg;
  cfg.dim = 2;
  cfg.format = OutputFormat::Csv;
  cfg.out = dir / "d2.csv";
  std::ostringstream log;
  EXPECT_TRUE(run_classification(cfg, log).complete);
  EXPECT_EQ(line_count(cfg.out), 6u);
  EXPECT_EQ(oracle::read_file(cfg.out).substr(0, csv_header().size()), csv_header());
}

TEST(Run, ResumeRejectsOtherDimension) {
  const auto dir = oracle::scratch_dir("mismatch");
  RunConfig cfg;
  cfg.dim = 2;
  cfg.out = dir / "x.jsonl";
  std::ostringstream log;
  run_classification(cfg, log);
  cfg.dim = 3;
  cfg.resume = true;
  EXPECT_THROW(run_classification(cfg, log), std::runtime_error);
}

TEST(Run, ThreadCountDoesNotChangeOutput) {
  const auto o = oracle::thread_determinism(3, {1, 4, 8}, oracle::scratch_dir("threads"));
  EXPECT_TRUE(o.ok) << o.detail;
}
