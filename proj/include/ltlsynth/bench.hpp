// Benchmark harness: runs (spec, configuration, seed) cells, in parallel
// worker pools, and renders the versioned RunRecord CSV.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ltlsynth/dqs.hpp"

namespace ltlsynth {

// One row per (benchmark, configuration, seed).
struct RunRecord {
  std::string benchmark;
  std::string config;
  std::uint64_t seed = 0;
  bool solved = false;
  int episodes = 0;
  std::int64_t batch_steps = 0;
  size_t controller_size = 0;
  int input_size = 0;  // total automaton states = network input width
  double wall_ms = 0.0;
  std::string error;  // empty on clean runs
};

// Schema v1. The wall_ms column is the only one that varies between
// otherwise identical runs.
inline constexpr const char* kRunRecordCsvHeader =
    "benchmark,config,seed,solved,episodes,batch_steps,controller_size,"
    "input_size,wall_ms,error";

std::string to_csv_row(const RunRecord& rec);
std::string to_csv(const std::vector<RunRecord>& records);

struct BenchOptions {
  std::vector<std::string> configs;  // named configurations
  std::vector<std::uint64_t> seeds;
  int parallelism = 1;
  DqsConfig base;  // K, horizon, etc.; toggles come from the config names
};

/// Full cross product of spec files x configs x seeds. Per-run errors are
/// recorded in the row and the harness continues. Record order is the
/// deterministic cell order regardless of scheduling.
std::vector<RunRecord> run_benchmarks(
    const std::vector<std::filesystem::path>& spec_files,
    const BenchOptions& options);

}  // namespace ltlsynth
