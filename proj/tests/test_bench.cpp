#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <regex>

#include "ltlsynth/bench.hpp"

using namespace ltlsynth;

namespace {

std::filesystem::path write_micro_suite() {
  auto dir = std::filesystem::temp_directory_path() / "ltlsynth_micro";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "trivial.spec")
      << "inputs x; outputs y; formula true;\n";
  std::ofstream(dir / "unreal.spec")
      << "inputs x; outputs y; formula false;\n";
  return dir;
}

// Splits one CSV line respecting quoted fields.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields{""};
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += "\"\"";
        ++i;
      } else if (c == '"') {
        quoted = false;
        fields.back() += c;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
      fields.back() += c;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

std::string mask_wall_ms(const std::string& csv) {
  // wall_ms (column 9 of 10) is the only nondeterministic column.
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      out << line << '\n';
      first = false;
      continue;
    }
    std::vector<std::string> fields = split_csv(line);
    if (fields.size() == 10) fields[8] = "*";
    for (size_t i = 0; i < fields.size(); ++i)
      out << (i ? "," : "") << fields[i];
    out << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("bench: cross product of specs, configs, and seeds") {
  auto dir = write_micro_suite();
  BenchOptions options;
  options.configs = {"DDQS[-,phi]", "DQS[-]"};
  options.seeds = {0, 1, 2};
  options.parallelism = 2;
  options.base.max_episodes = 2;
  auto records = run_benchmarks(
      {dir / "trivial.spec", dir / "unreal.spec"}, options);
  REQUIRE(records.size() == 12);
  for (const RunRecord& r : records) CHECK(r.error.empty());
  // trivial.spec solves on the first episode for every seed and config.
  for (const RunRecord& r : records) {
    if (r.benchmark == "trivial") {
      CHECK(r.solved);
      CHECK(r.episodes == 1);
      CHECK(r.controller_size == 1);
    } else {
      CHECK_FALSE(r.solved);
      CHECK(r.episodes == 2);
    }
  }
}

TEST_CASE("bench: reruns produce identical CSV up to wall time") {
  auto dir = write_micro_suite();
  BenchOptions options;
  options.configs = {"DDQS[-,phi]"};
  options.seeds = {7, 8};
  options.parallelism = 2;
  options.base.max_episodes = 3;
  std::vector<std::filesystem::path> files{dir / "trivial.spec",
                                           dir / "unreal.spec"};
  std::string a = mask_wall_ms(to_csv(run_benchmarks(files, options)));
  std::string b = mask_wall_ms(to_csv(run_benchmarks(files, options)));
  CHECK(a == b);
}

TEST_CASE("bench: golden CSV for the micro suite") {
  auto dir = write_micro_suite();
  BenchOptions options;
  options.configs = {"DDQS[-,phi]"};
  options.seeds = {0};
  options.parallelism = 1;
  options.base.max_episodes = 3;
  std::vector<std::filesystem::path> files{dir / "trivial.spec",
                                           dir / "unreal.spec"};
  std::string csv = mask_wall_ms(to_csv(run_benchmarks(files, options)));
  // Frozen: the trivial spec solves in one episode with 12 in-episode batch
  // steps (horizon 50, learn-every 4); the unrealizable one burns all three
  // episodes, each adding 5 exploration steps, a 6-state losing-trace sweep,
  // and a 5-state verification counterexample sweep.
  std::string expected =
      "benchmark,config,seed,solved,episodes,batch_steps,controller_size,"
      "input_size,wall_ms,error\n"
      "trivial,\"DDQS[-,phi]\",0,1,1,12,1,1,*,\n"
      "unreal,\"DDQS[-,phi]\",0,0,3,36,0,1,*,\n";
  CHECK(csv == expected);
}

TEST_CASE("bench: per-run errors are recorded and the harness continues") {
  auto dir = std::filesystem::temp_directory_path() / "ltlsynth_broken";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "bad.spec") << "inputs x outputs y; formula x;\n";
  std::ofstream(dir / "good.spec") << "inputs x; outputs y; formula true;\n";
  BenchOptions options;
  options.configs = {"DDQS[-,phi]"};
  options.seeds = {0};
  options.base.max_episodes = 1;
  auto records =
      run_benchmarks({dir / "bad.spec", dir / "good.spec"}, options);
  REQUIRE(records.size() == 2);
  CHECK_FALSE(records[0].error.empty());
  CHECK_FALSE(records[0].solved);
  CHECK(records[1].error.empty());
  CHECK(records[1].solved);
}

TEST_CASE("bench: unknown configuration names fail per cell") {
  auto dir = write_micro_suite();
  BenchOptions options;
  options.configs = {"DDQS[~]"};
  options.seeds = {0};
  auto records = run_benchmarks({dir / "trivial.spec"}, options);
  REQUIRE(records.size() == 1);
  CHECK(records[0].error.find("unknown configuration") != std::string::npos);
}

TEST_CASE("csv rows escape embedded commas and quotes") {
  RunRecord r;
  r.benchmark = "weird,name";
  r.config = "DQS";
  r.error = "said \"no\"";
  std::string row = to_csv_row(r);
  CHECK(row.find("\"weird,name\"") != std::string::npos);
  CHECK(row.find("\"said \"\"no\"\"\"") != std::string::npos);
}

TEST_CASE("bench: bundled fixtures solve under the default configuration") {
  std::filesystem::path dir(LTLSYNTH_BENCH_DIR);
  REQUIRE(std::filesystem::exists(dir / "xiffy.spec"));
  BenchOptions options;
  options.configs = {"DDQS[-,phi]"};
  options.seeds = {0, 1};
  options.parallelism = 2;
  auto records = run_benchmarks({dir / "xiffy.spec"}, options);
  REQUIRE(records.size() == 2);
  for (const RunRecord& r : records) {
    CHECK(r.error.empty());
    CHECK(r.solved);
    CHECK(r.input_size == 8);
    CHECK(r.controller_size >= 1);
  }
}
