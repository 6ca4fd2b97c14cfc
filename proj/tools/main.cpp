// ltlsynth command-line front end: synth / bench / verify.
//
// Exit codes: 0 solved or realizable, 10 unrealizable at the bound (exact
// backends) or verification failure, 20 unknown or inconclusive, >= 30
// errors (31 parse, 32 budget, 30 otherwise).
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ltlsynth/bench.hpp"
#include "ltlsynth/controller.hpp"
#include "ltlsynth/dqs.hpp"
#include "ltlsynth/solver.hpp"

namespace {

using namespace ltlsynth;

constexpr int kExitRealizable = 0;
constexpr int kExitUnrealizable = 10;
constexpr int kExitUnknown = 20;
constexpr int kExitError = 30;
constexpr int kExitParseError = 31;
constexpr int kExitBudgetError = 32;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

size_t env_budget(const char* name, size_t fallback) {
  const char* v = std::getenv(name);
  if (!v) return fallback;
  return static_cast<size_t>(std::stoull(v));
}

struct CommonOpts {
  size_t state_budget = env_budget("LTLSYNTH_STATE_BUDGET", 2'000'000);
  int automaton_budget =
      static_cast<int>(env_budget("LTLSYNTH_AUTOMATON_BUDGET", 4096));
};

struct ArenaInputs {
  std::optional<Specification> spec;  // absent for raw HOA input
  std::vector<Ucw> automata;          // aligned, for HOA input
  int env_bits = 0;
  int sys_bits = 0;
  std::string name;
};

bool looks_like_hoa(const std::string& text) {
  size_t pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text.compare(pos, 4, "HOA:") == 0;
}

ArenaInputs load_inputs(const std::vector<std::string>& paths,
                        const std::string& hoa_inputs) {
  ArenaInputs in;
  in.name = std::filesystem::path(paths.front()).stem().string();
  std::string first = read_file(paths.front());
  if (!looks_like_hoa(first)) {
    if (paths.size() > 1)
      throw Error("multiple input files are only supported for HOA automata");
    in.spec = parse_spec(first);
    in.env_bits = in.spec->env_count();
    in.sys_bits = in.spec->sys_count();
    return in;
  }

  // HOA mode: the partition into environment and system variables comes from
  // --inputs; remaining APs are system outputs in order of first appearance.
  std::vector<std::string> env_names;
  {
    std::stringstream ss(hoa_inputs);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) env_names.push_back(item);
  }
  std::vector<Ucw> automata;
  automata.push_back(parse_hoa(first));
  for (size_t i = 1; i < paths.size(); ++i)
    automata.push_back(parse_hoa(read_file(paths[i])));

  std::vector<std::string> order = env_names;
  for (const Ucw& a : automata)
    for (const std::string& ap : a.ap_names)
      if (std::find(order.begin(), order.end(), ap) == order.end())
        order.push_back(ap);
  for (const std::string& name : env_names)
    if (std::none_of(automata.begin(), automata.end(), [&](const Ucw& a) {
          return std::find(a.ap_names.begin(), a.ap_names.end(), name) !=
                 a.ap_names.end();
        }))
      throw Error("--inputs names AP '" + name +
                  "' that no automaton declares");
  for (Ucw& a : automata) align_aps(a, order);
  in.automata = std::move(automata);
  in.env_bits = static_cast<int>(env_names.size());
  in.sys_bits = static_cast<int>(order.size() - env_names.size());
  return in;
}

GameArena make_arena(const ArenaInputs& in, int bound, bool decompose,
                     const CommonOpts& common) {
  TranslationBudget tb{common.automaton_budget};
  if (in.spec) return build_arena(*in.spec, bound, decompose, tb);
  return GameArena(in.automata, in.env_bits, in.sys_bits, bound);
}

void write_controller_files(const Controller& c, const std::string& out_dir,
                            const std::string& stem) {
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  auto base = std::filesystem::path(out_dir) / stem;
  std::ofstream(base.string() + ".controller.json") << export_json(c);
  std::ofstream(base.string() + ".controller.dot") << export_dot(c);
  std::cout << "controller written to " << base.string()
            << ".controller.{json,dot}\n";
}

void dump_debug_dots(const GameArena& arena, const std::string& dot_dir,
                     const std::string& stem) {
  if (dot_dir.empty()) return;
  std::filesystem::create_directories(dot_dir);
  auto base = std::filesystem::path(dot_dir) / stem;
  const auto& automata = arena.automata();
  for (size_t i = 0; i < automata.size(); ++i)
    std::ofstream(base.string() + ".ucw" + std::to_string(i) + ".dot")
        << to_dot(automata[i]);
  std::ofstream(base.string() + ".arena.dot") << reachable_dot(arena, 500);
}

void append_metrics(const std::string& csv_path, const RunRecord& rec) {
  if (csv_path.empty()) return;
  bool fresh = !std::filesystem::exists(csv_path) ||
               std::filesystem::file_size(csv_path) == 0;
  std::ofstream out(csv_path, std::ios::app);
  if (fresh) out << kRunRecordCsvHeader << '\n';
  out << to_csv_row(rec) << '\n';
}

int run_synth(const std::vector<std::string>& files,
              const std::string& backend, int k, DqsConfig cfg,
              const std::string& hoa_inputs, const std::string& out_dir,
              const std::string& metrics_csv, const std::string& dot_dir,
              const CommonOpts& common) {
  cfg.verify_budget.max_states = common.state_budget;
  cfg.translation_budget.max_states = common.automaton_budget;
  ArenaInputs in = load_inputs(files, hoa_inputs);
  SolverBudget budget{common.state_budget};

  RunRecord rec;
  rec.benchmark = in.name;
  rec.seed = cfg.seed;
  auto emit = [&](int exit_code) {
    append_metrics(metrics_csv, rec);
    return exit_code;
  };

  if (backend == "fixpoint" || backend == "vi") {
    const int bound = backend == "fixpoint" ? k : cfg.K;
    GameArena arena = make_arena(in, bound, cfg.decompose, common);
    dump_debug_dots(arena, dot_dir, in.name);
    rec.input_size = arena.total_states();
    rec.config = backend;
    std::optional<Controller> controller;
    if (backend == "fixpoint") {
      SafeSetResult result = solve_fixpoint(arena, budget);
      if (result.realizable_at_k)
        controller = compact_exact_controller(arena, result, budget);
    } else {
      ValueTable table = value_iteration(arena, cfg.K, budget);
      if (table.value(arena.initial_state()) < cfg.K)
        controller = extract(arena, greedy_policy(arena, std::move(table)),
                             budget);
    }
    if (!controller) {
      std::cout << "UNREALIZABLE at bound " << bound << "\n";
      return emit(kExitUnrealizable);
    }
    Controller c = std::move(*controller);
    VerificationReport report = verify(arena, c, bound, budget);
    if (!report.ok())
      throw Error("internal error: exact policy failed verification");
    rec.solved = true;
    rec.controller_size = c.size();
    std::cout << "REALIZABLE at bound " << bound << "; controller has "
              << c.size() << " states (verified on " << report.visited_count
              << " closed-loop states)\n";
    write_controller_files(c, out_dir, in.name);
    return emit(kExitRealizable);
  }

  if (backend != "dqs") throw Error("unknown backend '" + backend + "'");
  if (!in.spec) {
    // HOA input: build the arena directly and run the learner on it.
    GameArena arena = make_arena(in, cfg.K, false, common);
    dump_debug_dots(arena, dot_dir, in.name);
    rec.input_size = arena.total_states();
    rec.config = config_name({cfg.use_target_network, cfg.use_losing_replay,
                              cfg.use_potentials, cfg.decompose});
    DqsRunner runner(arena, cfg);
    SynthesisResult result = runner.run();
    rec.solved = result.metrics.solved;
    rec.episodes = result.metrics.episodes_used;
    rec.batch_steps = result.metrics.batch_steps_used;
    rec.controller_size = result.metrics.controller_size;
    rec.wall_ms = result.metrics.wall_seconds * 1000.0;
    if (result.verdict == Verdict::Solved) {
      std::cout << "SOLVED in " << result.metrics.episodes_used
                << " episodes; controller has "
                << result.metrics.controller_size << " states\n";
      write_controller_files(*result.controller, out_dir, in.name);
      return emit(kExitRealizable);
    }
    std::cout << "UNKNOWN after " << result.metrics.episodes_used
              << " episodes\n";
    return emit(kExitUnknown);
  }

  rec.config = config_name({cfg.use_target_network, cfg.use_losing_replay,
                            cfg.use_potentials, cfg.decompose});
  GameArena arena =
      build_arena(*in.spec, cfg.K, cfg.decompose, cfg.translation_budget);
  dump_debug_dots(arena, dot_dir, in.name);
  rec.input_size = arena.total_states();
  DqsRunner runner(arena, cfg);
  SynthesisResult result = runner.run();
  rec.solved = result.metrics.solved;
  rec.episodes = result.metrics.episodes_used;
  rec.batch_steps = result.metrics.batch_steps_used;
  rec.controller_size = result.metrics.controller_size;
  rec.wall_ms = result.metrics.wall_seconds * 1000.0;
  if (result.verdict == Verdict::Solved) {
    std::cout << "SOLVED in " << result.metrics.episodes_used
              << " episodes; controller has " << result.metrics.controller_size
              << " states\n";
    write_controller_files(*result.controller, out_dir, in.name);
    return emit(kExitRealizable);
  }
  std::cout << "UNKNOWN after " << result.metrics.episodes_used << " episodes";
  if (result.metrics.verification_budget_hit)
    std::cout << " (warning: verification hit the state budget)";
  std::cout << "\n";
  return emit(kExitUnknown);
}

int run_bench(const std::string& dir, std::vector<std::string> configs,
              int seeds, std::uint64_t seed_base, int jobs, DqsConfig base,
              const std::string& csv_path, const CommonOpts& common) {
  base.verify_budget.max_states = common.state_budget;
  base.translation_budget.max_states = common.automaton_budget;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".spec") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error("no .spec files found in " + dir);

  for (const std::string& name : configs)
    if (!config_from_name(name)) throw Error("unknown configuration '" + name +
                                             "'");

  BenchOptions options;
  options.configs = std::move(configs);
  for (int s = 0; s < seeds; ++s)
    options.seeds.push_back(seed_base + static_cast<std::uint64_t>(s));
  options.parallelism =
      jobs > 0 ? jobs
               : std::max(1u, std::thread::hardware_concurrency());
  options.base = base;

  std::vector<RunRecord> records = run_benchmarks(files, options);
  std::string csv = to_csv(records);
  if (csv_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream(csv_path) << csv;
    size_t solved = 0;
    for (const RunRecord& r : records) solved += r.solved;
    std::cout << records.size() << " runs, " << solved << " solved; CSV at "
              << csv_path << "\n";
  }
  return 0;
}

int run_verify(const std::string& spec_path, const std::string& controller_path,
               int K, const CommonOpts& common) {
  Specification spec = parse_spec(read_file(spec_path));
  Controller c = import_json(read_file(controller_path));
  GameArena arena = build_arena(spec, K, /*decompose=*/false,
                                TranslationBudget{common.automaton_budget});
  if (c.env_bits != arena.env_bits() || c.sys_bits != arena.sys_bits())
    throw Error("controller action spaces do not match the specification");
  VerificationReport report =
      verify(arena, c, K, SolverBudget{common.state_budget});
  switch (report.status) {
    case VerificationReport::Status::Ok:
      std::cout << "OK: " << report.visited_count
                << " closed-loop states, all with idx < " << K << "\n";
      return kExitRealizable;
    case VerificationReport::Status::Counterexample:
      std::cout << "FAIL: losing play of length "
                << report.counterexample.size() << " reaching "
                << game_state_to_string(report.counterexample.back()) << "\n";
      return kExitUnrealizable;
    case VerificationReport::Status::BudgetExceeded:
      std::cout << "INCONCLUSIVE: state budget exceeded after "
                << report.visited_count << " states\n";
      return kExitUnknown;
  }
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ltlsynth: bounded LTL synthesis with exact and neural-guided "
               "backends"};
  app.require_subcommand(1);
  CommonOpts common;

  // --- synth ---
  auto* synth = app.add_subcommand(
      "synth", "Synthesize a controller from a spec or HOA automata");
  std::vector<std::string> files;
  std::string backend = "fixpoint";
  std::string hoa_inputs, out_dir, metrics_csv, dot_dir;
  int k = 4;
  DqsConfig cfg;
  synth->add_option("files", files, "spec file, or HOA file(s)")->required();
  synth->add_option("--backend", backend, "fixpoint | vi | dqs")
      ->check(CLI::IsMember({"fixpoint", "vi", "dqs"}));
  synth->add_option("--k", k, "safety-game bound for the fixpoint backend");
  synth->add_option("--K", cfg.K, "losing bound for vi/dqs backends");
  synth->add_option("--horizon", cfg.horizon, "episode horizon");
  synth->add_option("--episodes", cfg.max_episodes, "episode budget");
  synth->add_option("--batch", cfg.batch_size, "batch size");
  synth->add_option("--learn-every", cfg.learn_every,
                    "exploration steps per batch step");
  synth->add_option("--mu", cfg.mu, "exploration-mode probability");
  synth->add_option("--eps", cfg.epsilon, "epsilon-greedy probability");
  synth->add_option("--alpha", cfg.alpha, "Adam learning rate");
  synth->add_option("--l2", cfg.l2, "L2 regularization coefficient");
  synth->add_option("--seed", cfg.seed, "RNG seed");
  synth->add_flag("--decompose,!--no-decompose", cfg.decompose,
                  "decompose top-level conjuncts into parallel automata");
  synth->add_flag("--target-net,!--no-target-net", cfg.use_target_network,
                  "use a target network (DDQS)");
  synth->add_flag("--losing-replay,!--no-losing-replay",
                  cfg.use_losing_replay, "learn from losing gameplays");
  synth->add_flag("--potentials,!--no-potentials", cfg.use_potentials,
                  "potential-shaped supervision");
  synth->add_option("--inputs", hoa_inputs,
                    "comma-separated environment APs (HOA input only)");
  synth->add_option("--out-dir", out_dir, "directory for controller files");
  synth->add_option("--metrics-csv", metrics_csv, "append a RunRecord row");
  synth->add_option("--dot-dir", dot_dir,
                    "dump automata and reachable-arena DOT files");
  synth->add_option("--state-budget", common.state_budget,
                    "explicit game-state budget");
  synth->add_option("--automaton-budget", common.automaton_budget,
                    "automaton state budget for translation");

  // --- bench ---
  auto* bench = app.add_subcommand("bench", "Run a benchmark directory");
  std::string bench_dir, bench_csv;
  std::vector<std::string> bench_configs{"DDQS[-,phi]"};
  int bench_seeds = 20;
  std::uint64_t bench_seed_base = 0;
  int bench_jobs = 0;
  DqsConfig bench_base;
  bench->add_option("dir", bench_dir, "directory of .spec files")->required();
  bench->add_option("--configs", bench_configs,
                    "configuration names (e.g. DDQS[-,phi] dec-DQS[-]); "
                    "repeat or list space-separated");
  bench->add_option("--seeds", bench_seeds, "number of seeds per cell");
  bench->add_option("--seed-base", bench_seed_base, "first seed value");
  bench->add_option("--jobs", bench_jobs, "parallel workers (0 = all cores)");
  bench->add_option("--K", bench_base.K, "losing bound");
  bench->add_option("--horizon", bench_base.horizon, "episode horizon");
  bench->add_option("--episodes", bench_base.max_episodes, "episode budget");
  bench->add_option("--batch", bench_base.batch_size, "batch size");
  bench->add_option("--mu", bench_base.mu, "exploration-mode probability");
  bench->add_option("--eps", bench_base.epsilon, "epsilon-greedy probability");
  bench->add_option("--alpha", bench_base.alpha, "Adam learning rate");
  bench->add_option("--metrics-csv,--csv", bench_csv, "output CSV path");
  bench->add_option("--state-budget", common.state_budget,
                    "explicit game-state budget");
  bench->add_option("--automaton-budget", common.automaton_budget,
                    "automaton state budget for translation");

  // --- verify ---
  auto* verify_cmd = app.add_subcommand(
      "verify", "Re-verify a stored controller against a spec");
  std::string verify_spec, verify_controller;
  int verify_K = 4;
  verify_cmd->add_option("spec", verify_spec, "spec file")->required();
  verify_cmd->add_option("controller", verify_controller,
                         "controller JSON file")
      ->required();
  verify_cmd->add_option("--K", verify_K, "losing bound");
  verify_cmd->add_option("--state-budget", common.state_budget,
                         "explicit game-state budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed())
      return run_synth(files, backend, k, cfg, hoa_inputs, out_dir,
                       metrics_csv, dot_dir, common);
    if (bench->parsed())
      return run_bench(bench_dir, bench_configs, bench_seeds, bench_seed_base,
                       bench_jobs, bench_base, bench_csv, common);
    if (verify_cmd->parsed())
      return run_verify(verify_spec, verify_controller, verify_K, common);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kExitBudgetError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
