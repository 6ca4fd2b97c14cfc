// Deep Q-learning for LTL synthesis: epsilon-greedy episodes, prioritized
// experience replay, one-step-lookahead batch targets with rounding and
// K-clamping, the target-network variant, learning from losing gameplays,
// and potential-shaped supervision.
#pragma once

#include <optional>
#include <random>

#include "ltlsynth/controller.hpp"
#include "ltlsynth/net.hpp"

namespace ltlsynth {

struct DqsConfig {
  int K = 4;               // losing bound
  int horizon = 50;        // max episode length
  int max_episodes = 1000;
  int batch_size = 32;
  int learn_every = 4;     // exploration steps per batch learning step
  double mu = 0.2;         // per-episode, per-player epsilon-greedy draw
  double epsilon = 0.2;    // per-step random-action probability
  double alpha = 0.005;    // Adam learning rate
  double l2 = 1e-4;
  size_t replay_capacity = 10000;
  bool use_target_network = true;
  bool use_losing_replay = true;
  bool use_potentials = true;
  bool decompose = false;
  std::uint64_t seed = 0;
  SolverBudget verify_budget{};
  TranslationBudget translation_budget{};

  void validate() const;
};

// Named configuration presets: DQS, DQS[-], DDQS, DDQS[-], DDQS[-,phi],
// each with an optional dec- prefix for automata decompositions.
struct ConfigToggles {
  bool target_net = false;
  bool losing_replay = false;
  bool potentials = false;
  bool decompose = false;
};
std::optional<ConfigToggles> config_from_name(const std::string& name);
std::string config_name(const ConfigToggles& t);
std::vector<std::string> known_config_names();
void apply_toggles(DqsConfig& cfg, const ConfigToggles& t);

// ---------------------------------------------------------------------------
// Prioritized experience replay: proportional sampling, FIFO eviction.

class ReplayBuffer {
 public:
  explicit ReplayBuffer(size_t capacity);

  /// Inserts with the given priority (>= 0), evicting the oldest entry when
  /// full. Returns the slot id for later priority refreshes.
  size_t push(GameState s, double priority);
  void set_priority(size_t slot, double priority);
  double priority(size_t slot) const { return priorities_[slot]; }
  const GameState& state(size_t slot) const { return states_[slot]; }
  size_t size() const { return size_; }
  double total_priority() const;

  /// n independent proportional draws; uniform when all priorities are 0.
  std::vector<size_t> sample(size_t n, std::mt19937_64& rng) const;

 private:
  size_t capacity_;
  size_t size_ = 0;
  size_t write_pos_ = 0;
  std::vector<GameState> states_;
  std::vector<double> priorities_;
  std::vector<double> fenwick_;  // prefix sums over slot priorities

  void fenwick_add(size_t slot, double delta);
  size_t fenwick_find(double target) const;
};

// ---------------------------------------------------------------------------
// Policy pieces

std::vector<double> state_to_input(const GameState& s);
std::vector<double> q_values(const QNetwork& net, const GameState& s);

/// argmax_x Q(s, x), smallest x on ties.
int greedy_env_action(const QNetwork& net, const GameState& s);

/// argmin_y max_x' Q(T(s, x, y), x'), smallest y on ties. `clamped` selects
/// T_k (used when extracting controllers) versus T (used inside episodes).
int greedy_sys_action(const QNetwork& net, const GameArena& arena,
                      const GameState& s, int x, bool clamped);

/// One-step-lookahead target vectors. `bootstrap` supplies Q(s', .): the
/// target network under DDQS, the online network otherwise. Targets for the
/// all-dead state are -1 in every component; others are
///   min(K, max(idx(s), min_y max_x' round(Q(s', x'))))
/// or, with potentials, floor instead of round plus Phi(s') inside the min.
using QFn = std::function<std::vector<double>(const GameState&)>;
std::vector<std::vector<double>> compute_targets(
    const GameArena& arena, const QFn& bootstrap,
    std::span<const GameState> batch, const DqsConfig& cfg);

// ---------------------------------------------------------------------------
// Synthesis

enum class Verdict { Solved, Unknown };

struct RunMetrics {
  int episodes_used = 0;
  std::int64_t batch_steps_used = 0;
  bool solved = false;
  size_t controller_size = 0;
  double wall_seconds = 0.0;
  bool verification_budget_hit = false;
};

struct SynthesisResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Controller> controller;
  RunMetrics metrics;
};

// One synthesis run: owns the networks, replay buffer, and RNG; single
// threaded end to end. Exposes the episode/learning internals the tests
// exercise directly.
class DqsRunner {
 public:
  DqsRunner(const GameArena& arena, DqsConfig cfg);

  SynthesisResult run();

  struct EpisodeRecord {
    std::vector<GameState> trace;  // s1 .. s_n
    bool lost = false;             // terminated on idx > K
    bool dead = false;             // terminated on the all-dead state
  };

  /// Plays one training episode under the drawn exploration modes, pushing
  /// visited states into the replay buffer and triggering a batch learning
  /// step every learn_every exploration steps.
  EpisodeRecord run_episode();

  /// Backward sweep over a losing play: one batch step per state, each batch
  /// mixing (batch_size - 1) replay samples with the injected play state.
  void learn_from_losing_play(const std::vector<GameState>& play);

  /// Current-network TD error of a state (the replay priority).
  double td_error(const GameState& s) const;

  Policy extraction_policy() const;

  const QNetwork& net() const { return net_; }
  const QNetwork& target_net() const { return target_; }
  ReplayBuffer& buffer() { return buffer_; }
  std::int64_t batch_steps_used() const { return batch_steps_; }

 private:
  void batch_step(const GameState* injected);
  QFn bootstrap_fn() const;

  const GameArena& arena_;
  DqsConfig cfg_;
  QNetwork net_;
  QNetwork target_;
  AdamState adam_;
  ReplayBuffer buffer_;
  std::mt19937_64 rng_;
  std::int64_t exploration_steps_ = 0;
  std::int64_t batch_steps_ = 0;
};

/// Full pipeline: translate, build the arena at bound K, and run the
/// episode/verify loop until a controller passes verification or the episode
/// budget is exhausted.
SynthesisResult synthesize(const Specification& spec, const DqsConfig& cfg);

}  // namespace ltlsynth
