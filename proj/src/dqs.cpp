#include "ltlsynth/dqs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace ltlsynth {

void DqsConfig::validate() const {
  if (K < 1) throw Error("K must be at least 1");
  if (K > 8192) throw Error("K too large");
  if (horizon < 1) throw Error("horizon must be at least 1");
  if (max_episodes < 0) throw Error("max_episodes must be non-negative");
  if (batch_size < 1) throw Error("batch_size must be at least 1");
  if (learn_every < 1) throw Error("learn_every must be at least 1");
  if (mu < 0.0 || mu > 1.0) throw Error("mu must lie in [0, 1]");
  if (epsilon < 0.0 || epsilon > 1.0) throw Error("epsilon must lie in [0, 1]");
  if (replay_capacity < 1) throw Error("replay capacity must be at least 1");
}

// ---------------------------------------------------------------------------
// Configuration names

std::optional<ConfigToggles> config_from_name(const std::string& name) {
  std::string base = name;
  ConfigToggles t;
  if (base.rfind("dec-", 0) == 0) {
    t.decompose = true;
    base = base.substr(4);
  }
  if (base == "DQS") {
    return t;
  } else if (base == "DQS[-]") {
    t.losing_replay = true;
  } else if (base == "DDQS") {
    t.target_net = true;
  } else if (base == "DDQS[-]") {
    t.target_net = true;
    t.losing_replay = true;
  } else if (base == "DDQS[-,phi]") {
    t.target_net = true;
    t.losing_replay = true;
    t.potentials = true;
  } else {
    return std::nullopt;
  }
  return t;
}

std::string config_name(const ConfigToggles& t) {
  std::string base;
  if (!t.target_net)
    base = t.losing_replay ? "DQS[-]" : "DQS";
  else if (t.potentials)
    base = "DDQS[-,phi]";  // potentials are only named on top of DDQS[-]
  else
    base = t.losing_replay ? "DDQS[-]" : "DDQS";
  return t.decompose ? "dec-" + base : base;
}

std::vector<std::string> known_config_names() {
  std::vector<std::string> out;
  for (const char* base :
       {"DQS", "DQS[-]", "DDQS", "DDQS[-]", "DDQS[-,phi]"}) {
    out.emplace_back(base);
    out.emplace_back(std::string("dec-") + base);
  }
  return out;
}

void apply_toggles(DqsConfig& cfg, const ConfigToggles& t) {
  cfg.use_target_network = t.target_net;
  cfg.use_losing_replay = t.losing_replay;
  cfg.use_potentials = t.potentials;
  cfg.decompose = t.decompose;
}

// ---------------------------------------------------------------------------
// Replay buffer

ReplayBuffer::ReplayBuffer(size_t capacity) : capacity_(capacity) {
  if (capacity < 1) throw Error("replay capacity must be at least 1");
  fenwick_.assign(capacity + 1, 0.0);
  states_.reserve(std::min<size_t>(capacity, 4096));
}

void ReplayBuffer::fenwick_add(size_t slot, double delta) {
  for (size_t i = slot + 1; i < fenwick_.size(); i += i & (~i + 1))
    fenwick_[i] += delta;
}

size_t ReplayBuffer::fenwick_find(double target) const {
  // Largest power of two <= capacity.
  size_t mask = 1;
  while ((mask << 1) <= capacity_) mask <<= 1;
  size_t pos = 0;
  for (; mask; mask >>= 1) {
    size_t next = pos + mask;
    if (next < fenwick_.size() && fenwick_[next] < target) {
      target -= fenwick_[next];
      pos = next;
    }
  }
  return std::min(pos, size_ - 1);  // pos is the count of slots skipped
}

size_t ReplayBuffer::push(GameState s, double priority) {
  priority = std::max(priority, 0.0);
  size_t slot;
  if (size_ < capacity_) {
    slot = size_++;
    states_.push_back(std::move(s));
    priorities_.push_back(priority);
    fenwick_add(slot, priority);
  } else {
    slot = write_pos_;
    states_[slot] = std::move(s);
    fenwick_add(slot, priority - priorities_[slot]);
    priorities_[slot] = priority;
  }
  write_pos_ = (write_pos_ + 1) % capacity_;
  return slot;
}

void ReplayBuffer::set_priority(size_t slot, double priority) {
  priority = std::max(priority, 0.0);
  fenwick_add(slot, priority - priorities_[slot]);
  priorities_[slot] = priority;
}

double ReplayBuffer::total_priority() const {
  double sum = 0.0;
  for (size_t i = capacity_; i >= 1; i -= i & (~i + 1)) sum += fenwick_[i];
  return sum;
}

std::vector<size_t> ReplayBuffer::sample(size_t n,
                                         std::mt19937_64& rng) const {
  if (size_ == 0) throw Error("cannot sample from an empty replay buffer");
  std::vector<size_t> out;
  out.reserve(n);
  const double total = total_priority();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (size_t i = 0; i < n; ++i) {
    if (total <= 0.0) {
      out.push_back(static_cast<size_t>(rng() % size_));
    } else {
      double target = unit(rng) * total;
      out.push_back(fenwick_find(target));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Policy pieces

std::vector<double> state_to_input(const GameState& s) {
  std::vector<double> out(s.v.size());
  for (size_t i = 0; i < s.v.size(); ++i) out[i] = static_cast<double>(s.v[i]);
  return out;
}

std::vector<double> q_values(const QNetwork& net, const GameState& s) {
  return forward(net, state_to_input(s));
}

int greedy_env_action(const QNetwork& net, const GameState& s) {
  std::vector<double> q = q_values(net, s);
  int best = 0;
  for (size_t x = 1; x < q.size(); ++x)
    if (q[x] > q[best]) best = static_cast<int>(x);
  return best;
}

int greedy_sys_action(const QNetwork& net, const GameArena& arena,
                      const GameState& s, int x, bool clamped) {
  int best_y = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int y = 0; y < arena.sys_actions(); ++y) {
    GameState next =
        clamped ? arena.step_clamped(s, x, y) : arena.step(s, x, y);
    std::vector<double> q = q_values(net, next);
    double worst = -std::numeric_limits<double>::infinity();
    for (double v : q) worst = std::max(worst, v);
    if (worst < best_v) {
      best_v = worst;
      best_y = y;
    }
  }
  return best_y;
}

std::vector<std::vector<double>> compute_targets(
    const GameArena& arena, const QFn& bootstrap,
    std::span<const GameState> batch, const DqsConfig& cfg) {
  const int ax = arena.env_actions();
  const int ay = arena.sys_actions();
  std::vector<std::vector<double>> out;
  out.reserve(batch.size());
  for (const GameState& s : batch) {
    std::vector<double> target(ax, -1.0);
    if (!s.all_dead) {
      const double index = GameArena::idx(s);
      for (int x = 0; x < ax; ++x) {
        double best_y = std::numeric_limits<double>::infinity();
        for (int y = 0; y < ay; ++y) {
          GameState next = arena.step(s, x, y);
          std::vector<double> q = bootstrap(next);
          double worst = -std::numeric_limits<double>::infinity();
          if (cfg.use_potentials) {
            const double phi = arena.potential(next);
            for (double v : q) worst = std::max(worst, phi + std::floor(v));
          } else {
            for (double v : q) worst = std::max(worst, std::round(v));
          }
          best_y = std::min(best_y, worst);
        }
        target[x] = std::min<double>(cfg.K, std::max(index, best_y));
      }
    }
    out.push_back(std::move(target));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Runner

DqsRunner::DqsRunner(const GameArena& arena, DqsConfig cfg)
    : arena_(arena),
      cfg_(cfg),
      net_(init_network(arena.total_states(), arena.env_actions(), cfg.seed)),
      target_(net_),
      adam_(make_adam(net_, cfg.alpha)),
      buffer_(cfg.replay_capacity),
      rng_(cfg.seed ^ 0x9e3779b97f4a7c15ull) {
  cfg_.validate();
}

QFn DqsRunner::bootstrap_fn() const {
  const QNetwork& source = cfg_.use_target_network ? target_ : net_;
  return [&source](const GameState& s) { return q_values(source, s); };
}

double DqsRunner::td_error(const GameState& s) const {
  std::vector<std::vector<double>> target =
      compute_targets(arena_, bootstrap_fn(), std::span(&s, 1), cfg_);
  std::vector<double> pred = q_values(net_, s);
  double err = 0.0;
  for (size_t x = 0; x < pred.size(); ++x)
    err += std::abs(pred[x] - target[0][x]);
  return err;
}

void DqsRunner::batch_step(const GameState* injected) {
  const size_t draws =
      injected ? static_cast<size_t>(std::max(0, cfg_.batch_size - 1))
               : static_cast<size_t>(cfg_.batch_size);
  std::vector<size_t> slots;
  if (draws > 0 && buffer_.size() > 0) slots = buffer_.sample(draws, rng_);

  std::vector<GameState> states;
  states.reserve(slots.size() + 1);
  for (size_t slot : slots) states.push_back(buffer_.state(slot));
  if (injected) states.push_back(*injected);
  if (states.empty()) return;

  std::vector<std::vector<double>> targets =
      compute_targets(arena_, bootstrap_fn(), states, cfg_);
  std::vector<TrainSample> samples(states.size());
  for (size_t i = 0; i < states.size(); ++i) {
    samples[i].input = state_to_input(states[i]);
    samples[i].target = std::move(targets[i]);
  }
  train_batch(net_, adam_, samples, cfg_.l2);
  batch_steps_ += 1;

  // Refresh the priorities of the sampled entries under the updated network.
  std::vector<size_t> unique(slots);
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  for (size_t slot : unique)
    buffer_.set_priority(slot, td_error(buffer_.state(slot)));
}

DqsRunner::EpisodeRecord DqsRunner::run_episode() {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool env_explores = unit(rng_) < cfg_.mu;
  const bool sys_explores = unit(rng_) < cfg_.mu;

  EpisodeRecord rec;
  GameState s = arena_.initial_state();
  buffer_.push(s, td_error(s));
  rec.trace.push_back(s);

  for (int t = 0; t < cfg_.horizon; ++t) {
    int x;
    if (env_explores && unit(rng_) < cfg_.epsilon)
      x = static_cast<int>(rng_() % arena_.env_actions());
    else
      x = greedy_env_action(net_, s);

    int y;
    if (sys_explores && unit(rng_) < cfg_.epsilon)
      y = static_cast<int>(rng_() % arena_.sys_actions());
    else
      y = greedy_sys_action(net_, arena_, s, x, /*clamped=*/false);

    s = arena_.step(s, x, y);
    buffer_.push(s, td_error(s));
    rec.trace.push_back(s);

    exploration_steps_ += 1;
    if (exploration_steps_ % cfg_.learn_every == 0) batch_step(nullptr);

    if (s.all_dead) {
      rec.dead = true;
      break;
    }
    if (GameArena::index_exceeds(s, cfg_.K)) {
      rec.lost = true;
      break;
    }
  }
  return rec;
}

void DqsRunner::learn_from_losing_play(const std::vector<GameState>& play) {
  for (size_t i = play.size(); i-- > 0;) batch_step(&play[i]);
}

Policy DqsRunner::extraction_policy() const {
  return [this](const GameState& s, int x) {
    return greedy_sys_action(net_, arena_, s, x, /*clamped=*/true);
  };
}

SynthesisResult DqsRunner::run() {
  const auto t0 = std::chrono::steady_clock::now();
  SynthesisResult result;
  auto finish = [&](Verdict verdict) -> SynthesisResult& {
    result.verdict = verdict;
    result.metrics.batch_steps_used = batch_steps_;
    result.metrics.solved = verdict == Verdict::Solved;
    result.metrics.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return result;
  };

  for (int episode = 1; episode <= cfg_.max_episodes; ++episode) {
    result.metrics.episodes_used = episode;
    EpisodeRecord rec = run_episode();
    if (cfg_.use_target_network) clone_into(net_, target_);
    if (rec.lost && cfg_.use_losing_replay) learn_from_losing_play(rec.trace);

    // Verification of the current greedy policy.
    try {
      Controller c = extract(arena_, extraction_policy(), cfg_.verify_budget);
      VerificationReport report =
          verify(arena_, c, cfg_.K, cfg_.verify_budget);
      if (report.ok()) {
        result.controller = std::move(c);
        result.metrics.controller_size = result.controller->size();
        return finish(Verdict::Solved);
      }
      if (report.status == VerificationReport::Status::BudgetExceeded) {
        result.metrics.verification_budget_hit = true;
      } else if (cfg_.use_losing_replay) {
        learn_from_losing_play(report.counterexample);
      }
    } catch (const BudgetError&) {
      result.metrics.verification_budget_hit = true;
    }
  }
  return finish(Verdict::Unknown);
}

SynthesisResult synthesize(const Specification& spec, const DqsConfig& cfg) {
  cfg.validate();
  GameArena arena =
      build_arena(spec, cfg.K, cfg.decompose, cfg.translation_budget);
  DqsRunner runner(arena, cfg);
  return runner.run();
}

}  // namespace ltlsynth
