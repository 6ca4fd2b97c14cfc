#include "ltlsynth/solver.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace ltlsynth {

int SafeSetResult::sys_action(const GameState& s, int x) const {
  auto it = winning_moves.find(s);
  if (it == winning_moves.end()) return 0;
  return it->second[x];
}

Policy SafeSetResult::policy() const {
  auto moves = std::make_shared<
      std::unordered_map<GameState, std::vector<std::int32_t>, GameStateHash>>(
      winning_moves);
  return [moves](const GameState& s, int x) {
    auto it = moves->find(s);
    return it == moves->end() ? 0 : static_cast<int>(it->second[x]);
  };
}

namespace {

// Reachable state space with explicit successor ids. Expansion stops at
// states matched by `terminal`.
struct ReachableSpace {
  std::vector<GameState> states;
  std::unordered_map<GameState, std::int32_t, GameStateHash> id_of;
  // succ[s * actions + x * Ay + y], -1 on unexpanded rows.
  std::vector<std::int32_t> succ;
  std::vector<char> terminal;
  int ax = 0, ay = 0;

  std::int32_t succ_of(std::int32_t s, int x, int y) const {
    return succ[(static_cast<size_t>(s) * ax + x) * ay + y];
  }
};

ReachableSpace explore(const GameArena& arena, bool clamped,
                       const std::function<bool(const GameState&)>& is_terminal,
                       const SolverBudget& budget) {
  ReachableSpace r;
  r.ax = arena.env_actions();
  r.ay = arena.sys_actions();
  auto intern = [&](GameState s) {
    auto it = r.id_of.find(s);
    if (it != r.id_of.end()) return it->second;
    if (r.states.size() >= budget.max_states)
      throw BudgetError("game state budget exceeded during exploration");
    std::int32_t id = static_cast<std::int32_t>(r.states.size());
    r.id_of.emplace(s, id);
    r.states.push_back(std::move(s));
    r.terminal.push_back(0);
    return id;
  };
  std::int32_t init = intern(arena.initial_state());
  std::deque<std::int32_t> bfs{init};
  while (!bfs.empty()) {
    std::int32_t s = bfs.front();
    bfs.pop_front();
    if (is_terminal(r.states[s])) {
      r.terminal[s] = 1;
      continue;
    }
    size_t base = static_cast<size_t>(s) * r.ax * r.ay;
    if (r.succ.size() < base + static_cast<size_t>(r.ax) * r.ay)
      r.succ.resize(r.states.size() * static_cast<size_t>(r.ax) * r.ay, -1);
    for (int x = 0; x < r.ax; ++x) {
      for (int y = 0; y < r.ay; ++y) {
        GameState next = clamped ? arena.step_clamped(r.states[s], x, y)
                                 : arena.step(r.states[s], x, y);
        size_t before = r.states.size();
        std::int32_t t = intern(std::move(next));
        r.succ[base + static_cast<size_t>(x) * r.ay + y] = t;
        if (r.states.size() > before) bfs.push_back(t);
      }
    }
  }
  r.succ.resize(r.states.size() * static_cast<size_t>(r.ax) * r.ay, -1);
  return r;
}

}  // namespace

SafeSetResult solve_fixpoint(const GameArena& arena,
                             const SolverBudget& budget) {
  const int k = arena.k();
  auto losing = [&](const GameState& s) { return GameArena::idx(s) == k; };
  ReachableSpace r = explore(arena, /*clamped=*/true, losing, budget);
  const int n = static_cast<int>(r.states.size());
  const int ax = r.ax, ay = r.ay;

  // Environment attractor of the losing states: s joins when some env action
  // leaves the system no response outside the attractor.
  std::vector<char> attr(n, 0);
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> preds(n);
  std::vector<std::int32_t> remaining(static_cast<size_t>(n) * ax, ay);
  std::deque<std::int32_t> queue;
  for (std::int32_t s = 0; s < n; ++s) {
    if (r.terminal[s]) {
      attr[s] = 1;
      queue.push_back(s);
      continue;
    }
    for (int x = 0; x < ax; ++x)
      for (int y = 0; y < ay; ++y)
        preds[r.succ_of(s, x, y)].push_back({s, x});
  }
  while (!queue.empty()) {
    std::int32_t t = queue.front();
    queue.pop_front();
    for (auto [s, x] : preds[t]) {
      if (attr[s]) continue;
      if (--remaining[static_cast<size_t>(s) * ax + x] == 0) {
        attr[s] = 1;
        queue.push_back(s);
      }
    }
  }

  SafeSetResult out;
  out.realizable_at_k = !attr[0];  // id 0 is the initial state

  // Among the safe responses, prefer the successor that discharges the most
  // obligations: most dead runs first, then lowest index sum, then smallest
  // action. Any safe choice wins; this one keeps extracted controllers from
  // wandering through procrastination states.
  auto score = [&](const GameState& t) {
    long live = 0, sum = 0;
    for (std::int16_t e : t.v) {
      live += e > -1;
      sum += e;
    }
    return std::make_pair(live, sum);
  };
  for (std::int32_t s = 0; s < n; ++s) {
    if (attr[s]) continue;
    out.safe_states.insert(r.states[s]);
    std::vector<std::int32_t> moves(ax, 0);
    for (int x = 0; x < ax; ++x) {
      int best_y = -1;
      std::pair<long, long> best_score{0, 0};
      for (int y = 0; y < ay; ++y) {
        std::int32_t t = r.succ_of(s, x, y);
        if (attr[t]) continue;
        auto sc = score(r.states[t]);
        if (best_y == -1 || sc < best_score) {
          best_y = y;
          best_score = sc;
        }
      }
      moves[x] = std::max(best_y, 0);
    }
    out.winning_moves.emplace(r.states[s], std::move(moves));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Value iteration

int ValueTable::q_value(const GameState& s, int x) const {
  auto it = q.find(s);
  return it == q.end() ? -1 : it->second[x];
}

int ValueTable::value(const GameState& s) const {
  auto it = q.find(s);
  if (it == q.end()) return -1;
  std::int16_t best = -1;
  for (std::int16_t v : it->second) best = std::max(best, v);
  return best;
}

namespace {
int backup_from(const GameArena& arena,
                const std::function<int(const GameState&, int)>& q_of,
                const GameState& s, int x, int cap) {
  const int ax = arena.env_actions();
  int best_y = cap;
  for (int y = 0; y < arena.sys_actions(); ++y) {
    GameState next = arena.step(s, x, y);
    int worst_x = -1;
    for (int x2 = 0; x2 < ax; ++x2) worst_x = std::max(worst_x, q_of(next, x2));
    best_y = std::min(best_y, worst_x);
  }
  return std::min(cap, std::max(GameArena::idx(s), best_y));
}
}  // namespace

int bellman_backup(const GameArena& arena, const ValueTable& table,
                   const GameState& s, int x) {
  return backup_from(
      arena, [&](const GameState& t, int x2) { return table.q_value(t, x2); },
      s, x, table.cap);
}

ValueTable value_iteration(const GameArena& arena, int K,
                           const SolverBudget& budget) {
  auto terminal = [&](const GameState& s) {
    return s.all_dead || GameArena::idx(s) >= K;
  };
  ReachableSpace r = explore(arena, /*clamped=*/false, terminal, budget);
  const int n = static_cast<int>(r.states.size());
  const int ax = r.ax, ay = r.ay;

  std::vector<std::int16_t> q(static_cast<size_t>(n) * ax, -1);
  std::vector<std::int16_t> idx_of(n);
  for (std::int32_t s = 0; s < n; ++s) {
    idx_of[s] = static_cast<std::int16_t>(GameArena::idx(r.states[s]));
    if (r.terminal[s] && !r.states[s].all_dead)
      for (int x = 0; x < ax; ++x)
        q[static_cast<size_t>(s) * ax + x] = static_cast<std::int16_t>(K);
    // The all-dead state keeps q = -1: it is a fixed point of the backup.
  }

  ValueTable out;
  out.cap = K;
  out.pair_count = static_cast<size_t>(n) * ax;
  bool changed = true;
  while (changed) {
    changed = false;
    ++out.sweeps;
    for (std::int32_t s = 0; s < n; ++s) {
      if (r.terminal[s] || r.states[s].all_dead) continue;
      for (int x = 0; x < ax; ++x) {
        int best_y = K;
        for (int y = 0; y < ay; ++y) {
          std::int32_t t = r.succ_of(s, x, y);
          std::int16_t worst = -1;
          for (int x2 = 0; x2 < ax; ++x2)
            worst = std::max(worst, q[static_cast<size_t>(t) * ax + x2]);
          best_y = std::min<int>(best_y, worst);
        }
        int value = std::min(K, std::max<int>(idx_of[s], best_y));
        auto& cell = q[static_cast<size_t>(s) * ax + x];
        if (value < cell) out.monotone = false;  // cannot happen; recorded
        if (value != cell) {
          cell = static_cast<std::int16_t>(value);
          changed = true;
        }
      }
    }
  }

  out.q.reserve(n);
  for (std::int32_t s = 0; s < n; ++s) {
    std::vector<std::int16_t> row(q.begin() + static_cast<size_t>(s) * ax,
                                  q.begin() + static_cast<size_t>(s + 1) * ax);
    out.q.emplace(r.states[s], std::move(row));
  }
  return out;
}

Policy greedy_policy(const GameArena& arena, ValueTable table) {
  auto shared = std::make_shared<ValueTable>(std::move(table));
  return [&arena, shared](const GameState& s, int x) {
    int best_y = 0;
    int best_v = std::numeric_limits<int>::max();
    for (int y = 0; y < arena.sys_actions(); ++y) {
      int v = shared->value(arena.step(s, x, y));
      if (v < best_v) {
        best_v = v;
        best_y = y;
      }
    }
    return best_y;
  };
}

}  // namespace ltlsynth
