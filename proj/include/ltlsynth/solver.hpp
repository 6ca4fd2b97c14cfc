// Ground-truth solvers over the explicit reachable space: attractor-style
// fixpoint for G_k and tabular value iteration on the safety-game Bellman
// equations.
#pragma once

#include <functional>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ltlsynth/game.hpp"

namespace ltlsynth {

// Maps a game state and an environment action to the system response.
using Policy = std::function<int(const GameState&, int)>;

struct SolverBudget {
  size_t max_states = 2'000'000;
};

struct SafeSetResult {
  bool realizable_at_k = false;
  std::unordered_set<GameState, GameStateHash> safe_states;
  // Winning response per env action, defined on safe states.
  std::unordered_map<GameState, std::vector<std::int32_t>, GameStateHash>
      winning_moves;

  int sys_action(const GameState& s, int x) const;
  Policy policy() const;
};

/// Greatest set of states avoiding S_bad = {idx = k} under T_k, over the
/// space reachable from the initial state. Throws BudgetError when the
/// reachable space exceeds the budget.
SafeSetResult solve_fixpoint(const GameArena& arena,
                             const SolverBudget& budget = {});

struct ValueTable {
  int cap = 0;  // values live in [-1, cap]
  std::unordered_map<GameState, std::vector<std::int16_t>, GameStateHash> q;
  // Convergence statistics.
  int sweeps = 0;
  size_t pair_count = 0;
  bool monotone = true;  // no q value ever decreased between sweeps

  /// q(s, x); -1 for states outside the table (the initialization value).
  int q_value(const GameState& s, int x) const;
  /// v(s) = max_x q(s, x).
  int value(const GameState& s) const;
};

/// Sweeps Q(s,x) <- min(K, max(idx(s), min_y max_x' Q(T(s,x,y),x'))) over the
/// space reachable from s1 under T restricted to idx <= K, until no value
/// changes. Values start at -1 and only grow, so this terminates.
ValueTable value_iteration(const GameArena& arena, int K,
                           const SolverBudget& budget = {});

/// One Bellman backup read off a table (primarily for tests).
int bellman_backup(const GameArena& arena, const ValueTable& table,
                   const GameState& s, int x);

/// pi(s, x) = argmin_y V(T(s, x, y)), smallest y on ties.
Policy greedy_policy(const GameArena& arena, ValueTable table);

}  // namespace ltlsynth
