// The bounded-synthesis safety game: co-Buchi index vectors, the transition
// functions T and T_k, idx, the losing-state test, cross products over
// decomposed automata, and the potential function.
#pragma once

#include <cstdint>
#include <functional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "ltlsynth/automata.hpp"
#include "ltlsynth/ltl.hpp"

namespace ltlsynth {

// Per-automaton-state co-Buchi indexes; -1 means no run ends in that state.
struct GameState {
  std::vector<std::int16_t> v;
  bool all_dead = true;

  bool operator==(const GameState& o) const { return v == o.v; }
};

struct GameStateHash {
  size_t operator()(const GameState& s) const {
    return std::hash<std::string_view>()(std::string_view(
        reinterpret_cast<const char*>(s.v.data()), s.v.size() * sizeof(s.v[0])));
  }
};

GameState make_game_state(std::vector<std::int16_t> entries);

class GameArena {
 public:
  // Automata must share the arena's AP layout: env vars on bits
  // [0, env_bits), sys vars on [env_bits, env_bits + sys_bits).
  GameArena(std::vector<Ucw> automata, int env_bits, int sys_bits, int k);

  int env_bits() const { return env_bits_; }
  int sys_bits() const { return sys_bits_; }
  int env_actions() const { return 1 << env_bits_; }
  int sys_actions() const { return 1 << sys_bits_; }
  int k() const { return k_; }
  int total_states() const { return total_states_; }
  const std::vector<Ucw>& automata() const { return automata_; }

  GameState initial_state() const;

  /// Unclamped T: per target state, the max source index over enabled edges,
  /// plus one on rejecting targets that some run reaches.
  GameState step(const GameState& s, int x, int y) const;

  /// T_k: as step, with every entry clamped to at most k.
  GameState step_clamped(const GameState& s, int x, int y) const;

  static int idx(const GameState& s);
  // Two losing tests used by different callers: the solvers' S_bad membership
  // under clamped dynamics, and the learner's episode cutoff under T.
  bool is_losing(const GameState& s) const { return idx(s) == k_; }
  static bool index_exceeds(const GameState& s, int bound) {
    return idx(s) > bound;
  }

  /// Potential: 0 on the all-dead state, otherwise
  /// max{ 1/(d(q_i)+1) : s_i = idx(s) }, with unreachable distances
  /// contributing 0. Always in [0, 1/2].
  double potential(const GameState& s) const;

  /// All system responses to env action x, y ascending.
  std::vector<std::pair<int, GameState>> enabled_successors(const GameState& s,
                                                            int x,
                                                            bool clamped) const;

  Letter letter_of(int x, int y) const {
    return static_cast<Letter>(x) |
           (static_cast<Letter>(y) << env_bits_);
  }

 private:
  struct LetterTable {
    // Flattened over all automata: per target state, enabled source states.
    std::vector<std::vector<std::int32_t>> sources_by_target;
  };
  const LetterTable& table_for(Letter l) const;
  GameState step_impl(const GameState& s, int x, int y, bool clamped) const;

  std::vector<Ucw> automata_;
  int env_bits_;
  int sys_bits_;
  int k_;
  int total_states_ = 0;
  std::vector<int> seg_offset_;       // automaton index -> offset in v
  std::vector<char> rejecting_flat_;  // per flattened state
  std::vector<int> reject_dist_;      // per flattened state

  mutable std::unordered_map<Letter, LetterTable> letter_memo_;
  mutable std::shared_mutex memo_mutex_;
};

/// Builds the game arena for a specification: translate (optionally after
/// conjunct decomposition) and run the per-conjunct games in parallel by
/// concatenating their index segments.
GameArena build_arena(const Specification& spec, int k, bool decompose_formula,
                      const TranslationBudget& budget = {});

std::string game_state_to_string(const GameState& s);

/// Debug dump of the reachable clamped state graph, nodes labeled by index
/// vectors and edges by "env-bits/sys-bits"; cuts off at max_states.
std::string reachable_dot(const GameArena& arena, size_t max_states);

}  // namespace ltlsynth
