#include "ltlsynth/game.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace ltlsynth {

GameState make_game_state(std::vector<std::int16_t> entries) {
  GameState s;
  s.v = std::move(entries);
  s.all_dead = std::all_of(s.v.begin(), s.v.end(),
                           [](std::int16_t e) { return e == -1; });
  return s;
}

GameArena::GameArena(std::vector<Ucw> automata, int env_bits, int sys_bits,
                     int k)
    : automata_(std::move(automata)), env_bits_(env_bits), sys_bits_(sys_bits),
      k_(k) {
  if (automata_.empty()) throw Error("arena needs at least one automaton");
  if (env_bits_ < 0 || env_bits_ > kMaxPlayerVars || sys_bits_ < 0 ||
      sys_bits_ > kMaxPlayerVars)
    throw Error("action space too large: at most " +
                std::to_string(kMaxPlayerVars) + " variables per player");
  if (k_ < 0) throw Error("bound k must be non-negative");
  if (k_ > 8192) throw Error("bound k too large");
  for (const Ucw& a : automata_) {
    seg_offset_.push_back(total_states_);
    total_states_ += a.num_states;
    for (int q = 0; q < a.num_states; ++q)
      rejecting_flat_.push_back(a.rejecting[q]);
    RejectDistance rd = reject_distances(a);
    reject_dist_.insert(reject_dist_.end(), rd.d.begin(), rd.d.end());
  }
}

GameState GameArena::initial_state() const {
  GameState s;
  s.v.assign(total_states_, -1);
  for (size_t i = 0; i < automata_.size(); ++i)
    s.v[seg_offset_[i] + automata_[i].initial] = 0;
  s.all_dead = false;
  return s;
}

const GameArena::LetterTable& GameArena::table_for(Letter l) const {
  {
    std::shared_lock lock(memo_mutex_);
    auto it = letter_memo_.find(l);
    if (it != letter_memo_.end()) return it->second;
  }
  LetterTable t;
  t.sources_by_target.resize(total_states_);
  for (size_t i = 0; i < automata_.size(); ++i) {
    const int off = seg_offset_[i];
    for (const Edge& e : automata_[i].edges)
      if (guard_eval(e.guard, l))
        t.sources_by_target[off + e.dst].push_back(off + e.src);
  }
  std::unique_lock lock(memo_mutex_);
  return letter_memo_.emplace(l, std::move(t)).first->second;
}

GameState GameArena::step_impl(const GameState& s, int x, int y,
                               bool clamped) const {
  const LetterTable& t = table_for(letter_of(x, y));
  GameState out;
  out.v.assign(total_states_, -1);
  bool any_live = false;
  for (int q = 0; q < total_states_; ++q) {
    std::int16_t best = -1;
    for (std::int32_t src : t.sources_by_target[q])
      best = std::max(best, s.v[src]);
    if (best > -1 && rejecting_flat_[q]) best += 1;
    if (clamped) best = std::min<std::int16_t>(best, static_cast<std::int16_t>(k_));
    out.v[q] = best;
    any_live |= best > -1;
  }
  out.all_dead = !any_live;
  return out;
}

GameState GameArena::step(const GameState& s, int x, int y) const {
  return step_impl(s, x, y, false);
}

GameState GameArena::step_clamped(const GameState& s, int x, int y) const {
  return step_impl(s, x, y, true);
}

int GameArena::idx(const GameState& s) {
  std::int16_t m = -1;
  for (std::int16_t e : s.v) m = std::max(m, e);
  return m;
}

double GameArena::potential(const GameState& s) const {
  const int top = idx(s);
  if (top == -1) return 0.0;
  double best = 0.0;
  for (int q = 0; q < total_states_; ++q) {
    if (s.v[q] != top) continue;
    int d = reject_dist_[q];
    if (d != RejectDistance::kInfinite)
      best = std::max(best, 1.0 / (d + 1.0));
  }
  return best;
}

std::vector<std::pair<int, GameState>> GameArena::enabled_successors(
    const GameState& s, int x, bool clamped) const {
  std::vector<std::pair<int, GameState>> out;
  out.reserve(sys_actions());
  for (int y = 0; y < sys_actions(); ++y)
    out.emplace_back(y, step_impl(s, x, y, clamped));
  return out;
}

GameArena build_arena(const Specification& spec, int k, bool decompose_formula,
                      const TranslationBudget& budget) {
  std::vector<LtlPtr> parts =
      decompose_formula ? decompose(spec.formula)
                        : std::vector<LtlPtr>{spec.formula};
  std::vector<Ucw> automata;
  automata.reserve(parts.size());
  for (const LtlPtr& f : parts)
    automata.push_back(ltl_to_ucw(f, spec.ap_names(), budget));
  return GameArena(std::move(automata), spec.env_count(), spec.sys_count(), k);
}

std::string game_state_to_string(const GameState& s) {
  std::ostringstream os;
  os << "<";
  for (size_t i = 0; i < s.v.size(); ++i) {
    if (i) os << ",";
    os << s.v[i];
  }
  os << ">";
  return os.str();
}

namespace {
std::string action_bits(int value, int bits) {
  std::string out;
  for (int i = 0; i < bits; ++i) out += (value >> i & 1) ? '1' : '0';
  return out;
}
}  // namespace

std::string reachable_dot(const GameArena& arena, size_t max_states) {
  std::unordered_map<GameState, int, GameStateHash> id_of;
  std::vector<GameState> states;
  auto intern = [&](GameState s) -> int {
    auto it = id_of.find(s);
    if (it != id_of.end()) return it->second;
    if (states.size() >= max_states) return -1;
    int id = static_cast<int>(states.size());
    id_of.emplace(s, id);
    states.push_back(std::move(s));
    return id;
  };
  std::ostringstream os;
  os << "digraph arena {\n  rankdir=LR;\n  node [shape=box];\n";
  intern(arena.initial_state());
  for (size_t i = 0; i < states.size(); ++i) {
    GameState s = states[i];
    os << "  g" << i << " [label=\"" << game_state_to_string(s) << "\"";
    if (arena.is_losing(s)) os << ", color=red";
    os << "];\n";
    for (int x = 0; x < arena.env_actions(); ++x) {
      for (int y = 0; y < arena.sys_actions(); ++y) {
        int t = intern(arena.step_clamped(s, x, y));
        if (t < 0) {
          os << "  g" << i << " -> cutoff [style=dashed];\n";
          continue;
        }
        os << "  g" << i << " -> g" << t << " [label=\""
           << action_bits(x, arena.env_bits()) << "/"
           << action_bits(y, arena.sys_bits()) << "\"];\n";
      }
    }
  }
  if (states.size() >= max_states)
    os << "  cutoff [shape=plaintext, label=\"...\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace ltlsynth
