#include "ltlsynth/controller.hpp"

#include <deque>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ltlsynth {

Controller extract(const GameArena& arena, const Policy& policy,
                   const SolverBudget& budget) {
  Controller c;
  c.env_bits = arena.env_bits();
  c.sys_bits = arena.sys_bits();
  c.initial = 0;

  std::unordered_map<GameState, std::int32_t, GameStateHash> id_of;
  auto intern = [&](GameState s) {
    auto it = id_of.find(s);
    if (it != id_of.end()) return it->second;
    if (c.memory_states.size() >= budget.max_states)
      throw BudgetError("controller extraction exceeded the state budget");
    std::int32_t id = static_cast<std::int32_t>(c.memory_states.size());
    id_of.emplace(s, id);
    c.memory_states.push_back(std::move(s));
    return id;
  };

  intern(arena.initial_state());
  std::deque<std::int32_t> bfs{0};
  while (!bfs.empty()) {
    std::int32_t m = bfs.front();
    bfs.pop_front();
    if (static_cast<size_t>(m) >= c.moves.size())
      c.moves.resize(c.memory_states.size());
    std::vector<Controller::Move> row(arena.env_actions());
    for (int x = 0; x < arena.env_actions(); ++x) {
      GameState s = c.memory_states[m];  // copy: intern may reallocate
      int y = policy(s, x);
      if (y < 0 || y >= arena.sys_actions())
        throw Error("policy returned an out-of-range system action");
      GameState next = arena.step_clamped(s, x, y);
      size_t before = c.memory_states.size();
      std::int32_t t = intern(std::move(next));
      row[x] = {y, t};
      if (c.memory_states.size() > before) bfs.push_back(t);
    }
    c.moves[m] = std::move(row);
  }
  c.moves.resize(c.memory_states.size());
  return c;
}

Controller compact_exact_controller(const GameArena& arena,
                                    const SafeSetResult& fix,
                                    const SolverBudget& budget) {
  Controller best = extract(arena, fix.policy(), budget);
  for (int y = 0; y < arena.sys_actions(); ++y) {
    // The constant response is usable only when its closed loop never
    // leaves the safe set.
    GameState init = arena.initial_state();
    if (!fix.safe_states.count(init)) break;
    std::unordered_set<GameState, GameStateHash> seen{init};
    std::vector<GameState> queue{init};
    bool safe = true;
    for (size_t i = 0; i < queue.size() && safe; ++i) {
      for (int x = 0; x < arena.env_actions(); ++x) {
        GameState t = arena.step_clamped(queue[i], x, y);
        if (!fix.safe_states.count(t)) {
          safe = false;
          break;
        }
        if (seen.insert(t).second) queue.push_back(t);
      }
      if (seen.size() > budget.max_states) safe = false;
    }
    if (!safe) continue;
    Controller candidate =
        extract(arena, [y](const GameState&, int) { return y; }, budget);
    if (candidate.size() < best.size()) best = std::move(candidate);
  }
  return best;
}

VerificationReport verify(const GameArena& arena, const Controller& c, int K,
                          const SolverBudget& budget) {
  VerificationReport report;

  // Product of controller memory with recomputed game states.
  struct Key {
    std::int32_t memory;
    GameState state;
    bool operator==(const Key& o) const {
      return memory == o.memory && state == o.state;
    }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      return GameStateHash()(k.state) * 31 + static_cast<size_t>(k.memory);
    }
  };

  std::unordered_map<Key, std::int32_t, KeyHash> id_of;
  std::vector<Key> nodes;
  std::vector<std::int32_t> parent;  // for counterexample reconstruction
  auto intern = [&](Key k, std::int32_t from) {
    std::int32_t id = static_cast<std::int32_t>(nodes.size());
    id_of.emplace(k, id);
    nodes.push_back(std::move(k));
    parent.push_back(from);
    return id;
  };

  intern(Key{c.initial, arena.initial_state()}, -1);
  std::deque<std::int32_t> bfs{0};

  auto build_play = [&](std::int32_t node) {
    std::vector<GameState> play;
    for (std::int32_t cur = node; cur != -1; cur = parent[cur])
      play.push_back(nodes[cur].state);
    std::reverse(play.begin(), play.end());
    return play;
  };

  if (GameArena::idx(nodes[0].state) >= K) {
    report.status = VerificationReport::Status::Counterexample;
    report.visited_count = 1;
    report.counterexample = build_play(0);
    return report;
  }

  while (!bfs.empty()) {
    std::int32_t id = bfs.front();
    bfs.pop_front();
    const std::int32_t m = nodes[id].memory;
    if (m < 0 || static_cast<size_t>(m) >= c.moves.size() ||
        c.moves[m].size() != static_cast<size_t>(arena.env_actions())) {
      throw Error("controller transition table is not total");
    }
    for (int x = 0; x < arena.env_actions(); ++x) {
      const Controller::Move& mv = c.moves[m][x];
      if (mv.sys_action < 0 || mv.sys_action >= arena.sys_actions())
        throw Error("controller emits an out-of-range system action");
      GameState next = arena.step(nodes[id].state, x, mv.sys_action);
      Key key{mv.next, std::move(next)};
      if (id_of.count(key)) continue;
      if (nodes.size() >= budget.max_states) {
        report.status = VerificationReport::Status::BudgetExceeded;
        report.visited_count = nodes.size();
        return report;
      }
      std::int32_t nid = intern(std::move(key), id);
      if (GameArena::idx(nodes[nid].state) >= K) {
        report.status = VerificationReport::Status::Counterexample;
        report.visited_count = nodes.size();
        report.counterexample = build_play(nid);
        return report;
      }
      bfs.push_back(nid);
    }
  }
  report.status = VerificationReport::Status::Ok;
  report.visited_count = nodes.size();
  return report;
}

namespace {
std::string bits_to_string(int value, int bits) {
  std::string out;
  for (int i = 0; i < bits; ++i) out += (value >> i & 1) ? '1' : '0';
  return out;
}
}  // namespace

std::string export_dot(const Controller& c) {
  std::ostringstream os;
  os << "digraph controller {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  init [shape=point];\n  init -> m" << c.initial << ";\n";
  for (size_t m = 0; m < c.moves.size(); ++m) {
    os << "  m" << m << " [label=\"" << m << "\"];\n";
    for (size_t x = 0; x < c.moves[m].size(); ++x) {
      const Controller::Move& mv = c.moves[m][x];
      os << "  m" << m << " -> m" << mv.next << " [label=\""
         << bits_to_string(static_cast<int>(x), c.env_bits) << "/"
         << bits_to_string(mv.sys_action, c.sys_bits) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string export_json(const Controller& c) {
  nlohmann::json j;
  j["format"] = "ltlsynth-controller";
  j["version"] = 1;
  j["env_bits"] = c.env_bits;
  j["sys_bits"] = c.sys_bits;
  j["initial"] = c.initial;
  nlohmann::json states = nlohmann::json::array();
  for (size_t m = 0; m < c.moves.size(); ++m) {
    nlohmann::json st;
    if (m < c.memory_states.size()) {
      st["game_state"] = c.memory_states[m].v;
    }
    nlohmann::json moves = nlohmann::json::array();
    for (const Controller::Move& mv : c.moves[m])
      moves.push_back({mv.sys_action, mv.next});
    st["moves"] = std::move(moves);
    states.push_back(std::move(st));
  }
  j["states"] = std::move(states);
  return j.dump(2) + "\n";
}

Controller import_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "ltlsynth-controller")
    throw Error("not a controller file");
  if (j.value("version", 0) != 1)
    throw Error("unsupported controller file version");
  Controller c;
  c.env_bits = j.at("env_bits").get<int>();
  c.sys_bits = j.at("sys_bits").get<int>();
  c.initial = j.at("initial").get<int>();
  for (const auto& st : j.at("states")) {
    if (st.contains("game_state")) {
      c.memory_states.push_back(
          make_game_state(st["game_state"].get<std::vector<std::int16_t>>()));
    }
    std::vector<Controller::Move> row;
    for (const auto& mv : st.at("moves"))
      row.push_back({mv.at(0).get<std::int32_t>(), mv.at(1).get<std::int32_t>()});
    if (row.size() != (1u << c.env_bits))
      throw Error("controller moves are not total over env actions");
    c.moves.push_back(std::move(row));
  }
  if (c.initial < 0 || static_cast<size_t>(c.initial) >= c.moves.size())
    throw Error("controller initial state out of range");
  for (const auto& row : c.moves)
    for (const Controller::Move& mv : row)
      if (mv.next < 0 || static_cast<size_t>(mv.next) >= c.moves.size())
        throw Error("controller transition target out of range");
  return c;
}

LassoTrace closed_loop_lasso(const Controller& c,
                             const std::vector<int>& env_prefix,
                             const std::vector<int>& env_cycle) {
  if (env_cycle.empty()) throw Error("environment cycle must be non-empty");
  LassoTrace out;
  std::int32_t m = c.initial;
  for (int x : env_prefix) {
    const Controller::Move& mv = c.moves[m][x];
    out.prefix.push_back(static_cast<Letter>(x) |
                         (static_cast<Letter>(mv.sys_action) << c.env_bits));
    m = mv.next;
  }
  // Run the cycle until (memory, cycle position) repeats.
  std::map<std::pair<std::int32_t, size_t>, size_t> seen;
  std::vector<Letter> emitted;
  size_t pos = 0;
  while (true) {
    auto key = std::make_pair(m, pos);
    auto it = seen.find(key);
    if (it != seen.end()) {
      out.prefix.insert(out.prefix.end(), emitted.begin(),
                        emitted.begin() + it->second);
      out.cycle.assign(emitted.begin() + it->second, emitted.end());
      return out;
    }
    seen.emplace(key, emitted.size());
    const Controller::Move& mv = c.moves[m][env_cycle[pos]];
    emitted.push_back(static_cast<Letter>(env_cycle[pos]) |
                      (static_cast<Letter>(mv.sys_action) << c.env_bits));
    m = mv.next;
    pos = (pos + 1) % env_cycle.size();
  }
}

}  // namespace ltlsynth
