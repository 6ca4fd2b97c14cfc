#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ltlsynth/controller.hpp"
#include "test_util.hpp"

using namespace ltlsynth;
using namespace ltlsynth::testing;

namespace {

Specification spec_of(const std::string& text) { return parse_spec(text); }

Controller exact_controller(const Specification& spec, int k) {
  GameArena arena = build_arena(spec, k, false);
  SafeSetResult result = solve_fixpoint(arena);
  REQUIRE(result.realizable_at_k);
  return extract(arena, result.policy());
}

const char* kXiffy = "inputs x; outputs y; formula G (x <-> X y);";

}  // namespace

TEST_CASE("extract: formula true collapses to one memory state") {
  Specification spec = spec_of("inputs x; outputs y; formula true;");
  GameArena arena = build_arena(spec, 4, false);
  SafeSetResult result = solve_fixpoint(arena);
  REQUIRE(result.realizable_at_k);
  Controller c = extract(arena, result.policy());
  CHECK(c.size() == 1);
  CHECK(verify(arena, c, 4).ok());
}

TEST_CASE("extract: the running example controller echoes the last input") {
  Specification spec = spec_of(kXiffy);
  GameArena arena = build_arena(spec, 4, false);
  Controller c = exact_controller(spec, 4);
  // Drive random input words; from the second step on the output must equal
  // the previous input.
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    std::int32_t m = c.initial;
    int prev_x = -1;
    for (int step = 0; step < 16; ++step) {
      int x = static_cast<int>(rng() % 2);
      const Controller::Move& mv = c.moves[m][x];
      if (prev_x != -1) CHECK(mv.sys_action == prev_x);
      prev_x = x;
      m = mv.next;
    }
  }
  CHECK(verify(arena, c, 4).ok());
}

TEST_CASE("extract: memory states equal the closed loop's reachable states") {
  Specification spec = spec_of(kXiffy);
  GameArena arena = build_arena(spec, 4, false);
  SafeSetResult result = solve_fixpoint(arena);
  Policy pi = result.policy();
  Controller c = extract(arena, pi);

  // Independent BFS over game states under the same policy.
  std::unordered_set<GameState, GameStateHash> seen{arena.initial_state()};
  std::vector<GameState> queue{arena.initial_state()};
  for (size_t i = 0; i < queue.size(); ++i) {
    GameState s = queue[i];
    for (int x = 0; x < arena.env_actions(); ++x) {
      GameState next = arena.step_clamped(s, x, pi(s, x));
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  CHECK(c.size() == seen.size());
  for (const GameState& s : c.memory_states) CHECK(seen.count(s) == 1);
}

TEST_CASE("verify: the constant-empty controller loses the running example") {
  Specification spec = spec_of(kXiffy);
  GameArena arena = build_arena(spec, 1, false);
  Controller c = extract(arena, [](const GameState&, int) { return 0; });
  VerificationReport report = verify(arena, c, 1);
  REQUIRE_FALSE(report.ok());
  CHECK(report.status == VerificationReport::Status::Counterexample);
  // Env raises x, the empty answer misses X y; the violating run then needs
  // two more steps to hit this automaton's rejecting state.
  REQUIRE(report.counterexample.size() == 4);
  CHECK(GameArena::idx(report.counterexample.back()) >= 1);
  CHECK(GameArena::idx(report.counterexample.front()) == 0);

  // Minimality oracle: no shorter play loses. Enumerate every env word
  // shorter than the counterexample against the same constant controller.
  const size_t n = report.counterexample.size();
  std::vector<std::vector<int>> words{{}};
  for (size_t len = 1; len + 1 < n; ++len) {
    std::vector<std::vector<int>> grown;
    for (const auto& w : words)
      if (w.size() == len - 1)
        for (int x = 0; x < 2; ++x) {
          auto w2 = w;
          w2.push_back(x);
          grown.push_back(w2);
        }
    for (const auto& w : grown) {
      GameState s = arena.initial_state();
      for (int x : w) {
        s = arena.step(s, x, 0);
        REQUIRE(GameArena::idx(s) < 1);
      }
      words.push_back(w);
    }
  }
}

TEST_CASE("verify: any controller satisfies the trivial spec") {
  Specification spec = spec_of("inputs x; outputs y; formula true;");
  GameArena arena = build_arena(spec, 4, false);
  for (int constant : {0, 1}) {
    Controller c =
        extract(arena, [&](const GameState&, int) { return constant; });
    CHECK(verify(arena, c, 4).ok());
  }
}

TEST_CASE("verify: budget exhaustion is inconclusive, not a failure") {
  Specification spec = spec_of(kXiffy);
  GameArena arena = build_arena(spec, 4, false);
  Controller c = exact_controller(spec, 4);
  VerificationReport report = verify(arena, c, 4, SolverBudget{2});
  CHECK(report.status == VerificationReport::Status::BudgetExceeded);
  CHECK_FALSE(report.ok());
}

TEST_CASE("verify: fixpoint winners verify on every realizable fixture") {
  for (const char* text :
       {"inputs x; outputs y; formula G (x <-> X y);",
        "inputs x; outputs y; formula G y;",
        "inputs r; outputs g; formula G (r -> F g);",
        "inputs x; outputs y; formula G (x -> X (y || X y));"}) {
    Specification spec = spec_of(text);
    GameArena arena = build_arena(spec, 4, false);
    SafeSetResult result = solve_fixpoint(arena);
    REQUIRE(result.realizable_at_k);
    Controller c = extract(arena, result.policy());
    CHECK(verify(arena, c, 4).ok());
  }
}

TEST_CASE("export_dot: one edge per (memory state, env action)") {
  Specification spec = spec_of("inputs x; outputs y; formula true;");
  GameArena arena = build_arena(spec, 4, false);
  Controller c = extract(arena, solve_fixpoint(arena).policy());
  REQUIRE(c.size() == 1);
  std::string dot = export_dot(c);
  size_t edges = 0;
  for (size_t pos = dot.find("m0 -> "); pos != std::string::npos;
       pos = dot.find("m0 -> ", pos + 1))
    ++edges;
  CHECK(edges == 2);  // 2^|X|
  CHECK(export_dot(c) == dot);  // deterministic
}

TEST_CASE("export_json round-trips to an isomorphic controller") {
  Specification spec = spec_of(kXiffy);
  Controller c = exact_controller(spec, 4);
  std::string json = export_json(c);
  Controller back = import_json(json);
  CHECK(back.size() == c.size());
  CHECK(back.initial == c.initial);
  CHECK(back.env_bits == c.env_bits);
  for (size_t m = 0; m < c.moves.size(); ++m)
    for (size_t x = 0; x < c.moves[m].size(); ++x) {
      CHECK(back.moves[m][x].sys_action == c.moves[m][x].sys_action);
      CHECK(back.moves[m][x].next == c.moves[m][x].next);
    }
  CHECK(export_json(back) == json);
}

TEST_CASE("import_json rejects malformed controllers") {
  CHECK_THROWS_AS(import_json("{}"), Error);
  Specification spec = spec_of(kXiffy);
  Controller c = exact_controller(spec, 4);
  std::string json = export_json(c);
  // A transition pointing past the state count must be caught.
  std::string broken = json;
  size_t pos = broken.rfind("\"initial\": 0");
  REQUIRE(pos != std::string::npos);
  broken.replace(pos, 12, "\"initial\": 99");
  CHECK_THROWS_AS(import_json(broken), Error);
}

TEST_CASE("tampered transitions are caught by verification") {
  Specification spec = spec_of(kXiffy);
  GameArena arena = build_arena(spec, 4, false);
  Controller c = exact_controller(spec, 4);
  REQUIRE(verify(arena, c, 4).ok());
  // Flip every output on one memory state.
  Controller tampered = c;
  for (auto& mv : tampered.moves[1]) mv.sys_action ^= 1;
  CHECK_FALSE(verify(arena, tampered, 4).ok());
}

TEST_CASE("compact_exact_controller: constant-output candidates shrink "
          "procrastinating strategies") {
  // For the two-step response spec the fixpoint policy may wander through
  // pending states; the constant-grant policy is safe and smaller.
  Specification spec =
      spec_of("inputs x; outputs y; formula G (x -> X (y || X y));");
  GameArena arena = build_arena(spec, 1, false);
  SafeSetResult fix = solve_fixpoint(arena);
  REQUIRE(fix.realizable_at_k);
  Controller plain = extract(arena, fix.policy());
  Controller compact = compact_exact_controller(arena, fix);
  CHECK(compact.size() <= plain.size());
  CHECK(compact.size() == 5);
  CHECK(verify(arena, compact, 1).ok());
  CHECK(verify(arena, compact, 4).ok());

  // Where no constant output is winning, the fixpoint extraction stands.
  Specification mirror = spec_of(kXiffy);
  GameArena arena2 = build_arena(mirror, 1, false);
  SafeSetResult fix2 = solve_fixpoint(arena2);
  Controller compact2 = compact_exact_controller(arena2, fix2);
  CHECK(compact2.size() == extract(arena2, fix2.policy()).size());
  CHECK(verify(arena2, compact2, 1).ok());
}

TEST_CASE("closed_loop_lasso: end-to-end soundness on the running example") {
  Specification spec = spec_of(kXiffy);
  GameArena arena = build_arena(spec, 4, false);
  Controller c = exact_controller(spec, 4);
  REQUIRE(verify(arena, c, 4).ok());
  // Every environment lasso with |prefix|, |cycle| <= 3 yields a closed-loop
  // trace satisfying the original formula.
  for (const auto& env_word : enumerate_lassos(1, 3, 3)) {
    std::vector<int> prefix(env_word.prefix.begin(), env_word.prefix.end());
    std::vector<int> cycle(env_word.cycle.begin(), env_word.cycle.end());
    LassoTrace closed = closed_loop_lasso(c, prefix, cycle);
    REQUIRE(eval_lasso(spec.formula, closed));
  }
}

TEST_CASE("closed_loop_lasso: trace letters embed the environment inputs") {
  Specification spec = spec_of(kXiffy);
  Controller c = exact_controller(spec, 4);
  LassoTrace t = closed_loop_lasso(c, {1, 0}, {1});
  REQUIRE(t.prefix.size() >= 2);
  CHECK((t.prefix[0] & 1u) == 1u);
  CHECK((t.prefix[1] & 1u) == 0u);
  for (Letter l : t.cycle) CHECK((l & 1u) == 1u);
}
