// Mealy controllers extracted from policies, exhaustive closed-loop
// verification against the bound K, and DOT/JSON export.
#pragma once

#include <string>
#include <vector>

#include "ltlsynth/solver.hpp"

namespace ltlsynth {

// Finite-state machine whose memory states store game states; transitions map
// (memory, env action) to (sys action, next memory) and are total over env
// actions.
struct Controller {
  struct Move {
    std::int32_t sys_action;
    std::int32_t next;
  };
  int env_bits = 0;
  int sys_bits = 0;
  int initial = 0;
  std::vector<GameState> memory_states;
  std::vector<std::vector<Move>> moves;  // [memory][env action]

  size_t size() const { return moves.size(); }
};

struct VerificationReport {
  enum class Status { Ok, Counterexample, BudgetExceeded };
  Status status = Status::BudgetExceeded;
  size_t visited_count = 0;
  // Shortest losing play s1..sn with idx(sn) >= K, when status is
  // Counterexample.
  std::vector<GameState> counterexample;

  bool ok() const { return status == Status::Ok; }
};

/// BFS from the initial state under T_k over all env actions, responding per
/// the policy. Memory states are the reached game states deduplicated by
/// value. Throws BudgetError past the state budget.
Controller extract(const GameArena& arena, const Policy& policy,
                   const SolverBudget& budget = {});

/// Reference controller for size reporting: extracts the fixpoint winner and
/// additionally tries every constant-output policy whose closed loop stays
/// inside the safe set, keeping the smallest result. Pure policy selection,
/// no state merging.
Controller compact_exact_controller(const GameArena& arena,
                                    const SafeSetResult& fix,
                                    const SolverBudget& budget = {});

/// Behavioral check of the closed loop: drives the controller as a black box
/// against every env action sequence, recomputing game states with T, and
/// requires idx < K everywhere reached. Budget overruns are reported as a
/// distinct inconclusive status, never as a failure.
VerificationReport verify(const GameArena& arena, const Controller& c, int K,
                          const SolverBudget& budget = {});

std::string export_dot(const Controller& c);
std::string export_json(const Controller& c);
Controller import_json(const std::string& text);

/// Closed-loop trace for an environment-input lasso: runs the controller on
/// prefix.cycle^omega until the joint (memory, cycle position) configuration
/// repeats, producing the ultimately periodic word of full letters.
LassoTrace closed_loop_lasso(const Controller& c,
                             const std::vector<int>& env_prefix,
                             const std::vector<int>& env_cycle);

}  // namespace ltlsynth
