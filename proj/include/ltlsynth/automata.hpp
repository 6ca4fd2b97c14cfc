// Universal co-Buchi automata: LTL translation via a Gerth-style tableau for
// the negation followed by dualization, HOA v1 import/export, and the
// rejecting-state distances used by potentials.
#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "ltlsynth/ltl.hpp"

namespace ltlsynth {

// ---------------------------------------------------------------------------
// Edge guards: propositional formulas over letter bits.

struct Guard;
using GuardPtr = std::shared_ptr<const Guard>;

struct Guard {
  enum class Kind : std::uint8_t { True, False, Ap, Not, And, Or };
  Kind kind;
  int ap = -1;
  GuardPtr lhs;
  GuardPtr rhs;
};

GuardPtr g_true();
GuardPtr g_false();
GuardPtr g_ap(int bit);
GuardPtr g_not(GuardPtr g);
GuardPtr g_and(GuardPtr a, GuardPtr b);
GuardPtr g_or(GuardPtr a, GuardPtr b);

bool guard_eval(const GuardPtr& g, Letter l);

/// Satisfiability by enumeration over the mentioned letter bits; returns a
/// conservative `true` when more than `max_bits` distinct bits occur.
bool guard_sat(const GuardPtr& g, int max_bits = 20);

std::string guard_to_string(const GuardPtr& g,
                            const std::vector<std::string>& aps);

// ---------------------------------------------------------------------------
// Automata

struct Edge {
  int src;
  GuardPtr guard;
  int dst;
};

// Nondeterministic Buchi word automaton with formula-labeled edges.
struct Nbw {
  int num_states = 0;
  int initial = 0;
  std::vector<Edge> edges;
  std::vector<char> accepting;  // indexed by state
  std::vector<std::string> ap_names;
};

// Universal co-Buchi word automaton. All construction paths (translation,
// dualization, HOA import) leave the automaton complete: every state has at
// least one enabled edge on every letter.
struct Ucw {
  int num_states = 0;
  int initial = 0;
  std::vector<Edge> edges;
  std::vector<char> rejecting;  // Q_F
  std::vector<std::string> ap_names;

  int rejecting_count() const;
};

struct TranslationBudget {
  int max_states = 4096;
};

/// Tableau translation of an NNF formula into an NBW accepting exactly the
/// satisfying words. Throws BudgetError past the state budget.
Nbw ltl_to_nbw(const LtlPtr& nnf_formula, std::vector<std::string> ap_names,
               const TranslationBudget& budget = {});

/// Adds a non-accepting trap state (when needed) so every (state, letter)
/// pair has a successor. Language-preserving.
void complete_nbw(Nbw& b);

/// Reads the completed NBW of the negation universally: same states and
/// edges, rejecting = accepting. Accepts a lasso iff the NBW rejects it.
Ucw dualize(const Nbw& b);

/// Full pipeline: NNF(!f) -> NBW -> complete -> dualize.
Ucw ltl_to_ucw(const LtlPtr& f, std::vector<std::string> ap_names,
               const TranslationBudget& budget = {});

bool nbw_accepts_lasso(const Nbw& b, const LassoTrace& t);
bool ucw_accepts_lasso(const Ucw& a, const LassoTrace& t);

// ---------------------------------------------------------------------------
// Rejecting-state distances (for the potential function)

struct RejectDistance {
  static constexpr int kInfinite = std::numeric_limits<int>::max();
  // d[q] = length of the shortest edge path of length >= 1 from q to a
  // rejecting state, ignoring labels; kInfinite when none exists.
  std::vector<int> d;
};

RejectDistance reject_distances(const Ucw& a);

// ---------------------------------------------------------------------------
// HOA v1 subset (state-based co-Buchi acceptance, explicit labels)

Ucw parse_hoa(const std::string& text);
std::string emit_hoa(const Ucw& a);

/// Permutes guard AP indices so the automaton follows `target` order.
/// Throws if the automaton mentions an AP not present in `target`.
void align_aps(Ucw& a, const std::vector<std::string>& target);

std::string to_dot(const Ucw& a);
std::string to_dot(const Nbw& b);

}  // namespace ltlsynth
