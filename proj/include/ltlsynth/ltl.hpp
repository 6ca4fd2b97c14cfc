// LTL abstract syntax, spec-file parsing, normal forms, and ground-truth
// semantics on ultimately periodic (lasso) traces.
#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltlsynth {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax / semantic error in a spec or HOA file, with 1-based location.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  int line;
  int column;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Propositions and letters

enum class VarKind { Env, Sys };

struct Proposition {
  std::string name;
  VarKind kind = VarKind::Env;
};

// A letter is a truth assignment to all atomic propositions, packed as a bit
// vector: environment variables occupy the low-order bits in declaration
// order, then system variables. This fixes the x||y concatenation bit-exactly.
using Letter = std::uint32_t;

constexpr int kMaxPlayerVars = 16;  // per player; action spaces are 2^n

// ---------------------------------------------------------------------------
// Formulas
//
// Kernel operators only. F, G, ->, <-> are parser sugar expanded at
// construction time; Or and Release stay first-class because negation normal
// form needs them.

enum class LtlOp : std::uint8_t {
  True,
  False,
  Prop,
  Not,
  And,
  Or,
  Next,
  Until,
  Release,
};

struct LtlFormula;
using LtlPtr = std::shared_ptr<const LtlFormula>;

struct LtlFormula {
  LtlOp op;
  int prop = -1;          // letter bit index, for Prop nodes
  std::string prop_name;  // for printing
  LtlPtr lhs;
  LtlPtr rhs;
};

LtlPtr f_true();
LtlPtr f_false();
LtlPtr f_prop(int bit, std::string name);
LtlPtr f_not(LtlPtr f);
LtlPtr f_and(LtlPtr a, LtlPtr b);
LtlPtr f_or(LtlPtr a, LtlPtr b);
LtlPtr f_next(LtlPtr f);
LtlPtr f_until(LtlPtr a, LtlPtr b);
LtlPtr f_release(LtlPtr a, LtlPtr b);

// Sugar: expanded into the kernel.
LtlPtr f_eventually(LtlPtr f);            // true U f
LtlPtr f_always(LtlPtr f);                // false R f
LtlPtr f_implies(LtlPtr a, LtlPtr b);     // !a || b
LtlPtr f_iff(LtlPtr a, LtlPtr b);         // (!a || b) && (!b || a)

bool structurally_equal(const LtlPtr& a, const LtlPtr& b);
std::string to_string(const LtlPtr& f);

/// Negation normal form: negations pushed onto propositions, with Release as
/// the dual of Until. Lasso semantics are preserved.
LtlPtr to_nnf(const LtlPtr& f);

/// Maximal top-level conjunct list; singleton when f is not a conjunction.
std::vector<LtlPtr> decompose(const LtlPtr& f);

// ---------------------------------------------------------------------------
// Specifications

struct Specification {
  std::vector<Proposition> env_vars;  // declaration order = letter bit order
  std::vector<Proposition> sys_vars;
  LtlPtr formula;

  int env_count() const { return static_cast<int>(env_vars.size()); }
  int sys_count() const { return static_cast<int>(sys_vars.size()); }
  int ap_count() const { return env_count() + sys_count(); }
  std::vector<std::string> ap_names() const;
};

// Spec file format:
//   inputs a, b; outputs c; formula G (a -> F c);
// Operators: ! && || -> <-> X U R F G true false. '#' comments to end of line.
// Precedence !,X,F,G > U,R > && > || > ->,<->; binary temporal operators and
// implications associate to the right.
Specification parse_spec(const std::string& text);

/// Parses just an LTL formula against a fixed proposition layout
/// (used by tests and the random-spec tooling).
LtlPtr parse_formula(const std::string& text,
                     const std::vector<Proposition>& env_vars,
                     const std::vector<Proposition>& sys_vars);

// ---------------------------------------------------------------------------
// Lasso traces

// The infinite word prefix . cycle^omega. cycle must be non-empty.
struct LassoTrace {
  std::vector<Letter> prefix;
  std::vector<Letter> cycle;
};

/// Ground-truth satisfaction of f on t, computed per (subformula, position)
/// over the prefix plus one cycle copy, with a least/greatest fixpoint pass
/// over the cycle positions for Until/Release.
bool eval_lasso(const LtlPtr& f, const LassoTrace& t);

std::string letter_to_string(Letter l, const std::vector<std::string>& aps);

}  // namespace ltlsynth
