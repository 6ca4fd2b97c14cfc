#include "ltlsynth/ltl.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ltlsynth {

// ---------------------------------------------------------------------------
// Construction

namespace {
LtlPtr make(LtlOp op, LtlPtr lhs = nullptr, LtlPtr rhs = nullptr) {
  auto f = std::make_shared<LtlFormula>();
  f->op = op;
  f->lhs = std::move(lhs);
  f->rhs = std::move(rhs);
  return f;
}
}  // namespace

LtlPtr f_true() {
  static const LtlPtr t = make(LtlOp::True);
  return t;
}

LtlPtr f_false() {
  static const LtlPtr f = make(LtlOp::False);
  return f;
}

LtlPtr f_prop(int bit, std::string name) {
  auto f = std::make_shared<LtlFormula>();
  f->op = LtlOp::Prop;
  f->prop = bit;
  f->prop_name = std::move(name);
  return f;
}

LtlPtr f_not(LtlPtr f) { return make(LtlOp::Not, std::move(f)); }
LtlPtr f_and(LtlPtr a, LtlPtr b) {
  return make(LtlOp::And, std::move(a), std::move(b));
}
LtlPtr f_or(LtlPtr a, LtlPtr b) {
  return make(LtlOp::Or, std::move(a), std::move(b));
}
LtlPtr f_next(LtlPtr f) { return make(LtlOp::Next, std::move(f)); }
LtlPtr f_until(LtlPtr a, LtlPtr b) {
  return make(LtlOp::Until, std::move(a), std::move(b));
}
LtlPtr f_release(LtlPtr a, LtlPtr b) {
  return make(LtlOp::Release, std::move(a), std::move(b));
}

LtlPtr f_eventually(LtlPtr f) { return f_until(f_true(), std::move(f)); }
LtlPtr f_always(LtlPtr f) { return f_release(f_false(), std::move(f)); }
LtlPtr f_implies(LtlPtr a, LtlPtr b) {
  return f_or(f_not(std::move(a)), std::move(b));
}
LtlPtr f_iff(LtlPtr a, LtlPtr b) {
  return f_and(f_implies(a, b), f_implies(b, a));
}

bool structurally_equal(const LtlPtr& a, const LtlPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->op != b->op) return false;
  if (a->op == LtlOp::Prop) return a->prop == b->prop;
  if (a->lhs && !structurally_equal(a->lhs, b->lhs)) return false;
  if (!a->lhs != !b->lhs) return false;
  if (a->rhs && !structurally_equal(a->rhs, b->rhs)) return false;
  if (!a->rhs != !b->rhs) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Printing

namespace {
int precedence(LtlOp op) {
  switch (op) {
    case LtlOp::True:
    case LtlOp::False:
    case LtlOp::Prop:
      return 5;
    case LtlOp::Not:
    case LtlOp::Next:
      return 4;
    case LtlOp::Until:
    case LtlOp::Release:
      return 3;
    case LtlOp::And:
      return 2;
    case LtlOp::Or:
      return 1;
  }
  return 0;
}

void print(std::ostream& os, const LtlPtr& f, int parent_prec) {
  const int prec = precedence(f->op);
  const bool parens = prec < parent_prec;
  if (parens) os << '(';
  switch (f->op) {
    case LtlOp::True:
      os << "true";
      break;
    case LtlOp::False:
      os << "false";
      break;
    case LtlOp::Prop:
      os << (f->prop_name.empty() ? "p" + std::to_string(f->prop)
                                  : f->prop_name);
      break;
    case LtlOp::Not:
      os << '!';
      print(os, f->lhs, prec + 1);
      break;
    case LtlOp::Next:
      os << "X ";
      print(os, f->lhs, prec);
      break;
    case LtlOp::And:
      print(os, f->lhs, prec);
      os << " && ";
      print(os, f->rhs, prec);
      break;
    case LtlOp::Or:
      print(os, f->lhs, prec);
      os << " || ";
      print(os, f->rhs, prec);
      break;
    case LtlOp::Until:
      print(os, f->lhs, prec + 1);
      os << " U ";
      print(os, f->rhs, prec);
      break;
    case LtlOp::Release:
      print(os, f->lhs, prec + 1);
      os << " R ";
      print(os, f->rhs, prec);
      break;
  }
  if (parens) os << ')';
}
}  // namespace

std::string to_string(const LtlPtr& f) {
  std::ostringstream os;
  print(os, f, 0);
  return os.str();
}

std::string letter_to_string(Letter l, const std::vector<std::string>& aps) {
  std::string out = "{";
  bool first = true;
  for (size_t i = 0; i < aps.size(); ++i) {
    if (l >> i & 1u) {
      if (!first) out += ",";
      out += aps[i];
      first = false;
    }
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Negation normal form

namespace {
LtlPtr nnf_pos(const LtlPtr& f);

LtlPtr nnf_neg(const LtlPtr& f) {
  switch (f->op) {
    case LtlOp::True:
      return f_false();
    case LtlOp::False:
      return f_true();
    case LtlOp::Prop:
      return f_not(f);
    case LtlOp::Not:
      return nnf_pos(f->lhs);
    case LtlOp::And:
      return f_or(nnf_neg(f->lhs), nnf_neg(f->rhs));
    case LtlOp::Or:
      return f_and(nnf_neg(f->lhs), nnf_neg(f->rhs));
    case LtlOp::Next:
      return f_next(nnf_neg(f->lhs));
    case LtlOp::Until:
      return f_release(nnf_neg(f->lhs), nnf_neg(f->rhs));
    case LtlOp::Release:
      return f_until(nnf_neg(f->lhs), nnf_neg(f->rhs));
  }
  assert(false);
  return nullptr;
}

LtlPtr nnf_pos(const LtlPtr& f) {
  switch (f->op) {
    case LtlOp::True:
    case LtlOp::False:
    case LtlOp::Prop:
      return f;
    case LtlOp::Not:
      return nnf_neg(f->lhs);
    case LtlOp::And:
      return f_and(nnf_pos(f->lhs), nnf_pos(f->rhs));
    case LtlOp::Or:
      return f_or(nnf_pos(f->lhs), nnf_pos(f->rhs));
    case LtlOp::Next:
      return f_next(nnf_pos(f->lhs));
    case LtlOp::Until:
      return f_until(nnf_pos(f->lhs), nnf_pos(f->rhs));
    case LtlOp::Release:
      return f_release(nnf_pos(f->lhs), nnf_pos(f->rhs));
  }
  assert(false);
  return nullptr;
}
}  // namespace

LtlPtr to_nnf(const LtlPtr& f) { return nnf_pos(f); }

std::vector<LtlPtr> decompose(const LtlPtr& f) {
  std::vector<LtlPtr> out;
  std::vector<LtlPtr> stack{f};
  while (!stack.empty()) {
    LtlPtr g = stack.back();
    stack.pop_back();
    if (g->op == LtlOp::And) {
      // Right child pushed first so conjuncts come out left to right.
      stack.push_back(g->rhs);
      stack.push_back(g->lhs);
    } else {
      out.push_back(g);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lasso evaluation
//
// Satisfaction is computed for every subformula over positions
// 0 .. |prefix|+|cycle|-1, where the successor of the last cycle position
// wraps to the first. Until is the least fixpoint of
//   sat(i) = g(i) or (f(i) and sat(succ(i)))
// over the cycle positions and Release the greatest fixpoint of its dual;
// both are exact on ultimately periodic words.

namespace {

class LassoEvaluator {
 public:
  explicit LassoEvaluator(const LassoTrace& t) : t_(t) {
    if (t.cycle.empty()) throw Error("lasso cycle must be non-empty");
    p_ = t.prefix.size();
    n_ = p_ + t.cycle.size();
  }

  const std::vector<char>& eval(const LtlPtr& f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;
    std::vector<char> sat(n_, 0);
    switch (f->op) {
      case LtlOp::True:
        std::fill(sat.begin(), sat.end(), 1);
        break;
      case LtlOp::False:
        break;
      case LtlOp::Prop:
        for (size_t i = 0; i < n_; ++i) sat[i] = (letter(i) >> f->prop) & 1u;
        break;
      case LtlOp::Not: {
        const auto& a = eval(f->lhs);
        for (size_t i = 0; i < n_; ++i) sat[i] = !a[i];
        break;
      }
      case LtlOp::And: {
        const auto& a = eval(f->lhs);
        const auto& b = eval(f->rhs);
        for (size_t i = 0; i < n_; ++i) sat[i] = a[i] && b[i];
        break;
      }
      case LtlOp::Or: {
        const auto& a = eval(f->lhs);
        const auto& b = eval(f->rhs);
        for (size_t i = 0; i < n_; ++i) sat[i] = a[i] || b[i];
        break;
      }
      case LtlOp::Next: {
        const auto& a = eval(f->lhs);
        for (size_t i = 0; i < n_; ++i) sat[i] = a[succ(i)];
        break;
      }
      case LtlOp::Until: {
        const auto& a = eval(f->lhs);
        const auto& b = eval(f->rhs);
        fixpoint(sat, a, b, /*least=*/true);
        break;
      }
      case LtlOp::Release: {
        const auto& a = eval(f->lhs);
        const auto& b = eval(f->rhs);
        fixpoint(sat, a, b, /*least=*/false);
        break;
      }
    }
    return memo_.emplace(f.get(), std::move(sat)).first->second;
  }

 private:
  Letter letter(size_t i) const {
    return i < p_ ? t_.prefix[i] : t_.cycle[i - p_];
  }
  size_t succ(size_t i) const { return i + 1 < n_ ? i + 1 : p_; }

  void fixpoint(std::vector<char>& sat, const std::vector<char>& a,
                const std::vector<char>& b, bool least) {
    // Cycle positions first: least fixpoint starts from false, greatest
    // from true; both converge within |cycle| sweeps.
    for (size_t i = p_; i < n_; ++i) sat[i] = !least;
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = n_; i-- > p_;) {
        char v = least ? (b[i] || (a[i] && sat[succ(i)]))
                       : (b[i] && (a[i] || sat[succ(i)]));
        if (v != sat[i]) {
          sat[i] = v;
          changed = true;
        }
      }
    }
    // Prefix positions follow by backward recursion.
    for (size_t i = p_; i-- > 0;) {
      sat[i] = least ? (b[i] || (a[i] && sat[i + 1]))
                     : (b[i] && (a[i] || sat[i + 1]));
    }
  }

  const LassoTrace& t_;
  size_t p_ = 0;
  size_t n_ = 0;
  std::unordered_map<const LtlFormula*, std::vector<char>> memo_;
};

}  // namespace

bool eval_lasso(const LtlPtr& f, const LassoTrace& t) {
  LassoEvaluator ev(t);
  return ev.eval(f)[0] != 0;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok {
  End,
  Ident,
  Semicolon,
  Comma,
  LParen,
  RParen,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  Until,
  Release,
  Eventually,
  Always,
  True,
  False,
  KwInputs,
  KwOutputs,
  KwFormula,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_ws();
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return {Tok::End, "", line, col};
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        word += text_[pos_];
        advance();
      }
      static const std::map<std::string, Tok> kw = {
          {"X", Tok::Next},        {"U", Tok::Until},
          {"R", Tok::Release},     {"F", Tok::Eventually},
          {"G", Tok::Always},      {"true", Tok::True},
          {"false", Tok::False},   {"inputs", Tok::KwInputs},
          {"outputs", Tok::KwOutputs}, {"formula", Tok::KwFormula},
      };
      auto it = kw.find(word);
      return {it == kw.end() ? Tok::Ident : it->second, word, line, col};
    }
    switch (c) {
      case ';':
        advance();
        return {Tok::Semicolon, ";", line, col};
      case ',':
        advance();
        return {Tok::Comma, ",", line, col};
      case '(':
        advance();
        return {Tok::LParen, "(", line, col};
      case ')':
        advance();
        return {Tok::RParen, ")", line, col};
      case '!':
        advance();
        return {Tok::Not, "!", line, col};
      case '&':
        advance();
        expect_char('&', line, col);
        return {Tok::And, "&&", line, col};
      case '|':
        advance();
        expect_char('|', line, col);
        return {Tok::Or, "||", line, col};
      case '-':
        advance();
        expect_char('>', line, col);
        return {Tok::Implies, "->", line, col};
      case '<':
        advance();
        expect_char('-', line, col);
        expect_char('>', line, col);
        return {Tok::Iff, "<->", line, col};
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line,
                         col);
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void expect_char(char c, int line, int col) {
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(std::string("malformed operator, expected '") + c + "'",
                       line, col);
    advance();
  }
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) { shift(); }

  Specification parse_spec_file() {
    Specification spec;
    expect(Tok::KwInputs, "expected 'inputs' section");
    parse_var_list(spec.env_vars, VarKind::Env);
    if (cur_.kind != Tok::KwOutputs)
      throw ParseError("missing outputs section", cur_.line, cur_.column);
    shift();
    parse_var_list(spec.sys_vars, VarKind::Sys);
    index_vars(spec);
    expect(Tok::KwFormula, "expected 'formula' section");
    spec.formula = parse_formula_expr();
    expect(Tok::Semicolon, "expected ';' after formula");
    expect(Tok::End, "trailing input after specification");
    return spec;
  }

  LtlPtr parse_bare_formula(const std::vector<Proposition>& env,
                            const std::vector<Proposition>& sys) {
    Specification spec;
    spec.env_vars = env;
    spec.sys_vars = sys;
    index_vars(spec);
    LtlPtr f = parse_formula_expr();
    expect(Tok::End, "trailing input after formula");
    return f;
  }

 private:
  void shift() { cur_ = lexer_.next(); }

  void expect(Tok kind, const char* msg) {
    if (cur_.kind != kind) throw ParseError(msg, cur_.line, cur_.column);
    shift();
  }

  void parse_var_list(std::vector<Proposition>& out, VarKind kind) {
    while (cur_.kind == Tok::Ident) {
      out.push_back({cur_.text, kind});
      shift();
      if (cur_.kind != Tok::Comma) break;
      shift();
      if (cur_.kind != Tok::Ident)
        throw ParseError("expected a variable name after ','", cur_.line,
                         cur_.column);
    }
    expect(Tok::Semicolon, "expected ';' after variable list");
  }

  void index_vars(const Specification& spec) {
    vars_.clear();
    int bit = 0;
    for (const auto& v : spec.env_vars) add_var(v.name, bit++);
    for (const auto& v : spec.sys_vars) add_var(v.name, bit++);
  }

  void add_var(const std::string& name, int bit) {
    if (!vars_.emplace(name, bit).second)
      throw ParseError("duplicate declaration of '" + name + "'", cur_.line,
                       cur_.column);
  }

  // implication level; right-associative, lowest precedence
  LtlPtr parse_formula_expr() {
    LtlPtr lhs = parse_or();
    if (cur_.kind == Tok::Implies) {
      shift();
      return f_implies(lhs, parse_formula_expr());
    }
    if (cur_.kind == Tok::Iff) {
      shift();
      return f_iff(lhs, parse_formula_expr());
    }
    return lhs;
  }

  LtlPtr parse_or() {
    LtlPtr lhs = parse_and();
    while (cur_.kind == Tok::Or) {
      shift();
      lhs = f_or(lhs, parse_and());
    }
    return lhs;
  }

  LtlPtr parse_and() {
    LtlPtr lhs = parse_temporal();
    while (cur_.kind == Tok::And) {
      shift();
      lhs = f_and(lhs, parse_temporal());
    }
    return lhs;
  }

  // U and R, right-associative
  LtlPtr parse_temporal() {
    LtlPtr lhs = parse_unary();
    if (cur_.kind == Tok::Until) {
      shift();
      return f_until(lhs, parse_temporal());
    }
    if (cur_.kind == Tok::Release) {
      shift();
      return f_release(lhs, parse_temporal());
    }
    return lhs;
  }

  LtlPtr parse_unary() {
    switch (cur_.kind) {
      case Tok::Not:
        shift();
        return f_not(parse_unary());
      case Tok::Next:
        shift();
        return f_next(parse_unary());
      case Tok::Eventually:
        shift();
        return f_eventually(parse_unary());
      case Tok::Always:
        shift();
        return f_always(parse_unary());
      default:
        return parse_atom();
    }
  }

  LtlPtr parse_atom() {
    switch (cur_.kind) {
      case Tok::True:
        shift();
        return f_true();
      case Tok::False:
        shift();
        return f_false();
      case Tok::LParen: {
        shift();
        LtlPtr f = parse_formula_expr();
        expect(Tok::RParen, "expected ')'");
        return f;
      }
      case Tok::Ident: {
        auto it = vars_.find(cur_.text);
        if (it == vars_.end())
          throw ParseError("undeclared proposition '" + cur_.text + "'",
                           cur_.line, cur_.column);
        LtlPtr f = f_prop(it->second, cur_.text);
        shift();
        return f;
      }
      default:
        throw ParseError("expected a formula", cur_.line, cur_.column);
    }
  }

  Lexer lexer_;
  Token cur_{Tok::End, "", 0, 0};
  std::unordered_map<std::string, int> vars_;
};

}  // namespace

Specification parse_spec(const std::string& text) {
  Parser p(text);
  Specification spec = p.parse_spec_file();
  if (spec.env_count() > kMaxPlayerVars || spec.sys_count() > kMaxPlayerVars)
    throw Error("too many variables: at most " +
                std::to_string(kMaxPlayerVars) + " per player");
  return spec;
}

LtlPtr parse_formula(const std::string& text,
                     const std::vector<Proposition>& env_vars,
                     const std::vector<Proposition>& sys_vars) {
  Parser p(text);
  return p.parse_bare_formula(env_vars, sys_vars);
}

std::vector<std::string> Specification::ap_names() const {
  std::vector<std::string> out;
  out.reserve(env_vars.size() + sys_vars.size());
  for (const auto& v : env_vars) out.push_back(v.name);
  for (const auto& v : sys_vars) out.push_back(v.name);
  return out;
}

}  // namespace ltlsynth
