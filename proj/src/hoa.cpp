// HOA v1 subset: state-based co-Buchi acceptance (`1 Fin(0)`), explicit
// edge labels, one edge per line.
#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "ltlsynth/automata.hpp"

namespace ltlsynth {

namespace {

// Forward-declared in automata.cpp; reproduced here for the import path.
void complete_ucw(Ucw& a) {
  GuardPtr covered;
  std::vector<Edge> additions;
  for (int q = 0; q < a.num_states; ++q) {
    covered = g_false();
    for (const Edge& e : a.edges)
      if (e.src == q) covered = g_or(covered, e.guard);
    GuardPtr missing = g_not(covered);
    if (guard_sat(missing)) additions.push_back({q, missing, -1});
  }
  if (additions.empty()) return;
  const int trap = a.num_states;
  for (Edge& e : additions) e.dst = trap;
  a.num_states += 1;
  a.edges.insert(a.edges.end(), additions.begin(), additions.end());
  a.edges.push_back({trap, g_true(), trap});
  a.rejecting.push_back(0);  // non-rejecting sink: language unchanged
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Label expressions: 't' | 'f' | INT | '!' expr | expr '&' expr |
// expr '|' expr | '(' expr ')'
class LabelParser {
 public:
  LabelParser(const std::string& text, int line) : text_(text), line_(line) {}

  GuardPtr parse() {
    GuardPtr g = parse_or();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("trailing characters in label expression", line_, 1);
    return g;
  }

 private:
  GuardPtr parse_or() {
    GuardPtr g = parse_and();
    while (peek() == '|') {
      ++pos_;
      g = g_or(g, parse_and());
    }
    return g;
  }
  GuardPtr parse_and() {
    GuardPtr g = parse_unary();
    while (peek() == '&') {
      ++pos_;
      g = g_and(g, parse_unary());
    }
    return g;
  }
  GuardPtr parse_unary() {
    char c = peek();
    if (c == '!') {
      ++pos_;
      return g_not(parse_unary());
    }
    if (c == '(') {
      ++pos_;
      GuardPtr g = parse_or();
      if (peek() != ')')
        throw ParseError("expected ')' in label expression", line_, 1);
      ++pos_;
      return g;
    }
    if (c == 't') {
      ++pos_;
      return g_true();
    }
    if (c == 'f') {
      ++pos_;
      return g_false();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      int v = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        v = v * 10 + (text_[pos_] - '0');
        ++pos_;
      }
      return g_ap(v);
    }
    throw ParseError("malformed label expression", line_, 1);
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(
                                      text_[pos_])))
      ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_;
};

std::vector<std::string> parse_quoted_list(const std::string& s, int line) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t b = s.find('"', pos);
    if (b == std::string::npos) break;
    size_t e = s.find('"', b + 1);
    if (e == std::string::npos)
      throw ParseError("unterminated string", line, static_cast<int>(b + 1));
    out.push_back(s.substr(b + 1, e - b - 1));
    pos = e + 1;
  }
  return out;
}

}  // namespace

Ucw parse_hoa(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;

  Ucw a;
  int declared_states = -1;
  bool saw_start = false, saw_acceptance = false, in_body = false,
       saw_end = false;
  int ap_count = -1;
  int current_state = -1;
  std::vector<char> state_defined;

  auto ensure_states = [&](int line) {
    if (declared_states < 0)
      throw ParseError("missing States: header", line, 1);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    // Strip /* ... */ comments that fit on one line; the emitter never
    // produces multi-line ones.
    std::string line = raw;
    size_t cb = line.find("/*");
    if (cb != std::string::npos) {
      size_t ce = line.find("*/", cb + 2);
      if (ce == std::string::npos)
        throw ParseError("unterminated comment", line_no, static_cast<int>(cb));
      line = line.substr(0, cb) + line.substr(ce + 2);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (!in_body) {
      if (line == "--BODY--") {
        if (!saw_acceptance)
          throw ParseError("missing Acceptance: header", line_no, 1);
        ensure_states(line_no);
        if (!saw_start)
          throw ParseError("missing Start: header", line_no, 1);
        if (ap_count < 0)
          throw ParseError("missing AP: header", line_no, 1);
        state_defined.assign(declared_states, 0);
        a.num_states = declared_states;
        a.rejecting.assign(declared_states, 0);
        in_body = true;
        continue;
      }
      size_t colon = line.find(':');
      if (colon == std::string::npos)
        throw ParseError("malformed header line", line_no, 1);
      std::string key = trim(line.substr(0, colon));
      std::string value = trim(line.substr(colon + 1));
      if (key == "HOA") {
        if (value != "v1")
          throw ParseError("unsupported HOA version '" + value + "'", line_no,
                           1);
      } else if (key == "States") {
        declared_states = std::stoi(value);
        if (declared_states < 0)
          throw ParseError("negative state count", line_no, 1);
      } else if (key == "Start") {
        if (saw_start)
          throw ParseError("multiple Start: headers are not supported",
                           line_no, 1);
        if (value.find('&') != std::string::npos ||
            value.find(' ') != std::string::npos)
          throw ParseError("only a single initial state is supported", line_no,
                           1);
        a.initial = std::stoi(value);
        saw_start = true;
      } else if (key == "AP") {
        std::istringstream vs(value);
        vs >> ap_count;
        if (!vs || ap_count < 0)
          throw ParseError("malformed AP: header", line_no, 1);
        a.ap_names = parse_quoted_list(value, line_no);
        if (static_cast<int>(a.ap_names.size()) != ap_count)
          throw ParseError("AP count does not match the listed names", line_no,
                           1);
      } else if (key == "Acceptance") {
        std::string squashed;
        for (char c : value)
          if (!std::isspace(static_cast<unsigned char>(c))) squashed += c;
        if (squashed != "1Fin(0)")
          throw ParseError(
              "unsupported acceptance condition '" + value +
                  "' (need co-Buchi: 1 Fin(0))",
              line_no, 1);
        saw_acceptance = true;
      } else if (key == "acc-name") {
        if (value.substr(0, 8) != "co-Buchi")
          throw ParseError("unsupported acc-name '" + value +
                               "' (need co-Buchi)",
                           line_no, 1);
      }
      // Other headers (tool:, name:, properties:, ...) are ignored.
      continue;
    }

    if (line == "--END--") {
      saw_end = true;
      break;
    }
    if (line.rfind("State:", 0) == 0) {
      std::string rest = trim(line.substr(6));
      // Optional trailing {sets} and quoted name.
      bool rejecting = false;
      size_t brace = rest.find('{');
      if (brace != std::string::npos) {
        size_t close = rest.find('}', brace);
        if (close == std::string::npos)
          throw ParseError("unterminated acceptance sets", line_no, 1);
        std::string sets = trim(rest.substr(brace + 1, close - brace - 1));
        if (!sets.empty()) {
          if (sets != "0")
            throw ParseError("unsupported acceptance set '" + sets + "'",
                             line_no, 1);
          rejecting = true;
        }
        rest = trim(rest.substr(0, brace));
      }
      size_t quote = rest.find('"');
      if (quote != std::string::npos) rest = trim(rest.substr(0, quote));
      if (rest.empty() || rest[0] == '[')
        throw ParseError("state-based acceptance requires a state index",
                         line_no, 1);
      current_state = std::stoi(rest);
      if (current_state < 0 || current_state >= declared_states)
        throw ParseError("state index out of range", line_no, 1);
      if (state_defined[current_state])
        throw ParseError("state defined twice", line_no, 1);
      state_defined[current_state] = 1;
      a.rejecting[current_state] = rejecting ? 1 : 0;
      continue;
    }
    if (line[0] == '[') {
      if (current_state < 0)
        throw ParseError("edge before any State: line", line_no, 1);
      size_t close = line.find(']');
      if (close == std::string::npos)
        throw ParseError("unterminated label", line_no, 1);
      std::string expr = line.substr(1, close - 1);
      std::string target = trim(line.substr(close + 1));
      if (target.empty() ||
          target.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("expected a single integer edge target", line_no, 1);
      int dst = std::stoi(target);
      if (dst < 0 || dst >= declared_states)
        throw ParseError("edge target out of range", line_no, 1);
      GuardPtr g = LabelParser(expr, line_no).parse();
      // Reject labels that mention APs beyond the declared alphabet.
      std::vector<const Guard*> stack{g.get()};
      while (!stack.empty()) {
        const Guard* cur = stack.back();
        stack.pop_back();
        if (cur->kind == Guard::Kind::Ap && cur->ap >= ap_count)
          throw ParseError("label references undeclared AP", line_no, 1);
        if (cur->lhs) stack.push_back(cur->lhs.get());
        if (cur->rhs) stack.push_back(cur->rhs.get());
      }
      a.edges.push_back({current_state, g, dst});
      continue;
    }
    throw ParseError("implicit labels are not supported (expected '[label] "
                     "target')",
                     line_no, 1);
  }
  if (!in_body) throw ParseError("missing --BODY--", line_no, 1);
  if (!saw_end) throw ParseError("missing --END--", line_no, 1);
  if (a.initial < 0 || a.initial >= a.num_states)
    throw ParseError("initial state out of range", line_no, 1);
  complete_ucw(a);
  return a;
}

namespace {
std::string guard_to_hoa(const GuardPtr& g) {
  switch (g->kind) {
    case Guard::Kind::True:
      return "t";
    case Guard::Kind::False:
      return "f";
    case Guard::Kind::Ap:
      return std::to_string(g->ap);
    case Guard::Kind::Not:
      return "!" + (g->lhs->kind == Guard::Kind::Ap ||
                            g->lhs->kind == Guard::Kind::True ||
                            g->lhs->kind == Guard::Kind::False
                        ? guard_to_hoa(g->lhs)
                        : "(" + guard_to_hoa(g->lhs) + ")");
    case Guard::Kind::And:
      return "(" + guard_to_hoa(g->lhs) + " & " + guard_to_hoa(g->rhs) + ")";
    case Guard::Kind::Or:
      return "(" + guard_to_hoa(g->lhs) + " | " + guard_to_hoa(g->rhs) + ")";
  }
  return "f";
}
}  // namespace

std::string emit_hoa(const Ucw& a) {
  std::ostringstream os;
  os << "HOA: v1\n";
  os << "tool: \"ltlsynth\"\n";
  os << "States: " << a.num_states << "\n";
  os << "Start: " << a.initial << "\n";
  os << "AP: " << a.ap_names.size();
  for (const auto& name : a.ap_names) os << " \"" << name << "\"";
  os << "\n";
  os << "acc-name: co-Buchi\n";
  os << "Acceptance: 1 Fin(0)\n";
  os << "properties: trans-labels explicit-labels state-acc\n";
  os << "--BODY--\n";
  for (int q = 0; q < a.num_states; ++q) {
    os << "State: " << q;
    if (a.rejecting[q]) os << " {0}";
    os << "\n";
    for (const Edge& e : a.edges)
      if (e.src == q) os << "[" << guard_to_hoa(e.guard) << "] " << e.dst
                         << "\n";
  }
  os << "--END--\n";
  return os.str();
}

namespace {
GuardPtr remap_guard(const GuardPtr& g, const std::vector<int>& map) {
  switch (g->kind) {
    case Guard::Kind::True:
    case Guard::Kind::False:
      return g;
    case Guard::Kind::Ap:
      return g_ap(map[g->ap]);
    case Guard::Kind::Not:
      return g_not(remap_guard(g->lhs, map));
    case Guard::Kind::And:
      return g_and(remap_guard(g->lhs, map), remap_guard(g->rhs, map));
    case Guard::Kind::Or:
      return g_or(remap_guard(g->lhs, map), remap_guard(g->rhs, map));
  }
  return g;
}
}  // namespace

void align_aps(Ucw& a, const std::vector<std::string>& target) {
  std::unordered_map<std::string, int> pos;
  for (size_t i = 0; i < target.size(); ++i)
    pos.emplace(target[i], static_cast<int>(i));
  std::vector<int> map(a.ap_names.size());
  for (size_t i = 0; i < a.ap_names.size(); ++i) {
    auto it = pos.find(a.ap_names[i]);
    if (it == pos.end())
      throw Error("automaton AP '" + a.ap_names[i] +
                  "' is not declared in the specification");
    map[i] = it->second;
  }
  for (Edge& e : a.edges) e.guard = remap_guard(e.guard, map);
  a.ap_names = target;
}

}  // namespace ltlsynth
