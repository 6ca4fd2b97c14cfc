#include "ltlsynth/automata.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ltlsynth {

// ---------------------------------------------------------------------------
// Guards

namespace {
GuardPtr g_make(Guard::Kind kind, GuardPtr lhs = nullptr,
                GuardPtr rhs = nullptr) {
  auto g = std::make_shared<Guard>();
  g->kind = kind;
  g->lhs = std::move(lhs);
  g->rhs = std::move(rhs);
  return g;
}
}  // namespace

GuardPtr g_true() {
  static const GuardPtr g = g_make(Guard::Kind::True);
  return g;
}

GuardPtr g_false() {
  static const GuardPtr g = g_make(Guard::Kind::False);
  return g;
}

GuardPtr g_ap(int bit) {
  auto g = std::make_shared<Guard>();
  g->kind = Guard::Kind::Ap;
  g->ap = bit;
  return g;
}

GuardPtr g_not(GuardPtr g) {
  if (g->kind == Guard::Kind::True) return g_false();
  if (g->kind == Guard::Kind::False) return g_true();
  if (g->kind == Guard::Kind::Not) return g->lhs;
  return g_make(Guard::Kind::Not, std::move(g));
}

GuardPtr g_and(GuardPtr a, GuardPtr b) {
  if (a->kind == Guard::Kind::False || b->kind == Guard::Kind::True) return a;
  if (b->kind == Guard::Kind::False || a->kind == Guard::Kind::True) return b;
  return g_make(Guard::Kind::And, std::move(a), std::move(b));
}

GuardPtr g_or(GuardPtr a, GuardPtr b) {
  if (a->kind == Guard::Kind::True || b->kind == Guard::Kind::False) return a;
  if (b->kind == Guard::Kind::True || a->kind == Guard::Kind::False) return b;
  return g_make(Guard::Kind::Or, std::move(a), std::move(b));
}

bool guard_eval(const GuardPtr& g, Letter l) {
  switch (g->kind) {
    case Guard::Kind::True:
      return true;
    case Guard::Kind::False:
      return false;
    case Guard::Kind::Ap:
      return (l >> g->ap) & 1u;
    case Guard::Kind::Not:
      return !guard_eval(g->lhs, l);
    case Guard::Kind::And:
      return guard_eval(g->lhs, l) && guard_eval(g->rhs, l);
    case Guard::Kind::Or:
      return guard_eval(g->lhs, l) || guard_eval(g->rhs, l);
  }
  return false;
}

namespace {
void collect_bits(const GuardPtr& g, std::set<int>& bits) {
  switch (g->kind) {
    case Guard::Kind::Ap:
      bits.insert(g->ap);
      break;
    case Guard::Kind::Not:
      collect_bits(g->lhs, bits);
      break;
    case Guard::Kind::And:
    case Guard::Kind::Or:
      collect_bits(g->lhs, bits);
      collect_bits(g->rhs, bits);
      break;
    default:
      break;
  }
}
}  // namespace

bool guard_sat(const GuardPtr& g, int max_bits) {
  if (g->kind == Guard::Kind::True) return true;
  if (g->kind == Guard::Kind::False) return false;
  std::set<int> bits;
  collect_bits(g, bits);
  if (static_cast<int>(bits.size()) > max_bits) return true;  // conservative
  std::vector<int> bit_list(bits.begin(), bits.end());
  const std::uint64_t combos = 1ull << bit_list.size();
  for (std::uint64_t m = 0; m < combos; ++m) {
    Letter l = 0;
    for (size_t i = 0; i < bit_list.size(); ++i)
      if (m >> i & 1ull) l |= 1u << bit_list[i];
    if (guard_eval(g, l)) return true;
  }
  return false;
}

std::string guard_to_string(const GuardPtr& g,
                            const std::vector<std::string>& aps) {
  auto name = [&](int bit) {
    return bit < static_cast<int>(aps.size()) ? aps[bit]
                                              : "ap" + std::to_string(bit);
  };
  switch (g->kind) {
    case Guard::Kind::True:
      return "true";
    case Guard::Kind::False:
      return "false";
    case Guard::Kind::Ap:
      return name(g->ap);
    case Guard::Kind::Not:
      return "!" + (g->lhs->kind == Guard::Kind::Ap
                        ? guard_to_string(g->lhs, aps)
                        : "(" + guard_to_string(g->lhs, aps) + ")");
    case Guard::Kind::And:
      return "(" + guard_to_string(g->lhs, aps) + " & " +
             guard_to_string(g->rhs, aps) + ")";
    case Guard::Kind::Or:
      return "(" + guard_to_string(g->lhs, aps) + " | " +
             guard_to_string(g->rhs, aps) + ")";
  }
  return "?";
}

int Ucw::rejecting_count() const {
  int n = 0;
  for (char r : rejecting) n += (r != 0);
  return n;
}

// ---------------------------------------------------------------------------
// Tableau translation (Gerth et al. expand construction)
//
// Subformulas are interned so tableau nodes are plain integer sets. Nodes
// with equal (old, next) obligation sets are merged on the fly. The
// generalized acceptance (one set per Until subformula) is removed with the
// usual counter product, and accepting marks are then restricted to states
// that lie on a cycle, since only those can be visited infinitely often.

namespace {

class FormulaPool {
 public:
  int intern(const LtlPtr& f) {
    int l = f->lhs ? intern(f->lhs) : -1;
    int r = f->rhs ? intern(f->rhs) : -1;
    Key key{f->op, f->op == LtlOp::Prop ? f->prop : -1, l, r};
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(entries_.size());
    entries_.push_back({f->op, f->prop, l, r});
    index_.emplace(key, id);
    return id;
  }

  LtlOp op(int id) const { return entries_[id].op; }
  int prop(int id) const { return entries_[id].prop; }
  int lhs(int id) const { return entries_[id].lhs; }
  int rhs(int id) const { return entries_[id].rhs; }

  // The dual literal id, or -1 when f is not a literal or the dual has not
  // been interned (then no contradiction is possible yet).
  int dual_literal(int id) const {
    const Entry& e = entries_[id];
    if (e.op == LtlOp::Prop) return find({LtlOp::Not, -1, id, -1});
    if (e.op == LtlOp::Not) return e.lhs;
    return -1;
  }

  bool is_literal(int id) const {
    LtlOp o = entries_[id].op;
    return o == LtlOp::Prop ||
           (o == LtlOp::Not && entries_[entries_[id].lhs].op == LtlOp::Prop);
  }

 private:
  struct Key {
    LtlOp op;
    int prop, lhs, rhs;
    bool operator<(const Key& o) const {
      return std::tie(op, prop, lhs, rhs) < std::tie(o.op, o.prop, o.lhs, o.rhs);
    }
  };
  struct Entry {
    LtlOp op;
    int prop, lhs, rhs;
  };

  int find(const Key& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? -1 : it->second;
  }

  std::vector<Entry> entries_;
  std::map<Key, int> index_;
};

struct PendingNode {
  std::set<int> news;
  std::set<int> old;
  std::set<int> next;
  std::vector<int> incoming;  // tableau node ids; kInitSource for the start
};

constexpr int kInitSource = -1;

struct TableauGraph {
  struct Node {
    std::set<int> old;
    std::set<int> next;
    std::vector<int> incoming;
  };
  std::vector<Node> nodes;
  std::map<std::pair<std::set<int>, std::set<int>>, int> by_obligation;
};

void expand_all(PendingNode start, FormulaPool& pool, TableauGraph& graph,
                int max_nodes) {
  std::vector<PendingNode> stack;
  stack.push_back(std::move(start));
  while (!stack.empty()) {
    PendingNode q = std::move(stack.back());
    stack.pop_back();
    if (q.news.empty()) {
      auto key = std::make_pair(q.old, q.next);
      auto it = graph.by_obligation.find(key);
      if (it != graph.by_obligation.end()) {
        auto& inc = graph.nodes[it->second].incoming;
        for (int s : q.incoming)
          if (std::find(inc.begin(), inc.end(), s) == inc.end())
            inc.push_back(s);
        continue;
      }
      int id = static_cast<int>(graph.nodes.size());
      if (id >= max_nodes)
        throw BudgetError("LTL translation exceeded the state budget");
      graph.nodes.push_back({q.old, q.next, q.incoming});
      graph.by_obligation.emplace(key, id);
      PendingNode succ;
      succ.news = q.next;
      succ.incoming = {id};
      stack.push_back(std::move(succ));
      continue;
    }
    int f = *q.news.begin();
    q.news.erase(q.news.begin());
    auto add_new = [&](PendingNode& n, int g) {
      if (!n.old.count(g)) n.news.insert(g);
    };
    switch (pool.op(f)) {
      case LtlOp::True:
        // Recorded in old: until-fulfillment tests h in old, and h may be
        // the constant true.
        q.old.insert(f);
        stack.push_back(std::move(q));
        break;
      case LtlOp::False:
        break;  // contradiction: drop this node
      case LtlOp::Prop:
      case LtlOp::Not: {
        int dual = pool.dual_literal(f);
        if (dual >= 0 && q.old.count(dual)) break;  // p and !p: drop
        q.old.insert(f);
        stack.push_back(std::move(q));
        break;
      }
      case LtlOp::And: {
        q.old.insert(f);
        add_new(q, pool.lhs(f));
        add_new(q, pool.rhs(f));
        stack.push_back(std::move(q));
        break;
      }
      case LtlOp::Or: {
        q.old.insert(f);
        PendingNode q2 = q;
        add_new(q, pool.lhs(f));
        add_new(q2, pool.rhs(f));
        stack.push_back(std::move(q2));
        stack.push_back(std::move(q));
        break;
      }
      case LtlOp::Next: {
        q.old.insert(f);
        q.next.insert(pool.lhs(f));
        stack.push_back(std::move(q));
        break;
      }
      case LtlOp::Until: {
        q.old.insert(f);
        PendingNode q2 = q;
        add_new(q, pool.rhs(f));
        add_new(q2, pool.lhs(f));
        q2.next.insert(f);
        stack.push_back(std::move(q2));
        stack.push_back(std::move(q));
        break;
      }
      case LtlOp::Release: {
        q.old.insert(f);
        PendingNode q2 = q;
        add_new(q, pool.lhs(f));
        add_new(q, pool.rhs(f));
        add_new(q2, pool.rhs(f));
        q2.next.insert(f);
        stack.push_back(std::move(q2));
        stack.push_back(std::move(q));
        break;
      }
    }
  }
}

void collect_untils(const LtlPtr& f, FormulaPool& pool, std::set<int>& out) {
  if (f->op == LtlOp::Until) out.insert(pool.intern(f));
  if (f->lhs) collect_untils(f->lhs, pool, out);
  if (f->rhs) collect_untils(f->rhs, pool, out);
}

GuardPtr node_label(const TableauGraph::Node& node, const FormulaPool& pool) {
  GuardPtr g = g_true();
  for (int f : node.old) {
    if (pool.op(f) == LtlOp::Prop)
      g = g_and(g, g_ap(pool.prop(f)));
    else if (pool.is_literal(f))
      g = g_and(g, g_not(g_ap(pool.prop(pool.lhs(f)))));
  }
  return g;
}

// Restricts accepting marks to states lying on a cycle (nontrivial SCC or
// self-loop); acceptance along a run only depends on such states.
void restrict_marks_to_cycles(Nbw& b) {
  std::vector<std::vector<int>> adj(b.num_states);
  std::vector<char> self_loop(b.num_states, 0);
  for (const Edge& e : b.edges) {
    adj[e.src].push_back(e.dst);
    if (e.src == e.dst) self_loop[e.src] = 1;
  }
  // Iterative Tarjan.
  const int n = b.num_states;
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> scc_stack;
  std::vector<int> comp_size;
  int next_index = 0;
  struct Frame {
    int v;
    size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    scc_stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& fr = call.back();
      if (fr.child < adj[fr.v].size()) {
        int w = adj[fr.v][fr.child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          scc_stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[fr.v] = std::min(low[fr.v], index[w]);
        }
      } else {
        int v = fr.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          int c = static_cast<int>(comp_size.size());
          int members = 0;
          while (true) {
            int w = scc_stack.back();
            scc_stack.pop_back();
            on_stack[w] = 0;
            comp[w] = c;
            ++members;
            if (w == v) break;
          }
          comp_size.push_back(members);
        }
      }
    }
  }
  for (int q = 0; q < n; ++q) {
    bool on_cycle = comp_size[comp[q]] > 1 || self_loop[q];
    if (!on_cycle) b.accepting[q] = 0;
  }
}

Nbw constant_nbw(bool accepting, std::vector<std::string> ap_names) {
  Nbw b;
  b.num_states = 1;
  b.initial = 0;
  b.edges.push_back({0, g_true(), 0});
  b.accepting = {static_cast<char>(accepting ? 1 : 0)};
  b.ap_names = std::move(ap_names);
  return b;
}

}  // namespace

Nbw ltl_to_nbw(const LtlPtr& nnf_formula, std::vector<std::string> ap_names,
               const TranslationBudget& budget) {
  if (nnf_formula->op == LtlOp::True)
    return constant_nbw(true, std::move(ap_names));
  if (nnf_formula->op == LtlOp::False)
    return constant_nbw(false, std::move(ap_names));

  FormulaPool pool;
  int root = pool.intern(nnf_formula);
  std::set<int> until_set;
  collect_untils(nnf_formula, pool, until_set);
  std::vector<int> untils(until_set.begin(), until_set.end());
  const int n_acc = static_cast<int>(untils.size());

  TableauGraph graph;
  PendingNode start;
  start.news = {root};
  start.incoming = {kInitSource};
  expand_all(std::move(start), pool, graph, budget.max_states);

  // Outgoing adjacency over tableau nodes (kInitSource as a virtual source).
  const int n_nodes = static_cast<int>(graph.nodes.size());
  std::vector<std::vector<int>> out(n_nodes + 1);
  auto src_slot = [&](int s) { return s == kInitSource ? n_nodes : s; };
  for (int w = 0; w < n_nodes; ++w)
    for (int s : graph.nodes[w].incoming) out[src_slot(s)].push_back(w);

  auto in_acc_set = [&](int node, int j) {
    const auto& old = graph.nodes[node].old;
    int u = untils[j];
    return !old.count(u) || old.count(pool.rhs(u));
  };
  auto advance = [&](int c, int target_node) {
    int base = (c == n_acc) ? 0 : c;
    while (base < n_acc && in_acc_set(target_node, base)) ++base;
    return base;
  };

  // Counter product, built by BFS from (init, 0).
  Nbw b;
  b.ap_names = std::move(ap_names);
  std::map<std::pair<int, int>, int> product_id;  // (node or init, counter)
  std::vector<std::pair<int, int>> product_states;
  std::vector<GuardPtr> labels(n_nodes);
  for (int w = 0; w < n_nodes; ++w) labels[w] = node_label(graph.nodes[w], pool);

  auto product_state = [&](int node, int counter) {
    auto key = std::make_pair(node, counter);
    auto it = product_id.find(key);
    if (it != product_id.end()) return it->second;
    int id = static_cast<int>(product_states.size());
    if (id >= budget.max_states)
      throw BudgetError("LTL translation exceeded the state budget");
    product_id.emplace(key, id);
    product_states.push_back(key);
    return id;
  };

  std::queue<int> bfs;
  bfs.push(product_state(kInitSource, 0));
  size_t processed = 0;
  while (!bfs.empty()) {
    int id = bfs.front();
    bfs.pop();
    auto [node, counter] = product_states[id];
    for (int w : out[src_slot(node)]) {
      int c2 = advance(counter, w);
      size_t before = product_states.size();
      int tid = product_state(w, c2);
      b.edges.push_back({id, labels[w], tid});
      if (product_states.size() > before) bfs.push(tid);
    }
    ++processed;
  }
  assert(processed == product_states.size());

  b.num_states = static_cast<int>(product_states.size());
  b.initial = 0;
  b.accepting.assign(b.num_states, 0);
  for (int q = 0; q < b.num_states; ++q)
    if (product_states[q].second == n_acc) b.accepting[q] = 1;

  restrict_marks_to_cycles(b);
  return b;
}

// ---------------------------------------------------------------------------
// Completion and dualization

namespace {
// Returns the guard covering the letters with no outgoing edge, or null.
GuardPtr missing_guard(const std::vector<Edge>& edges, int state) {
  GuardPtr covered = g_false();
  for (const Edge& e : edges)
    if (e.src == state) covered = g_or(covered, e.guard);
  GuardPtr missing = g_not(covered);
  return guard_sat(missing) ? missing : nullptr;
}

template <typename Automaton>
void complete_with_trap(Automaton& a, bool trap_mark) {
  std::vector<Edge> additions;
  for (int q = 0; q < a.num_states; ++q) {
    GuardPtr missing = missing_guard(a.edges, q);
    if (missing) additions.push_back({q, missing, -1});
  }
  if (additions.empty()) return;
  const int trap = a.num_states;
  for (Edge& e : additions) e.dst = trap;
  a.num_states += 1;
  a.edges.insert(a.edges.end(), additions.begin(), additions.end());
  a.edges.push_back({trap, g_true(), trap});
  if constexpr (std::is_same_v<Automaton, Nbw>)
    a.accepting.push_back(trap_mark ? 1 : 0);
  else
    a.rejecting.push_back(trap_mark ? 1 : 0);
}
}  // namespace

void complete_nbw(Nbw& b) { complete_with_trap(b, /*trap_mark=*/false); }

Ucw dualize(const Nbw& b) {
  Ucw a;
  a.num_states = b.num_states;
  a.initial = b.initial;
  a.edges = b.edges;
  a.rejecting = b.accepting;
  a.ap_names = b.ap_names;
  return a;
}

Ucw ltl_to_ucw(const LtlPtr& f, std::vector<std::string> ap_names,
               const TranslationBudget& budget) {
  Nbw negated = ltl_to_nbw(to_nnf(f_not(f)), std::move(ap_names), budget);
  complete_nbw(negated);
  return dualize(negated);
}

// ---------------------------------------------------------------------------
// Lasso acceptance
//
// Product of the automaton with the lasso positions; a run visiting marked
// states infinitely often exists iff some reachable nontrivial SCC of the
// product contains a marked node.

namespace {

bool has_marked_cycle_run(int num_states, const std::vector<Edge>& edges,
                          int initial, const std::vector<char>& marked,
                          const LassoTrace& t) {
  if (t.cycle.empty()) throw Error("lasso cycle must be non-empty");
  const int P = static_cast<int>(t.prefix.size());
  const int N = P + static_cast<int>(t.cycle.size());
  auto letter = [&](int i) {
    return i < P ? t.prefix[i] : t.cycle[i - P];
  };
  auto succ_pos = [&](int i) { return i + 1 < N ? i + 1 : P; };

  std::vector<std::vector<std::pair<GuardPtr, int>>> out(num_states);
  for (const Edge& e : edges) out[e.src].push_back({e.guard, e.dst});

  const int total = num_states * N;
  auto pid = [&](int q, int i) { return q * N + i; };
  std::vector<char> reach(total, 0);
  std::vector<int> queue{pid(initial, 0)};
  reach[pid(initial, 0)] = 1;
  std::vector<std::vector<int>> adj(total);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int id = queue[qi];
    int q = id / N, i = id % N;
    Letter l = letter(i);
    int j = succ_pos(i);
    for (const auto& [g, dst] : out[q]) {
      if (!guard_eval(g, l)) continue;
      int nid = pid(dst, j);
      adj[id].push_back(nid);
      if (!reach[nid]) {
        reach[nid] = 1;
        queue.push_back(nid);
      }
    }
  }

  // Tarjan over the reachable part.
  std::vector<int> index(total, -1), low(total, 0);
  std::vector<char> on_stack(total, 0);
  std::vector<int> stack;
  int next_index = 0;
  struct Frame {
    int v;
    size_t child;
  };
  for (int root : queue) {
    if (index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& fr = call.back();
      if (fr.child < adj[fr.v].size()) {
        int w = adj[fr.v][fr.child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[fr.v] = std::min(low[fr.v], index[w]);
        }
      } else {
        int v = fr.v;
        call.pop_back();
        if (!call.empty())
          low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          // Pop one SCC and check it on the spot.
          std::vector<int> members;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            members.push_back(w);
            if (w == v) break;
          }
          bool nontrivial = members.size() > 1;
          if (!nontrivial) {
            for (int w : adj[members[0]])
              if (w == members[0]) nontrivial = true;
          }
          if (nontrivial) {
            for (int w : members)
              if (marked[w / N]) return true;
          }
        }
      }
    }
  }
  return false;
}

}  // namespace

bool nbw_accepts_lasso(const Nbw& b, const LassoTrace& t) {
  return has_marked_cycle_run(b.num_states, b.edges, b.initial, b.accepting, t);
}

bool ucw_accepts_lasso(const Ucw& a, const LassoTrace& t) {
  // Accepting iff no run visits rejecting states infinitely often.
  return !has_marked_cycle_run(a.num_states, a.edges, a.initial, a.rejecting,
                               t);
}

// ---------------------------------------------------------------------------
// Rejecting-state distances

RejectDistance reject_distances(const Ucw& a) {
  const int n = a.num_states;
  std::vector<std::vector<int>> rev(n), fwd(n);
  for (const Edge& e : a.edges) {
    rev[e.dst].push_back(e.src);
    fwd[e.src].push_back(e.dst);
  }
  // dist0[q]: shortest path (possibly empty) from q to a rejecting state.
  std::vector<int> dist0(n, RejectDistance::kInfinite);
  std::queue<int> bfs;
  for (int q = 0; q < n; ++q) {
    if (a.rejecting[q]) {
      dist0[q] = 0;
      bfs.push(q);
    }
  }
  while (!bfs.empty()) {
    int q = bfs.front();
    bfs.pop();
    for (int p : rev[q]) {
      if (dist0[p] == RejectDistance::kInfinite) {
        dist0[p] = dist0[q] + 1;
        bfs.push(p);
      }
    }
  }
  RejectDistance out;
  out.d.assign(n, RejectDistance::kInfinite);
  for (int q = 0; q < n; ++q) {
    if (!a.rejecting[q]) {
      out.d[q] = dist0[q];
    } else {
      // Shortest nontrivial return path.
      int best = RejectDistance::kInfinite;
      for (int s : fwd[q])
        if (dist0[s] != RejectDistance::kInfinite)
          best = std::min(best, dist0[s] + 1);
      out.d[q] = best;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// DOT export

namespace {
template <typename Automaton>
std::string automaton_dot(const Automaton& a, const std::vector<char>& marked,
                          const char* mark_style) {
  std::ostringstream os;
  os << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  init [shape=point];\n  init -> s" << a.initial << ";\n";
  for (int q = 0; q < a.num_states; ++q) {
    os << "  s" << q << " [label=\"" << q << "\"";
    if (marked[q]) os << ", " << mark_style;
    os << "];\n";
  }
  for (const Edge& e : a.edges) {
    os << "  s" << e.src << " -> s" << e.dst << " [label=\""
       << guard_to_string(e.guard, a.ap_names) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}
}  // namespace

std::string to_dot(const Ucw& a) {
  return automaton_dot(a, a.rejecting, "peripheries=2, color=red");
}

std::string to_dot(const Nbw& b) {
  return automaton_dot(b, b.accepting, "peripheries=2");
}

}  // namespace ltlsynth
