#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtlp/nba.hpp"

namespace rtlp {

namespace {

// Subformulas are interned so tableau nodes can hold plain integer sets.
class Interner {
 public:
  int id(const Formula& f) {
    auto key = f.to_string();
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const int i = static_cast<int>(forms_.size());
    forms_.push_back(f);
    index_.emplace(std::move(key), i);
    return i;
  }
  const Formula& at(int i) const { return forms_[static_cast<std::size_t>(i)]; }

 private:
  std::map<std::string, int> index_;
  std::vector<Formula> forms_;
};

struct TableauNode {
  std::set<int> incoming;  // -1 is the extra initial state
  std::set<int> fresh;     // obligations still to expand
  std::set<int> old;
  std::set<int> next;
};

struct Tableau {
  std::vector<TableauNode> nodes;
};

bool is_literal_op(const Formula& f) {
  return f.op() == Op::Atom || (f.op() == Op::Not && f.child(0).op() == Op::Atom);
}

Tableau build_tableau(const Formula& root, Interner& in) {
  Tableau t;
  std::vector<TableauNode> work;
  TableauNode start;
  start.incoming.insert(-1);
  start.fresh.insert(in.id(root));
  work.push_back(std::move(start));

  auto add_fresh = [](TableauNode& n, int f) {
    if (n.old.count(f) == 0) n.fresh.insert(f);
  };

  while (!work.empty()) {
    TableauNode node = std::move(work.back());
    work.pop_back();
    bool alive = true;
    while (alive) {
      if (node.fresh.empty()) {
        auto same = std::find_if(t.nodes.begin(), t.nodes.end(), [&](const TableauNode& m) {
          return m.old == node.old && m.next == node.next;
        });
        if (same != t.nodes.end()) {
          same->incoming.insert(node.incoming.begin(), node.incoming.end());
        } else {
          const int name = static_cast<int>(t.nodes.size());
          TableauNode succ;
          succ.incoming.insert(name);
          succ.fresh = node.next;
          t.nodes.push_back(std::move(node));
          work.push_back(std::move(succ));
        }
        break;
      }
      const int eta = *node.fresh.begin();
      node.fresh.erase(node.fresh.begin());
      if (node.old.count(eta) != 0) continue;
      const Formula f = in.at(eta);
      switch (f.op()) {
        case Op::True:
          break;
        case Op::False:
          alive = false;
          break;
        case Op::Atom:
        case Op::Not: {
          if (!is_literal_op(f)) throw std::invalid_argument("translation needs a formula in NNF");
          const int neg = f.op() == Op::Atom ? in.id(Formula::negate(f)) : in.id(f.child(0));
          if (node.old.count(neg) != 0) {
            alive = false;
            break;
          }
          node.old.insert(eta);
          break;
        }
        case Op::And:
          node.old.insert(eta);
          add_fresh(node, in.id(f.child(0)));
          add_fresh(node, in.id(f.child(1)));
          break;
        case Op::Next:
          node.old.insert(eta);
          node.next.insert(in.id(f.child(0)));
          break;
        case Op::Always:
          node.old.insert(eta);
          add_fresh(node, in.id(f.child(0)));
          node.next.insert(eta);
          break;
        case Op::Or:
        case Op::Until:
        case Op::Release:
        case Op::Eventually: {
          TableauNode other = node;
          node.old.insert(eta);
          other.old.insert(eta);
          if (f.op() == Op::Or) {
            add_fresh(node, in.id(f.child(0)));
            add_fresh(other, in.id(f.child(1)));
          } else if (f.op() == Op::Until) {
            add_fresh(node, in.id(f.child(0)));
            node.next.insert(eta);
            add_fresh(other, in.id(f.child(1)));
          } else if (f.op() == Op::Eventually) {
            node.next.insert(eta);
            add_fresh(other, in.id(f.child(0)));
          } else {
            add_fresh(node, in.id(f.child(1)));
            node.next.insert(eta);
            add_fresh(other, in.id(f.child(0)));
            add_fresh(other, in.id(f.child(1)));
          }
          work.push_back(std::move(other));
          break;
        }
      }
    }
  }
  return t;
}

void collect_untils(const Formula& f, Interner& in, std::set<int>& seen, std::vector<int>& out) {
  const int id = in.id(f);
  if (!seen.insert(id).second) return;
  for (std::size_t i = 0; i < f.arity(); ++i) collect_untils(f.child(i), in, seen, out);
  if (f.op() == Op::Until || f.op() == Op::Eventually) out.push_back(id);
}

Formula node_guard(const TableauNode& n, const Interner& in) {
  std::vector<std::pair<OccId, bool>> lits;
  for (int i : n.old) {
    const Formula& f = in.at(i);
    if (f.op() == Op::Atom) lits.emplace_back(f.atom_id(), false);
    else if (is_literal_op(f)) lits.emplace_back(f.child(0).atom_id(), true);
  }
  std::sort(lits.begin(), lits.end());
  std::optional<Formula> g;
  for (const auto& [atom, negated] : lits) {
    Formula lit = negated ? Formula::negate(Formula::atom(atom)) : Formula::atom(atom);
    g = g ? Formula::conj(*g, lit) : lit;
  }
  return g ? *g : Formula::tt();
}

bool same_outgoing(const Nba& a, StateId x, StateId y) {
  const auto sx = a.successors(x);
  const auto sy = a.successors(y);
  if (sx.size() != sy.size()) return false;
  for (std::size_t i = 0; i < sx.size(); ++i) {
    // A self loop on x and a self loop on y count as the same transition.
    const StateId tx = sx[i].first == x ? -1 : sx[i].first;
    const StateId ty = sy[i].first == y ? -1 : sy[i].first;
    if (tx != ty || !(sx[i].second->formula() == sy[i].second->formula())) return false;
  }
  return true;
}

// Builds a new automaton keeping `keep` states, renumbered in BFS order from
// the initial states; `redirect` maps removed states onto kept ones.
Nba rebuild(const Nba& a, const std::vector<char>& keep, const std::vector<StateId>& redirect) {
  auto target = [&](StateId q) { return redirect[static_cast<std::size_t>(q)]; };
  std::vector<StateId> order;
  std::vector<StateId> fresh_id(static_cast<std::size_t>(a.num_states()), -1);
  std::deque<StateId> queue;
  for (StateId q : a.initial()) {
    const StateId r = target(q);
    if (r < 0 || !keep[r] || fresh_id[r] != -1) continue;
    fresh_id[r] = static_cast<StateId>(order.size());
    order.push_back(r);
    queue.push_back(r);
  }
  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    for (StateId n : a.successor_states(q)) {
      const StateId r = target(n);
      if (r < 0 || !keep[r] || fresh_id[r] != -1) continue;
      fresh_id[r] = static_cast<StateId>(order.size());
      order.push_back(r);
      queue.push_back(r);
    }
  }
  if (order.empty()) {
    Nba empty(1);
    empty.set_initial(0);
    return empty;
  }
  Nba out(static_cast<int>(order.size()));
  for (StateId q : a.initial()) {
    const StateId r = target(q);
    if (r >= 0 && keep[r]) out.set_initial(fresh_id[r]);
  }
  for (StateId r : order)
    if (a.is_final(r)) out.set_final(fresh_id[r]);
  for (const auto& [e, g] : a.edges()) {
    const StateId f = target(e.from);
    const StateId t = target(e.to);
    if (f < 0 || t < 0 || !keep[f] || !keep[t] || fresh_id[f] < 0 || fresh_id[t] < 0) continue;
    if (f != e.from) continue;  // merged states contribute through their representative
    out.add_guard(Edge{fresh_id[f], fresh_id[t]}, g);
  }
  return out;
}

std::vector<StateId> identity(int n) {
  std::vector<StateId> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Keeps states that are reachable and can reach a final state on a cycle.
Nba trim(const Nba& a) {
  const int n = a.num_states();
  std::vector<std::vector<StateId>> succ(n), pred(n);
  for (const auto& [e, g] : a.edges()) {
    succ[e.from].push_back(e.to);
    pred[e.to].push_back(e.from);
  }
  auto closure = [n](const std::vector<StateId>& seeds, const std::vector<std::vector<StateId>>& adj) {
    std::vector<char> seen(n, 0);
    std::deque<StateId> q;
    for (StateId s : seeds)
      if (!seen[s]) {
        seen[s] = 1;
        q.push_back(s);
      }
    while (!q.empty()) {
      StateId v = q.front();
      q.pop_front();
      for (StateId w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          q.push_back(w);
        }
    }
    return seen;
  };
  const auto reach = closure({a.initial().begin(), a.initial().end()}, succ);
  std::vector<StateId> live;
  for (StateId f : a.final()) {
    // f lies on a cycle iff it is reachable from one of its successors.
    const auto from_succ = closure(succ[f], succ);
    if (from_succ[f] && reach[f]) live.push_back(f);
  }
  const auto coreach = closure(live, pred);
  std::vector<char> keep(n, 0);
  for (int q = 0; q < n; ++q) keep[q] = reach[q] && coreach[q];
  return rebuild(a, keep, identity(n));
}

Nba merge_equivalent(Nba a) {
  for (bool changed = true; changed;) {
    changed = false;
    const int n = a.num_states();
    for (StateId x = 0; x < n && !changed; ++x)
      for (StateId y = x + 1; y < n && !changed; ++y) {
        if (a.is_final(x) != a.is_final(y) || !same_outgoing(a, x, y)) continue;
        std::vector<StateId> redirect = identity(n);
        redirect[y] = x;
        std::vector<char> keep(n, 1);
        keep[y] = 0;
        a = rebuild(a, keep, redirect);
        changed = true;
      }
  }
  return a;
}

}  // namespace

Nba translate(const Formula& nnf, const TranslateOptions& options) {
  Interner in;
  const Tableau t = build_tableau(nnf, in);

  std::vector<int> untils;
  std::set<int> seen;
  collect_untils(nnf, in, seen, untils);
  const std::size_t k = untils.size();
  const std::size_t nodes = t.nodes.size();

  // in_set[u][n]: node n satisfies the acceptance condition of until u.
  std::vector<std::vector<char>> in_set(k, std::vector<char>(nodes, 0));
  for (std::size_t u = 0; u < k; ++u) {
    const Formula& f = in.at(untils[u]);
    const Formula& rhs = f.rhs();
    const int rid = in.id(rhs);
    for (std::size_t n = 0; n < nodes; ++n)
      in_set[u][n] = t.nodes[n].old.count(untils[u]) == 0 || rhs.op() == Op::True ||
                     t.nodes[n].old.count(rid) != 0;
  }

  std::vector<Formula> guards;
  std::vector<std::vector<int>> succ(nodes + 1);  // index nodes: initial is `nodes`
  for (std::size_t n = 0; n < nodes; ++n) {
    guards.push_back(node_guard(t.nodes[n], in));
    for (int m : t.nodes[n].incoming)
      succ[m < 0 ? nodes : static_cast<std::size_t>(m)].push_back(static_cast<int>(n));
  }
  for (auto& s : succ) std::sort(s.begin(), s.end());

  // Counter degeneralisation over (node, level); the initial state has level 0
  // and belongs to no acceptance set.
  std::map<std::pair<std::size_t, std::size_t>, StateId> ids;
  std::deque<std::pair<std::size_t, std::size_t>> queue;
  Nba a;
  auto state = [&](std::size_t n, std::size_t lvl) {
    auto key = std::make_pair(n, lvl);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    const StateId s = a.add_state();
    ids.emplace(key, s);
    queue.push_back(key);
    const bool final = n < nodes && (k == 0 || (lvl == 0 && in_set[0][n]));
    if (final) a.set_final(s);
    return s;
  };
  a.set_initial(state(nodes, 0));
  while (!queue.empty()) {
    const auto [n, lvl] = queue.front();
    queue.pop_front();
    const StateId from = ids.at({n, lvl});
    std::size_t next_lvl = lvl;
    if (k > 0 && n < nodes && in_set[lvl][n]) next_lvl = (lvl + 1) % k;
    for (int m : succ[n]) {
      const StateId to = state(static_cast<std::size_t>(m), next_lvl);
      a.add_guard(Edge{from, to}, Guard(guards[static_cast<std::size_t>(m)]));
    }
  }

  // Fold the extra initial state into a state with identical behaviour.
  const StateId init = *a.initial().begin();
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (q == init) continue;
    const auto si = a.successors(init);
    const auto sq = a.successors(q);
    if (si.size() != sq.size()) continue;
    bool equal = true;
    for (std::size_t i = 0; i < si.size() && equal; ++i)
      equal = si[i].first == sq[i].first && si[i].second->formula() == sq[i].second->formula();
    if (!equal) continue;
    a.set_initial(init, false);
    a.set_initial(q);
    break;
  }

  Nba out = trim(a);
  if (options.simplify) out = trim(merge_equivalent(out));
  return out;
}

Nba translate_ltl(const Formula& f, const TranslateOptions& options) {
  return translate(simplify_constants(to_nnf(f)), options);
}

}  // namespace rtlp
