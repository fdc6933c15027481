#include "rtlp/nba.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace rtlp {

Nba::Nba(int num_states) : num_states_(num_states) {
  if (num_states < 0) throw std::invalid_argument("negative state count");
}

StateId Nba::add_state() { return num_states_++; }

void Nba::check_state(StateId q) const {
  if (!has_state(q)) throw std::out_of_range("unknown automaton state " + std::to_string(q));
}

void Nba::set_initial(StateId q, bool on) {
  check_state(q);
  if (on) initial_.insert(q);
  else initial_.erase(q);
}

void Nba::set_final(StateId q, bool on) {
  check_state(q);
  if (on) final_.insert(q);
  else final_.erase(q);
}

void Nba::set_guard(Edge e, Guard g) {
  check_state(e.from);
  check_state(e.to);
  if (g.formula().op() == Op::False || g.is_false()) {
    edges_.erase(e);
    return;
  }
  edges_.insert_or_assign(e, std::move(g));
}

void Nba::add_guard(Edge e, const Guard& g) {
  auto it = edges_.find(e);
  if (it == edges_.end()) {
    set_guard(e, g);
    return;
  }
  set_guard(e, Guard(Formula::disj(it->second.formula(), g.formula())));
}

void Nba::remove_edge(Edge e) { edges_.erase(e); }

const Guard* Nba::guard(Edge e) const {
  auto it = edges_.find(e);
  return it == edges_.end() ? nullptr : &it->second;
}

std::vector<std::pair<StateId, const Guard*>> Nba::successors(StateId q) const {
  std::vector<std::pair<StateId, const Guard*>> out;
  for (auto it = edges_.lower_bound(Edge{q, 0}); it != edges_.end() && it->first.from == q; ++it)
    out.emplace_back(it->first.to, &it->second);
  return out;
}

std::vector<StateId> Nba::successor_states(StateId q) const {
  std::vector<StateId> out;
  for (auto it = edges_.lower_bound(Edge{q, 0}); it != edges_.end() && it->first.from == q; ++it)
    out.push_back(it->first.to);
  return out;
}

bool clause_respects_one_skill(const Clause& c, const PredicateTable& table) {
  std::map<RobotId, std::set<std::pair<SkillId, LandmarkId>>> skills;
  std::map<RobotId, std::set<LandmarkId>> presence;
  for (OccId id : c.pos) {
    const Predicate& p = table.at(id);
    if (!p.assigned()) continue;
    if (p.is_mobility()) presence[*p.robot].insert(p.location);
    else skills[*p.robot].insert({p.skill, p.location});
  }
  for (const auto& [robot, s] : skills) {
    if (s.size() > 1) return false;
    auto it = presence.find(robot);
    if (it != presence.end() && (it->second.size() > 1 || *it->second.begin() != s.begin()->second))
      return false;
  }
  for (const auto& [robot, locs] : presence)
    if (locs.size() > 1) return false;
  return true;
}

Nba prune_multiskill(const Nba& nba, const PredicateTable& table) {
  Nba out = nba;
  for (const auto& [edge, guard] : nba.edges()) {
    const Dnf& clauses = guard.dnf();
    Dnf kept;
    for (const auto& c : clauses)
      if (clause_respects_one_skill(c, table)) kept.push_back(c);
    if (kept.size() == clauses.size()) continue;
    out.set_guard(edge, Guard::from_clauses(kept));
  }
  return out;
}

std::set<StateId> reachable_states(const Nba& nba, StateId from) {
  if (!nba.has_state(from)) throw std::out_of_range("unknown automaton state " + std::to_string(from));
  std::set<StateId> seen{from};
  std::deque<StateId> queue{from};
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (StateId n : nba.successor_states(q))
      if (seen.insert(n).second) queue.push_back(n);
  }
  return seen;
}

std::vector<Edge> affected_edges(const Nba& nba, const std::set<StateId>& within, OccId failed) {
  std::vector<Edge> out;
  for (const auto& [edge, guard] : nba.edges()) {
    if (within.count(edge.from) == 0 || within.count(edge.to) == 0) continue;
    if (guard.mentions_positive(failed)) out.push_back(edge);
  }
  return out;
}

namespace {

// Iterative Tarjan; returns the SCC index of every vertex.
std::vector<int> strongly_connected(const std::vector<std::vector<int>>& adj, int& count) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;
  int next_index = 0;
  count = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, child] = call.back();
      if (child == 0 && index[v] == -1) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = 1;
      }
      if (child < adj[v].size()) {
        const int w = adj[v][child++];
        if (index[w] == -1) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      const int done = v;
      call.pop_back();
      if (!call.empty()) {
        const int parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comp;
}

}  // namespace

bool accepting_run_check(const Nba& nba, const LassoWord& w) {
  return accepting_run_check(nba, w, nba.initial());
}

bool accepting_run_check(const Nba& nba, const LassoWord& w, const std::set<StateId>& start) {
  if (w.loop.empty()) throw std::invalid_argument("lasso word has an empty loop");
  const int positions = static_cast<int>(w.length());
  const int states = nba.num_states();
  auto node = [positions](StateId q, int pos) { return q * positions + pos; };

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(states) * positions);
  for (const auto& [edge, guard] : nba.edges())
    for (int pos = 0; pos < positions; ++pos)
      if (guard.accepts(w.at(static_cast<std::size_t>(pos))))
        adj[node(edge.from, pos)].push_back(
            node(edge.to, static_cast<int>(w.successor(static_cast<std::size_t>(pos)))));

  // Restrict to the part reachable from the start states at position 0.
  std::vector<char> reach(adj.size(), 0);
  std::deque<int> queue;
  for (StateId q : start) {
    if (!nba.has_state(q)) continue;
    reach[node(q, 0)] = 1;
    queue.push_back(node(q, 0));
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int u : adj[v])
      if (!reach[u]) {
        reach[u] = 1;
        queue.push_back(u);
      }
  }
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (!reach[v]) adj[v].clear();

  int count = 0;
  const auto comp = strongly_connected(adj, count);
  std::vector<int> size(static_cast<std::size_t>(count), 0);
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (reach[v]) ++size[comp[v]];
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (!reach[v]) continue;
    const StateId q = static_cast<StateId>(v / positions);
    if (!nba.is_final(q)) continue;
    const bool self_loop = std::find(adj[v].begin(), adj[v].end(), static_cast<int>(v)) != adj[v].end();
    if (size[comp[v]] > 1 || self_loop) return true;
  }
  return false;
}

}  // namespace rtlp
