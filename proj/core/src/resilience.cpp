#include "rtlp/resilience.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <random>

namespace rtlp {

std::vector<OccId> failed_predicates(const std::vector<OccId>& occurrences, const PredicateTable& table,
                                     const WorldState& state) {
  std::vector<OccId> out;
  for (OccId id : occurrences) {
    const Predicate& p = table.at(id);
    if (p.robot && !state.caps(*p.robot).has(p.skill)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<OccId> failed_predicates(const Nba& nba, const PredicateTable& table, const WorldState& state) {
  std::vector<OccId> positive;
  for (const auto& [e, g] : nba.edges())
    for (const auto& c : g.dnf()) positive.insert(positive.end(), c.pos.begin(), c.pos.end());
  return failed_predicates(positive, table, state);
}

ClauseContext build_context(const Clause& clause, OccId failed, const PredicateTable& table,
                            const WorldState& state) {
  if (!clause.has_positive(failed)) throw std::invalid_argument("clause does not need the failed occurrence");
  const Predicate& f = table.at(failed);
  if (!f.robot) throw std::invalid_argument("failed occurrence has no robot");
  ClauseContext ctx;
  ctx.clause = clause;
  ctx.failed = failed;
  for (OccId id : clause.pos) {
    const Predicate& p = table.at(id);
    if (!p.robot) continue;
    ctx.robots.insert(*p.robot);
    if (id == failed || *p.robot == *f.robot) continue;
    ctx.g[*p.robot].push_back(id);
  }
  for (OccId id : clause.neg) {
    const Predicate& p = table.at(id);
    if (p.robot) {
      ctx.robots.insert(*p.robot);
      ctx.hazards[*p.robot].push_back(id);
      ctx.g.erase(*p.robot);
      continue;
    }
    for (RobotId i : state.team(p.team)) {
      ctx.robots.insert(i);
      if (state.caps(i).has(p.skill)) ctx.hazards[i].push_back(id);
    }
  }
  for (auto& [i, h] : ctx.hazards) {
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
  }
  return ctx;
}

std::vector<OccId> robot_predicates(const ClauseContext& ctx, RobotId i, const PredicateTable& table,
                                    const WorldState& state) {
  std::vector<OccId> out;
  if (auto it = ctx.hazards.find(i); it != ctx.hazards.end()) out = it->second;
  for (OccId id : ctx.clause.pos) {
    const Predicate& p = table.at(id);
    if (p.robot && state.caps(i).has(p.skill)) out.push_back(table.rebind(id, i));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Symbol> forbidden_symbols(const ClauseContext& ctx, RobotId i, const PredicateTable& table,
                                      const WorldState& state) {
  auto it = ctx.hazards.find(i);
  if (it == ctx.hazards.end() || ctx.robots.count(i) == 0) return {};
  std::vector<Symbol> out;
  for (const Symbol& s : robot_symbols(state, i, robot_predicates(ctx, i, table, state), table))
    if (std::any_of(it->second.begin(), it->second.end(), [&s](OccId h) { return s.contains(h); }))
      out.push_back(s);
  return out;
}

SkillId bundle_skill(const std::vector<OccId>& bundle, const PredicateTable& table) {
  SkillId c = kMobility;
  for (OccId id : bundle)
    if (!table.at(id).is_mobility()) c = table.at(id).skill;
  return c;
}

bool can_take_over(const ClauseContext& ctx, RobotId a, const std::vector<OccId>& occurrences,
                   const PredicateTable& table, const WorldState& state) {
  if (occurrences.empty()) return true;
  const Environment& env = state.env();
  const CapabilityVector& caps = state.caps(a);
  Labeler labeler(table, env);
  std::vector<const Predicate*> wanted;
  for (OccId id : occurrences) wanted.push_back(&table.at(table.rebind(id, a)));
  const SkillId skill = bundle_skill(occurrences, table);
  const SkillId action = skill == kMobility ? kNoSkill : skill;
  std::vector<const Predicate*> hazards;
  if (auto it = ctx.hazards.find(a); it != ctx.hazards.end())
    for (OccId h : it->second) hazards.push_back(&table.at(h));
  for (Cell cell : env.region(wanted.front()->location)) {
    const bool ok = std::all_of(wanted.begin(), wanted.end(), [&](const Predicate* p) {
      return labeler.robot_satisfies(*p, a, caps, cell, action);
    });
    if (!ok) continue;
    const bool safe = std::none_of(hazards.begin(), hazards.end(), [&](const Predicate* p) {
      return labeler.robot_satisfies(*p, a, caps, cell, action);
    });
    if (safe) return true;
  }
  return false;
}

namespace {

// A terminal robot keeps its own positives in the clause; the bundle it
// receives must not ask it to be elsewhere or to apply a second skill.
bool fits_with_kept(const ClauseContext& ctx, RobotId a, const std::vector<OccId>& bundle,
                    const PredicateTable& table) {
  Clause c;
  for (OccId id : ctx.clause.pos) {
    const Predicate& p = table.at(id);
    if (id != ctx.failed && p.robot == a) c.pos.push_back(id);
  }
  if (c.pos.empty()) return true;
  for (OccId id : bundle) c.pos.push_back(table.rebind(id, a));
  c.normalize();
  return clause_respects_one_skill(c, table);
}

}  // namespace

std::optional<std::vector<RobotId>> bfs_reassign(const ClauseContext& ctx, const PredicateTable& table,
                                                 const WorldState& state) {
  const RobotId root = *table.at(ctx.failed).robot;
  std::deque<RobotId> queue{root};
  std::set<RobotId> explored;  // the root is deliberately left out
  std::map<RobotId, RobotId> parent;
  bool at_root = true;
  while (!queue.empty()) {
    const RobotId a = queue.front();
    queue.pop_front();
    if (!ctx.busy(a) && !at_root) {
      std::vector<RobotId> path{a};
      for (RobotId v = a; v != root || path.size() == 1;) {
        v = parent.at(v);
        path.push_back(v);
        if (v == root) break;
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    std::vector<OccId> handed;
    if (at_root) handed = {ctx.failed};
    else handed = ctx.g.at(a);
    at_root = false;
    for (RobotId next : state.team(bundle_skill(handed, table))) {
      if (next == a || explored.count(next) != 0) continue;
      if (!can_take_over(ctx, next, handed, table, state)) continue;
      if (!ctx.busy(next) && !fits_with_kept(ctx, next, handed, table)) continue;
      explored.insert(next);
      parent[next] = a;
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

Clause apply_reassignment(const std::vector<RobotId>& path, const ClauseContext& ctx, const PredicateTable& table) {
  if (path.size() < 2) throw std::invalid_argument("a reassignment path moves at least the failed occurrence");
  std::map<OccId, OccId> moved;
  moved[ctx.failed] = table.rebind(ctx.failed, path[1]);
  for (std::size_t k = 1; k + 1 < path.size(); ++k)
    for (OccId id : ctx.g.at(path[k])) moved[id] = table.rebind(id, path[k + 1]);
  Clause out = ctx.clause;
  for (OccId& id : out.pos)
    if (auto it = moved.find(id); it != moved.end()) id = it->second;
  out.normalize();
  return out;
}

RepairResult repair_all(const Nba& nba, StateId q_cur, const std::vector<OccId>& failed,
                        const PredicateTable& table, const WorldState& state, const RepairOptions& options) {
  RepairResult result;
  result.nba = nba;
  result.failed = failed;
  std::sort(result.failed.begin(), result.failed.end());
  result.failed.erase(std::unique(result.failed.begin(), result.failed.end()), result.failed.end());
  std::mt19937_64 rng(options.shuffle_seed.value_or(0));
  Nba& cur = result.nba;
  for (OccId pi : result.failed) {
    const auto within = reachable_states(cur, q_cur);
    auto edges = affected_edges(cur, within, pi);
    result.affected_edges += static_cast<int>(edges.size());
    if (options.shuffle_seed) std::shuffle(edges.begin(), edges.end(), rng);
    std::map<Edge, Dnf> revised;
    for (const Edge& e : edges) {
      const Dnf clauses = cur.guard(e)->dnf();
      std::vector<std::size_t> order(clauses.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      if (options.shuffle_seed) std::shuffle(order.begin(), order.end(), rng);
      Dnf kept;
      for (std::size_t i : order) {
        const Clause& c = clauses[i];
        if (!c.has_positive(pi)) {
          kept.push_back(c);
          continue;
        }
        const auto start = std::chrono::steady_clock::now();
        ClauseRepair rep;
        rep.failed = pi;
        rep.edge = e;
        rep.before = c;
        const ClauseContext ctx = build_context(c, pi, table, state);
        if (auto path = bfs_reassign(ctx, table, state)) {
          rep.outcome = ClauseOutcome::Reassigned;
          rep.path = *path;
          rep.after = apply_reassignment(*path, ctx, table);
          kept.push_back(*rep.after);
        }
        if (options.timings)
          rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        result.clauses.push_back(std::move(rep));
      }
      revised.emplace(e, std::move(kept));
    }
    for (auto& [e, clauses] : revised) {
      if (clauses.empty()) {
        cur.remove_edge(e);
        ++result.removed_edges;
      } else {
        cur.set_guard(e, Guard::from_clauses(clauses));
      }
    }
  }
  std::sort(result.clauses.begin(), result.clauses.end(), [](const ClauseRepair& a, const ClauseRepair& b) {
    if (a.failed != b.failed) return a.failed < b.failed;
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.before < b.before;
  });
  return result;
}

}  // namespace rtlp
