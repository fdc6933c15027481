#include "rtlp/mission.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "json.hpp"

namespace rtlp {

using json = nlohmann::ordered_json;

CompiledMission compile_mission(const Scenario& sc) {
  CompiledMission m;
  for (const auto& d : sc.predicates) m.table.declare(d);
  m.formula = parse_mission(sc.mission, m.table);
  m.table.expand_rebindings(sc.num_robots());
  m.nba = prune_multiskill(translate_ltl(m.formula), m.table);
  return m;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Accepted: return "ACCEPTED";
    case Verdict::Rejected: return "REJECTED";
    case Verdict::MissionInfeasibleAtBudget: return "MISSION_INFEASIBLE_AT_BUDGET";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool plan_accepted(const PrefixSuffixPlan& plan, const Nba& nba, const PredicateTable& table,
                   const WorldState& world) {
  try {
    const Labeler labeler(table, world.env());
    return accepting_run_check(nba, plan_word(plan, labeler, world), {plan.prefix.front().nba_state});
  } catch (const WorldError&) {
    return false;
  }
}

std::vector<Edge> repaired_edges(const RepairResult& r) {
  std::vector<Edge> out;
  for (const auto& c : r.clauses) out.push_back(c.edge);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<OccId> falsified(const RepairResult& r) {
  std::set<OccId> out;
  for (const auto& c : r.clauses)
    if (c.outcome == ClauseOutcome::Falsified) out.insert(c.failed);
  return {out.begin(), out.end()};
}

EventReport repair_event(const FailureBatch& batch, const Nba& nba, StateId q, const PredicateTable& table,
                         const WorldState& world, bool timings) {
  EventReport ev;
  ev.time = batch.time;
  ev.events = batch.events;
  const auto start = Clock::now();
  RepairOptions ro;
  ro.timings = timings;
  ev.repair = repair_all(nba, q, failed_predicates(nba, table, world), table, world, ro);
  if (timings) ev.repair_ms = ms_since(start);
  ev.falsified = falsified(ev.repair);
  return ev;
}

}  // namespace

MissionReport run_mission(const Scenario& sc, const RunOptions& options) {
  CompiledMission m = compile_mission(sc);
  MissionReport rep;
  rep.scenario = sc.name;
  rep.seed = options.seed.value_or(sc.seed);
  rep.timings = options.timings;
  rep.nba_states = m.nba.num_states();
  rep.nba_edges = static_cast<int>(m.nba.edges().size());
  const int tree_budget = options.budget.value_or(sc.budgets.tree);

  Nba nba = m.nba;
  WorldState world = sc.initial_world();
  std::vector<TraceStep> history;

  auto start = Clock::now();
  std::optional<PrefixSuffixPlan> plan;
  {
    const PlanContext ctx(nba, m.table, world);
    PlanOptions po;
    po.budget = tree_budget;
    po.seed = rep.seed;
    po.attempts = sc.budgets.attempts;
    plan = plan_mission(ctx, world.positions(), po, &rep.offline_stats);
  }
  if (options.timings) rep.offline_ms = ms_since(start);
  rep.offline_found = plan.has_value();
  int root_time = 0;
  if (plan) {
    rep.offline_T = plan->T();
    rep.offline_K = plan->K();
    rep.offline_accepted = plan_accepted(*plan, nba, m.table, world);
  }

  for (std::size_t i = 0; plan && i < sc.failures.size(); ++i) {
    const FailureBatch& batch = sc.failures[i];
    const int now = batch.time - 1;  // time of the node the team is at
    for (int t = root_time; t < now; ++t) history.push_back(TraceStep{t, Phase::History, plan->at(t - root_time)});
    const int k = current_index(*plan, now - root_time);
    const PlanNode current = plan->at(now - root_time);
    world = world.with_positions(current.positions, now).apply_failure(batch.events);

    EventReport ev = repair_event(batch, nba, current.nba_state, m.table, world, options.timings);
    nba = ev.repair.nba;

    start = Clock::now();
    const PlanContext ctx(nba, m.table, world);
    ReplanOptions ro;
    ro.budget = tree_budget;
    ro.total_budget = sc.budgets.total;
    ro.attempts = sc.budgets.attempts;
    ro.seed = splitmix(rep.seed + 0x9e37ULL * (i + 1));
    auto revised = replan(*plan, k, repaired_edges(ev.repair), ctx, ro, ev.replan);
    if (options.timings) ev.replan_ms = ms_since(start);
    ev.plan_found = revised.has_value();
    if (revised) ev.plan_accepted = plan_accepted(*revised, nba, m.table, world);
    rep.events.push_back(std::move(ev));
    plan = std::move(revised);
    root_time = now;
  }

  rep.final_nba = nba;
  rep.table = m.table;
  if (!plan) {
    rep.verdict = Verdict::MissionInfeasibleAtBudget;
    rep.trace.num_robots = world.num_robots();
    rep.trace.caps = world.all_caps();
    rep.trace.steps = history;
    return rep;
  }
  rep.trace = make_trace(history, *plan, root_time, world.all_caps());
  rep.final_plan = std::move(plan);
  const TraceVerdict tv = check_trace(rep.trace, nba, m.table, world.env());
  rep.verdict = tv.ok() ? Verdict::Accepted : Verdict::Rejected;
  return rep;
}

std::vector<EventReport> repair_schedule(const Scenario& sc, const CompiledMission& mission,
                                         const PrefixSuffixPlan& plan) {
  std::vector<EventReport> out;
  Nba nba = mission.nba;
  WorldState world = sc.initial_world();
  for (const auto& batch : sc.failures) {
    const int now = batch.time - 1;
    const PlanNode current = plan.at(now);
    world = world.with_positions(current.positions, now).apply_failure(batch.events);
    out.push_back(repair_event(batch, nba, current.nba_state, mission.table, world, false));
    nba = out.back().repair.nba;
  }
  return out;
}

std::string clause_to_string(const Clause& c, const PredicateTable& table) {
  std::string s;
  auto add = [&s](const std::string& lit) {
    if (!s.empty()) s += " & ";
    s += lit;
  };
  for (OccId id : c.pos) add(table.at(id).name);
  for (OccId id : c.neg) add("!" + table.at(id).name);
  return s.empty() ? "true" : s;
}

namespace {

json events_json(const std::vector<EventReport>& events, const PredicateTable& table, const Environment& env,
                 bool timings, bool with_replan) {
  json arr = json::array();
  for (const auto& ev : events) {
    json e;
    e["time"] = ev.time;
    json fails = json::array();
    for (const auto& f : ev.events)
      fails.push_back({{"robot", f.robot}, {"skill", f.skill ? json(env.skill_name(*f.skill)) : json("ALL")}});
    e["failures"] = fails;
    json failed = json::array();
    for (OccId id : ev.repair.failed) failed.push_back(table.at(id).name);
    e["failed_predicates"] = failed;
    json fals = json::array();
    for (OccId id : ev.falsified) fals.push_back(table.at(id).name);
    e["falsified"] = fals;
    e["affected_edges"] = ev.repair.affected_edges;
    e["removed_edges"] = ev.repair.removed_edges;
    json clauses = json::array();
    for (const auto& c : ev.repair.clauses) {
      json cj;
      cj["failed"] = table.at(c.failed).name;
      cj["edge"] = {c.edge.from, c.edge.to};
      cj["before"] = clause_to_string(c.before, table);
      cj["outcome"] = c.outcome == ClauseOutcome::Reassigned ? "reassigned" : "falsified";
      cj["path"] = c.path;
      cj["reassignments"] = c.reassignments();
      if (c.after) cj["after"] = clause_to_string(*c.after, table);
      if (timings) cj["elapsed_ms"] = c.elapsed_ms;
      clauses.push_back(cj);
    }
    e["clauses"] = clauses;
    if (with_replan) {
      json r;
      r["mode"] = mode_name(ev.replan.mode);
      r["trees"] = ev.replan.trees;
      r["iterations"] = ev.replan.stats.iterations;
      r["tree_size"] = ev.replan.stats.tree_size;
      json replaced = json::array();
      for (const auto& [a, b] : ev.replan.replaced) replaced.push_back({a, b});
      r["replaced"] = replaced;
      r["suffix_from_scratch"] = ev.replan.suffix_from_scratch;
      r["global_fallback"] = ev.replan.global_fallback;
      r["plan_found"] = ev.plan_found;
      r["plan_accepted"] = ev.plan_accepted;
      e["replan"] = r;
    }
    if (timings) e["timings_ms"] = {{"repair", ev.repair_ms}, {"replan", ev.replan_ms}};
    arr.push_back(e);
  }
  return arr;
}

}  // namespace

std::string repairs_to_json(const std::vector<EventReport>& events, const PredicateTable& table,
                            const Environment& env, bool timings) {
  json doc;
  doc["format"] = "rtlp-repairs";
  doc["version"] = 1;
  doc["events"] = events_json(events, table, env, timings, false);
  return doc.dump(2) + "\n";
}

std::string report_to_json(const MissionReport& r, const Environment& env) {
  json doc;
  doc["format"] = "rtlp-report";
  doc["version"] = 1;
  doc["scenario"] = r.scenario;
  doc["seed"] = r.seed;
  doc["automaton"] = {{"states", r.nba_states}, {"edges", r.nba_edges}};
  json off;
  off["found"] = r.offline_found;
  off["accepted"] = r.offline_accepted;
  off["T"] = r.offline_T;
  off["K"] = r.offline_K;
  off["iterations"] = r.offline_stats.iterations;
  off["tree_size"] = r.offline_stats.tree_size;
  if (r.timings) off["ms"] = r.offline_ms;
  doc["offline"] = off;
  doc["events"] = events_json(r.events, r.table, env, r.timings, true);
  doc["final_automaton"] = {{"states", r.final_nba.num_states()},
                            {"edges", static_cast<int>(r.final_nba.edges().size())}};
  if (r.final_plan) doc["final_plan"] = {{"T", r.final_plan->T()}, {"K", r.final_plan->K()}};
  doc["verdict"] = verdict_name(r.verdict);
  return doc.dump(2) + "\n";
}

}  // namespace rtlp
