#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtlp/ltl.hpp"
#include "rtlp/nba.hpp"
#include "rtlp/planner.hpp"
#include "rtlp/replan.hpp"
#include "rtlp/resilience.hpp"
#include "rtlp/scenario.hpp"
#include "rtlp/trace.hpp"

namespace rtlp {

/// Mission formula and its pruned automaton. Rebound copies of every
/// assigned occurrence are created for all robots of the scenario.
struct CompiledMission {
  PredicateTable table;
  Formula formula;
  Nba nba;
};

CompiledMission compile_mission(const Scenario& sc);

enum class Verdict { Accepted, Rejected, MissionInfeasibleAtBudget };
const char* verdict_name(Verdict v);

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the scenario seed
  std::optional<int> budget;          // overrides the per-tree budget
  /// Record wall-clock times; reports are then no longer reproducible.
  bool timings = false;
};

struct EventReport {
  int time = 0;
  std::vector<FailureEvent> events;
  RepairResult repair;
  std::vector<OccId> falsified;  // failed occurrences dropped from some clause
  ReplanReport replan;
  bool plan_found = false;
  bool plan_accepted = false;  // new plan against the repaired automaton
  double repair_ms = 0.0;
  double replan_ms = 0.0;
};

struct MissionReport {
  std::string scenario;
  std::uint64_t seed = 0;
  PredicateTable table;
  int nba_states = 0;
  int nba_edges = 0;
  bool offline_found = false;
  bool offline_accepted = false;
  int offline_T = 0;
  int offline_K = 0;
  SearchStats offline_stats;
  double offline_ms = 0.0;
  std::vector<EventReport> events;
  Verdict verdict = Verdict::MissionInfeasibleAtBudget;
  Nba final_nba;
  std::optional<PrefixSuffixPlan> final_plan;
  Trace trace;
  bool timings = false;
};

/// Plans offline, executes the plan, and at every scheduled failure repairs
/// the automaton and revises the plan.
MissionReport run_mission(const Scenario& sc, const RunOptions& options = {});

/// Repairs for the scenario's failure schedule applied to a saved plan,
/// without replanning. For a schedule with a single failure time this is
/// the repair `run_mission` performs.
std::vector<EventReport> repair_schedule(const Scenario& sc, const CompiledMission& mission,
                                         const PrefixSuffixPlan& plan);

std::string clause_to_string(const Clause& c, const PredicateTable& table);
std::string repairs_to_json(const std::vector<EventReport>& events, const PredicateTable& table,
                            const Environment& env, bool timings = false);
std::string report_to_json(const MissionReport& report, const Environment& env);

}  // namespace rtlp
