#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "rtlp/nba.hpp"
#include "rtlp/world.hpp"

namespace rtlp {

/// Assigned occurrences mentioned positively by some guard whose robot no
/// longer has the required skill. Sorted.
std::vector<OccId> failed_predicates(const Nba& nba, const PredicateTable& table, const WorldState& state);
/// Same test over an explicit list of occurrences.
std::vector<OccId> failed_predicates(const std::vector<OccId>& occurrences, const PredicateTable& table,
                                     const WorldState& state);

/// Reallocation view of one DNF clause around one failed occurrence.
struct ClauseContext {
  Clause clause;
  OccId failed = -1;
  /// Robots named by the clause plus members of teams of negated team
  /// predicates.
  std::set<RobotId> robots;
  /// Positive, non-failed occurrences assigned to each busy robot. Robots
  /// missing from the map have g = empty.
  std::map<RobotId, std::vector<OccId>> g;
  /// Negated occurrences per robot: the ones robot i alone can make true.
  std::map<RobotId, std::vector<OccId>> hazards;

  bool busy(RobotId i) const { return g.count(i) != 0; }
};

ClauseContext build_context(const Clause& clause, OccId failed, const PredicateTable& table,
                            const WorldState& state);

/// Predicates of robot i relevant to the context: the negated ones it can
/// make true and the i-copies of the clause's positive occurrences it has
/// the skill for.
std::vector<OccId> robot_predicates(const ClauseContext& ctx, RobotId i, const PredicateTable& table,
                                    const WorldState& state);

/// Symbols of robot i that make the clause false whatever the other robots
/// do: those making one of its negated predicates true.
std::vector<Symbol> forbidden_symbols(const ClauseContext& ctx, RobotId i, const PredicateTable& table,
                                      const WorldState& state);

/// Can robot a take over `occurrences` (rebound to a) without generating a
/// forbidden symbol?
bool can_take_over(const ClauseContext& ctx, RobotId a, const std::vector<OccId>& occurrences,
                   const PredicateTable& table, const WorldState& state);

/// Skill a robot needs for a bundle: the non-mobility one if present.
SkillId bundle_skill(const std::vector<OccId>& bundle, const PredicateTable& table);

/// Shortest hand-off chain p(0..P): p(0) is the failed robot, p(1) takes the
/// failed occurrence, p(k+1) takes g(p(k)), and g(p(P)) is empty.
std::optional<std::vector<RobotId>> bfs_reassign(const ClauseContext& ctx, const PredicateTable& table,
                                                 const WorldState& state);

/// Clause with the occurrences moved along `path`.
Clause apply_reassignment(const std::vector<RobotId>& path, const ClauseContext& ctx, const PredicateTable& table);

enum class ClauseOutcome { Reassigned, Falsified };

struct ClauseRepair {
  OccId failed = -1;
  Edge edge;
  Clause before;
  ClauseOutcome outcome = ClauseOutcome::Falsified;
  std::optional<Clause> after;
  std::vector<RobotId> path;
  double elapsed_ms = 0.0;

  int reassignments() const { return path.empty() ? 0 : static_cast<int>(path.size()) - 1; }
};

struct RepairOptions {
  /// Record per-clause wall time (makes reports non-reproducible).
  bool timings = false;
  /// Process affected edges and clauses in a shuffled order.
  std::optional<std::uint64_t> shuffle_seed;
};

struct RepairResult {
  Nba nba;
  std::vector<OccId> failed;
  std::vector<ClauseRepair> clauses;  // sorted by (failed, edge, before)
  int affected_edges = 0;
  int removed_edges = 0;
};

/// Repairs every transition reachable from q_cur whose guard needs a failed
/// occurrence. Each clause is repaired independently; unfixable clauses are
/// dropped (the occurrence becomes FALSE) and transitions left with no
/// clause are removed.
RepairResult repair_all(const Nba& nba, StateId q_cur, const std::vector<OccId>& failed,
                        const PredicateTable& table, const WorldState& state, const RepairOptions& options = {});

}  // namespace rtlp
