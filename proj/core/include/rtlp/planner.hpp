#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "rtlp/nba.hpp"
#include "rtlp/world.hpp"

namespace rtlp {

/// SplitMix64 finalizer; used to derive independent seeds.
std::uint64_t splitmix(std::uint64_t x);

/// Product state q(t) = [p(t), s(t), q_B(t)].
struct PlanNode {
  std::vector<Cell> positions;
  ActionVector actions;
  StateId nba_state = 0;

  bool operator==(const PlanNode&) const = default;
  bool same_place(const PlanNode& o) const { return positions == o.positions && actions == o.actions; }
};

using PlanPath = std::vector<PlanNode>;

/// Lasso plan. prefix = q(0..T); suffix = q(T+1..T+K) with suffix.back()
/// equal to q(T), so the suffix repeats forever. The label of q(0) is never
/// read: the run starts in q(0)'s automaton state and reads L(q(1)) first.
struct PrefixSuffixPlan {
  PlanPath prefix;
  PlanPath suffix;

  int T() const { return static_cast<int>(prefix.size()) - 1; }
  int K() const { return static_cast<int>(suffix.size()); }
  /// Node executed at time t, unrolling the suffix.
  const PlanNode& at(int t) const;
  /// prefix followed by suffix (length T + K + 1).
  PlanPath concat() const;
};

/// Positions and actions only.
struct StrippedStep {
  std::vector<Cell> positions;
  ActionVector actions;
  bool operator==(const StrippedStep&) const = default;
};
std::vector<StrippedStep> strip_automaton(const PlanPath& path);

/// Everything the planner needs about one planning problem. Holds
/// references; the automaton, table and world must outlive it.
class PlanContext {
 public:
  PlanContext(const Nba& nba, const PredicateTable& table, const WorldState& world);

  const Nba& nba() const { return *nba_; }
  const PredicateTable& table() const { return *table_; }
  const WorldState& world() const { return *world_; }
  const Labeler& labeler() const { return labeler_; }
  int num_robots() const { return world_->num_robots(); }

  Symbol label(const PlanNode& n) const;

  /// Does `child` follow `parent` under the dynamics, the live skills and the
  /// automaton transition parent.q_B -> child.q_B?
  bool legal_hop(const PlanNode& parent, const PlanNode& child) const;
  /// Dynamics and skills only.
  bool legal_motion(const std::vector<Cell>& from, const std::vector<Cell>& to, const ActionVector& actions) const;

  /// Clauses that live robots can still satisfy, per transition.
  struct Option {
    StateId to;
    std::vector<const Clause*> clauses;
  };
  const std::vector<Option>& options(StateId q) const { return options_.at(static_cast<std::size_t>(q)); }

  /// Final states that lie on a cycle of realizable transitions.
  const std::set<StateId>& live_finals() const { return live_finals_; }

  /// Cells whose occupation violates a negated whole-team presence predicate.
  const std::set<Cell>& hazard_cells() const { return hazards_; }
  const std::vector<int>& field_to_region(LandmarkId l, bool avoid_hazards) const;
  const std::vector<int>& field_to_cell(Cell c) const;

 private:
  const Nba* nba_;
  const PredicateTable* table_;
  const WorldState* world_;
  Labeler labeler_;
  std::vector<std::vector<Option>> options_;
  std::set<Cell> hazards_;
  std::set<StateId> live_finals_;
  mutable std::map<LandmarkId, std::vector<int>> safe_fields_;
  mutable std::map<Cell, std::vector<int>> cell_fields_;
};

/// What a tree search is looking for.
struct SearchGoal {
  /// Any node whose automaton state is in `finals` is a goal.
  std::set<StateId> finals;
  /// Any node from which one of these nodes is a legal next step is a goal.
  std::vector<PlanNode> connect;
};

struct SearchOptions {
  int budget = 50000;
  std::uint64_t seed = 1;
  /// Fraction of iterations that steer toward progress instead of sampling.
  double bias = 0.5;
};

struct SearchResult {
  PlanPath path;          // root ... goal node
  int goal_index = -1;    // index into SearchGoal::connect, -1 for a final state
  int iterations = 0;
  std::size_t tree_size = 0;
};

struct SearchStats {
  int iterations = 0;
  std::size_t tree_size = 0;
};

/// Grows a tree from `roots` until a goal node appears or the budget runs
/// out. Deterministic for a given seed.
std::optional<SearchResult> plan_prefix(const std::vector<PlanNode>& roots, const PlanContext& ctx,
                                        const SearchGoal& goal, const SearchOptions& options,
                                        SearchStats* stats = nullptr);

/// Cycle from `anchor` back to `anchor`: the returned nodes are
/// q(T+1..T+K) with the last one equal to the anchor.
std::optional<PlanPath> plan_suffix(const PlanNode& anchor, const PlanContext& ctx, const SearchOptions& options,
                                    SearchStats* stats = nullptr);

struct PlanOptions {
  int budget = 50000;      // per tree
  std::uint64_t seed = 1;
  int attempts = 4;         // prefix/suffix pairs tried before giving up
};

/// Full lasso plan from the given start positions and the initial automaton
/// states.
std::optional<PrefixSuffixPlan> plan_mission(const PlanContext& ctx, const std::vector<Cell>& start,
                                             const PlanOptions& options, SearchStats* stats = nullptr);

/// Plan with prefix rooted at `root` (its label is not read).
std::optional<PrefixSuffixPlan> plan_from(const PlanContext& ctx, const PlanNode& root, const PlanOptions& options,
                                          SearchStats* stats = nullptr);

/// Lasso word of a plan: stem = labels of q(1..T), loop = labels of the suffix.
LassoWord plan_word(const PrefixSuffixPlan& plan, const Labeler& labeler, const WorldState& world);

}  // namespace rtlp
