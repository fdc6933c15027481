#pragma once

#include <compare>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "rtlp/guard.hpp"
#include "rtlp/ltl.hpp"

namespace rtlp {

using StateId = int;

struct Edge {
  StateId from = 0;
  StateId to = 0;
  auto operator<=>(const Edge&) const = default;
  bool operator==(const Edge&) const = default;
};

/// Nondeterministic Büchi automaton with Boolean guards on transitions.
/// A transition is present iff its guard is not FALSE.
class Nba {
 public:
  Nba() = default;
  explicit Nba(int num_states);

  int num_states() const { return num_states_; }
  StateId add_state();

  const std::set<StateId>& initial() const { return initial_; }
  const std::set<StateId>& final() const { return final_; }
  void set_initial(StateId q, bool on = true);
  void set_final(StateId q, bool on = true);
  bool is_initial(StateId q) const { return initial_.count(q) != 0; }
  bool is_final(StateId q) const { return final_.count(q) != 0; }

  /// Replaces the guard of (from, to); a FALSE guard removes the transition.
  void set_guard(Edge e, Guard g);
  /// ORs `g` into the existing guard of (from, to).
  void add_guard(Edge e, const Guard& g);
  void remove_edge(Edge e);

  const Guard* guard(Edge e) const;
  const std::map<Edge, Guard>& edges() const { return edges_; }

  /// Outgoing transitions of q in ascending target order.
  std::vector<std::pair<StateId, const Guard*>> successors(StateId q) const;
  std::vector<StateId> successor_states(StateId q) const;

  bool has_state(StateId q) const { return q >= 0 && q < num_states_; }

 private:
  void check_state(StateId q) const;

  int num_states_ = 0;
  std::set<StateId> initial_;
  std::set<StateId> final_;
  std::map<Edge, Guard> edges_;
};

struct TranslateOptions {
  /// Merge states with identical acceptance and outgoing transitions.
  bool simplify = false;
};

/// Tableau translation of an NNF formula into a state-based Büchi automaton.
/// A transition (q', q'') is guarded by the literals that must hold on the
/// letter read while entering q''.
Nba translate(const Formula& nnf, const TranslateOptions& options = {});

/// Convenience: expand sugar, NNF, translate.
Nba translate_ltl(const Formula& f, const TranslateOptions& options = {});

/// Deletes DNF clauses that ask one robot to satisfy two positive predicates
/// with different (skill, location) pairs. A skill predicate together with a
/// mobility predicate at the same location is kept.
Nba prune_multiskill(const Nba& nba, const PredicateTable& table);

/// True when the clause asks no robot for two incompatible positive predicates.
bool clause_respects_one_skill(const Clause& c, const PredicateTable& table);

/// Forward-reachable states, including `from`.
std::set<StateId> reachable_states(const Nba& nba, StateId from);

/// Transitions among `within` whose guard mentions `failed` positively,
/// sorted by (from, to).
std::vector<Edge> affected_edges(const Nba& nba, const std::set<StateId>& within, OccId failed);

/// Does some run over `w` starting in the initial states visit a final
/// state infinitely often?
bool accepting_run_check(const Nba& nba, const LassoWord& w);
bool accepting_run_check(const Nba& nba, const LassoWord& w, const std::set<StateId>& start);

}  // namespace rtlp
