#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rtlp/hoa.hpp"
#include "rtlp/mission.hpp"

namespace rtlp::testing {

std::string fixture_path(const std::string& name);
/// Names of the bundled scenario fixtures.
const std::vector<std::string>& fixture_names();

/// Scenario plus compiled mission, loaded once per process.
struct Fixture {
  Scenario sc;
  CompiledMission mission;
};
const Fixture& fixture(const std::string& name);

// ---- formulas and words ---------------------------------------------------

/// Atoms a, b, c, d, e, f mapped to occurrence ids 0..5.
const std::map<std::string, OccId, std::less<>>& letter_atoms();
Formula parse_letters(const std::string& text);

/// Hand-picked formulas over at most six atoms, nesting depth at most five.
const std::vector<std::string>& corpus_formulas();

/// Random formula over atoms 0..atoms-1 with temporal depth at most `depth`.
Formula random_formula(std::mt19937_64& rng, int atoms, int depth);

/// All symbols over atoms 0..atoms-1.
std::vector<Symbol> all_symbols(int atoms);
/// Every lasso with stem length 0..max_stem and loop length 1..max_loop.
std::vector<LassoWord> all_lassos(int atoms, int max_stem, int max_loop);
LassoWord random_lasso(std::mt19937_64& rng, int atoms, int max_stem, int max_loop);

/// Lasso read along a random accepting-looking walk of `nba`: a path to a
/// final state and a cycle back through it, each letter chosen to satisfy
/// a random clause of the guard taken. Empty when the walk gets stuck.
std::optional<LassoWord> walk_lasso(std::mt19937_64& rng, const Nba& nba, int max_steps);

/// Predicate table over a..f spread across three robots, used to exercise
/// multi-skill pruning on corpus formulas.
const PredicateTable& letter_table();

/// Independent word construction for a plan: labels straight from the
/// environment, no planner code.
LassoWord word_of(const PrefixSuffixPlan& plan, const PredicateTable& table, const WorldState& world);

/// True when no robot is asked for two positive predicates that cannot hold
/// together, computed from the predicate fields directly.
bool one_skill_per_robot(const Clause& c, const PredicateTable& table);

// ---- reassignment oracles -------------------------------------------------

/// A random clause context in a small world: up to `max_robots` robots, up
/// to `max_preds` predicates in the clause and up to `max_skills` skills
/// including mobility. One positive assigned occurrence has failed.
struct ReassignCase {
  std::shared_ptr<const Environment> env;
  std::unique_ptr<PredicateTable> table;
  std::unique_ptr<WorldState> world;
  Clause clause;
  OccId failed = -1;
  std::string describe() const;
};
std::optional<ReassignCase> random_reassign_case(std::mt19937_64& rng, int max_robots, int max_preds,
                                                 int max_skills);

/// Shortest valid hand-off chain by exhaustive depth-first enumeration over
/// all robot sequences; validity is checked over every free cell of the
/// grid and every action the robot has.
std::optional<std::vector<RobotId>> dfs_reassign(const ClauseContext& ctx, const PredicateTable& table,
                                                 const WorldState& state);

/// Symbols of robot i (over the predicates `forbidden_symbols` considers)
/// that falsify the clause under every valuation of all other atoms.
std::vector<Symbol> forbidden_by_valuation(const ClauseContext& ctx, RobotId i, const PredicateTable& table,
                                           const WorldState& state);

}  // namespace rtlp::testing
