#include <gtest/gtest.h>

#include "support.hpp"

using namespace rtlp;
using namespace rtlp::testing;

namespace {

int num_atoms(const Formula& f) {
  int n = 0;
  for (OccId id : f.atoms()) n = std::max(n, id + 1);
  return std::max(n, 1);
}

}  // namespace

// Language equivalence against the independent evaluator: exhaustive small
// lassos for formulas over at most three atoms, random lassos otherwise.
TEST(Translate, CorpusAgreesWithEvaluator) {
  std::mt19937_64 rng(3);
  for (const auto& text : corpus_formulas()) {
    const Formula f = parse_letters(text);
    const Nba nba = translate_ltl(f);
    const int atoms = num_atoms(f);
    if (atoms <= 3) {
      for (const LassoWord& w : all_lassos(atoms, 3, 3))
        ASSERT_EQ(accepting_run_check(nba, w), evaluate_on_word(f, w)) << text;
    } else {
      for (int i = 0; i < 2000; ++i) {
        const LassoWord w = random_lasso(rng, atoms, 4, 4);
        ASSERT_EQ(accepting_run_check(nba, w), evaluate_on_word(f, w)) << text;
      }
    }
  }
}

// Words read off accepting-looking walks hit the accepting side far more
// often than random words do.
TEST(Translate, WalksOfTheAutomatonAreModels) {
  std::mt19937_64 rng(4);
  for (const auto& text : corpus_formulas()) {
    const Formula f = parse_letters(text);
    const Nba nba = translate_ltl(f);
    for (int i = 0; i < 200; ++i) {
      const auto w = walk_lasso(rng, nba, 24);
      if (!w) continue;
      ASSERT_TRUE(accepting_run_check(nba, *w)) << text;
      ASSERT_TRUE(evaluate_on_word(f, *w)) << text;
    }
  }
}

TEST(Translate, RandomFormulas) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 150; ++i) {
    const Formula f = random_formula(rng, 3, 3);
    const Nba nba = translate_ltl(f);
    for (int j = 0; j < 40; ++j) {
      const LassoWord w = random_lasso(rng, 3, 3, 3);
      ASSERT_EQ(accepting_run_check(nba, w), evaluate_on_word(f, w)) << f.to_string();
    }
  }
}

TEST(Translate, SimplifyKeepsLanguage) {
  std::mt19937_64 rng(8);
  for (const auto& text : corpus_formulas()) {
    const Formula f = parse_letters(text);
    const Nba plain = translate_ltl(f);
    const Nba simple = translate_ltl(f, TranslateOptions{true});
    for (int i = 0; i < 300; ++i) {
      const LassoWord w = random_lasso(rng, num_atoms(f), 3, 3);
      ASSERT_EQ(accepting_run_check(plain, w), accepting_run_check(simple, w)) << text;
    }
  }
}

TEST(Translate, UnsatisfiableHasNoAcceptingRun) {
  const Nba nba = translate_ltl(parse_letters("G a & F !a"));
  for (const LassoWord& w : all_lassos(1, 2, 2)) EXPECT_FALSE(accepting_run_check(nba, w));
}

TEST(Translate, FixtureSizes) {
  EXPECT_EQ(fixture("scenario1").mission.nba.num_states(), 35);
  EXPECT_EQ(fixture("scenario1").mission.nba.edges().size(), 81U);
  EXPECT_EQ(fixture("scenario2").mission.nba.num_states(), 36);
  EXPECT_EQ(fixture("scenario2").mission.nba.edges().size(), 88U);
}

// Pruning only drops clauses that ask one robot for two things at once, and
// never changes acceptance of words whose letters respect that rule.
TEST(Translate, PruningIsSafe) {
  const PredicateTable& table = letter_table();
  std::mt19937_64 rng(9);
  for (const auto& text : corpus_formulas()) {
    const Formula f = parse_letters(text);
    const Nba full = translate_ltl(f);
    const Nba pruned = prune_multiskill(full, table);
    for (const auto& [e, g] : pruned.edges())
      for (const Clause& c : g.dnf()) {
        ASSERT_TRUE(one_skill_per_robot(c, table)) << text;
        ASSERT_TRUE(clause_respects_one_skill(c, table));
      }
    for (const auto& [e, g] : full.edges())
      for (const Clause& c : g.dnf()) ASSERT_EQ(one_skill_per_robot(c, table), clause_respects_one_skill(c, table));
    const int atoms = num_atoms(f);
    for (int i = 0; i < 500; ++i) {
      const LassoWord w = random_lasso(rng, atoms, 3, 3);
      bool realizable = true;
      for (const auto* part : {&w.stem, &w.loop})
        for (const Symbol& s : *part) realizable = realizable && one_skill_per_robot(Clause{s.ids(), {}}, table);
      if (realizable) {
        ASSERT_EQ(accepting_run_check(pruned, w), accepting_run_check(full, w)) << text;
      } else {
        ASSERT_FALSE(accepting_run_check(pruned, w) && !accepting_run_check(full, w)) << text;
      }
    }
  }
}

TEST(Translate, ReachableAndAffected) {
  const Fixture& fx = fixture("scenario1");
  const Nba& nba = fx.mission.nba;
  std::set<StateId> reach;
  for (StateId q0 : nba.initial()) reach.merge(reachable_states(nba, q0));
  EXPECT_EQ(static_cast<int>(reach.size()), nba.num_states());
  const OccId pi2 = *fx.mission.table.find("pi2");
  const auto affected = affected_edges(nba, reach, pi2);
  EXPECT_FALSE(affected.empty());
  for (const Edge& e : affected) EXPECT_TRUE(nba.guard(e)->mentions_positive(pi2));
  std::size_t expect = 0;
  for (const auto& [e, g] : nba.edges()) expect += g.mentions_positive(pi2) ? 1 : 0;
  EXPECT_EQ(affected.size(), expect);
}
