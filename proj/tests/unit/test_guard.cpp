#include <gtest/gtest.h>

#include "support.hpp"

using namespace rtlp;
using namespace rtlp::testing;

namespace {

// Propositional formula built from and/or/not over atoms.
Formula random_guard(std::mt19937_64& rng, int atoms, int depth) {
  std::uniform_int_distribution<int> kind(0, depth <= 0 ? 1 : 4), atom(0, atoms - 1);
  switch (kind(rng)) {
    case 0: return Formula::atom(atom(rng));
    case 1: return Formula::negate(Formula::atom(atom(rng)));
    case 2: return Formula::conj(random_guard(rng, atoms, depth - 1), random_guard(rng, atoms, depth - 1));
    case 3: return Formula::disj(random_guard(rng, atoms, depth - 1), random_guard(rng, atoms, depth - 1));
    default: return Formula::negate(random_guard(rng, atoms, depth - 1));
  }
}

bool dnf_accepts(const Dnf& d, const Symbol& s) {
  for (const auto& c : d)
    if (c.satisfied_by(s)) return true;
  return false;
}

}  // namespace

TEST(Guard, ClauseSatisfaction) {
  Clause c{{0, 2}, {1}};
  EXPECT_TRUE(c.satisfied_by(Symbol{0, 2}));
  EXPECT_TRUE(c.satisfied_by(Symbol{0, 2, 3}));
  EXPECT_FALSE(c.satisfied_by(Symbol{0, 1, 2}));
  EXPECT_FALSE(c.satisfied_by(Symbol{0}));
  EXPECT_EQ(c.atoms(), (std::vector<OccId>{0, 1, 2}));
}

TEST(Guard, DnfMatchesTruthTable) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const int atoms = 1 + static_cast<int>(rng() % 10);
    const Formula g = random_guard(rng, atoms, 4);
    const Dnf d = guard_to_dnf(g, kGuardDnfAtomCap);
    for (const auto& c : d) {
      std::vector<OccId> both;
      std::set_intersection(c.pos.begin(), c.pos.end(), c.neg.begin(), c.neg.end(), std::back_inserter(both));
      EXPECT_TRUE(both.empty()) << "contradictory clause in " << g.to_string();
    }
    for (const Symbol& s : all_symbols(atoms)) {
      const bool truth = guard_accepts(g, s);
      ASSERT_EQ(truth, dnf_accepts(d, s)) << g.to_string();
    }
    const Formula back = clauses_to_guard(d);
    for (const Symbol& s : all_symbols(atoms)) ASSERT_EQ(guard_accepts(g, s), guard_accepts(back, s));
  }
}

TEST(Guard, ConstantGuards) {
  EXPECT_EQ(guard_to_dnf(Formula::tt()).size(), 1U);
  EXPECT_TRUE(guard_to_dnf(Formula::tt()).front().pos.empty());
  EXPECT_TRUE(guard_to_dnf(Formula::ff()).empty());
  EXPECT_TRUE(Guard(Formula::conj(Formula::atom(0), Formula::negate(Formula::atom(0)))).is_false());
}

TEST(Guard, MentionsPositive) {
  const Guard g(parse_letters("a & !b | c"));
  EXPECT_TRUE(g.mentions_positive(0));
  EXPECT_FALSE(g.mentions_positive(1));
  EXPECT_TRUE(g.mentions(1));
  EXPECT_FALSE(g.mentions(3));
}

TEST(Guard, AtomCapIsEnforced) {
  Formula g = Formula::atom(0);
  for (int i = 1; i < 30; ++i) g = Formula::conj(g, Formula::atom(i));
  EXPECT_THROW(guard_to_dnf(g, 20), DnfLimitError);
}
