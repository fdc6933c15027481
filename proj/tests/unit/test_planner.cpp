#include <gtest/gtest.h>

#include "support.hpp"

using namespace rtlp;
using namespace rtlp::testing;

namespace {

// Grid moves and skills checked from the environment directly.
void expect_legal_motion(const PlanPath& path, const WorldState& world) {
  const Environment& env = world.env();
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    for (int j = 1; j <= world.num_robots(); ++j) {
      const auto k = static_cast<std::size_t>(j - 1);
      const Cell a = path[i].positions[k], b = path[i + 1].positions[k];
      ASSERT_LE(std::abs(a.x - b.x) + std::abs(a.y - b.y), 1);
      ASSERT_TRUE(env.free(b));
      const SkillId act = path[i + 1].actions[k];
      ASSERT_TRUE(act == kNoSkill || world.caps(j).has(act));
    }
}

void expect_sound(const PrefixSuffixPlan& plan, const Nba& nba, const PredicateTable& table, const WorldState& world) {
  ASSERT_FALSE(plan.prefix.empty());
  ASSERT_FALSE(plan.suffix.empty());
  EXPECT_EQ(plan.suffix.back(), plan.prefix.back());
  EXPECT_TRUE(nba.is_final(plan.prefix.back().nba_state));
  expect_legal_motion(plan.concat(), world);
  const LassoWord w = word_of(plan, table, world);
  EXPECT_TRUE(accepting_run_check(nba, w, {plan.prefix.front().nba_state}));
}

}  // namespace

TEST(Planner, OfflinePlansAreSound) {
  for (const char* name : {"scenario1", "scenario2", "factory12"}) {
    const Fixture& fx = fixture(name);
    const WorldState world = fx.sc.initial_world();
    const PlanContext ctx(fx.mission.nba, fx.mission.table, world);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      PlanOptions po;
      po.seed = seed;
      po.budget = fx.sc.budgets.tree;
      const auto plan = plan_mission(ctx, world.positions(), po);
      ASSERT_TRUE(plan) << name << " seed " << seed;
      EXPECT_EQ(plan->prefix.front().positions, world.positions());
      EXPECT_TRUE(fx.mission.nba.is_initial(plan->prefix.front().nba_state));
      expect_sound(*plan, fx.mission.nba, fx.mission.table, world);
    }
  }
}

TEST(Planner, PlansAreDeterministic) {
  const Fixture& fx = fixture("scenario2");
  const WorldState world = fx.sc.initial_world();
  const PlanContext ctx(fx.mission.nba, fx.mission.table, world);
  PlanOptions po;
  po.seed = 17;
  const auto a = plan_mission(ctx, world.positions(), po);
  const auto b = plan_mission(ctx, world.positions(), po);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->prefix, b->prefix);
  EXPECT_EQ(a->suffix, b->suffix);
}

TEST(Planner, LegalHopAgreesWithLabels) {
  const Fixture& fx = fixture("scenario1");
  const WorldState world = fx.sc.initial_world();
  const PlanContext ctx(fx.mission.nba, fx.mission.table, world);
  const auto plan = plan_mission(ctx, world.positions(), PlanOptions{});
  ASSERT_TRUE(plan);
  const PlanPath path = plan->concat();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) EXPECT_TRUE(ctx.legal_hop(path[i], path[i + 1]));
  // A two-cell jump is never legal.
  PlanNode jump = path[1];
  jump.positions[0].x += 2;
  EXPECT_FALSE(ctx.legal_hop(path[0], jump));
}

TEST(Planner, InfeasibleMissionReturnsNothing) {
  const Fixture& fx = fixture("scenario1");
  // Every robot loses every non-mobility skill.
  std::vector<FailureEvent> all;
  for (int j = 1; j <= fx.sc.num_robots(); ++j)
    for (SkillId c : fx.sc.initial_world().caps(j).skills())
      if (c != kMobility) all.push_back({j, c});
  const WorldState world = fx.sc.initial_world().apply_failure(all);
  const PlanContext ctx(fx.mission.nba, fx.mission.table, world);
  PlanOptions po;
  po.budget = 2000;
  po.attempts = 1;
  EXPECT_FALSE(plan_mission(ctx, world.positions(), po));
}

TEST(Planner, PlanAtUnrollsSuffix) {
  const Fixture& fx = fixture("scenario1");
  const WorldState world = fx.sc.initial_world();
  const PlanContext ctx(fx.mission.nba, fx.mission.table, world);
  const auto plan = plan_mission(ctx, world.positions(), PlanOptions{});
  ASSERT_TRUE(plan);
  const int T = plan->T(), K = plan->K();
  EXPECT_EQ(plan->at(T), plan->prefix.back());
  EXPECT_EQ(plan->at(T + 1), plan->suffix.front());
  EXPECT_EQ(plan->at(T + K + 1), plan->suffix.front());
  EXPECT_EQ(plan->at(T + 2 * K), plan->prefix.back());
}
