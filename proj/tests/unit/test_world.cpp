#include <gtest/gtest.h>

#include "support.hpp"

using namespace rtlp;
using namespace rtlp::testing;

namespace {

std::shared_ptr<const Environment> small_env() {
  return std::make_shared<const Environment>(6, 5, std::set<Cell>{{2, 2}, {3, 2}},
                                             std::vector<Landmark>{{"l0", {0, 0}, 1}, {"l1", {5, 4}, 0}},
                                             std::vector<std::string>{"move", "grip", "scan"});
}

}  // namespace

TEST(World, EnvironmentGeometry) {
  const auto env = small_env();
  EXPECT_FALSE(env->free({2, 2}));
  EXPECT_FALSE(env->free({6, 0}));
  EXPECT_TRUE(env->free({0, 0}));
  EXPECT_TRUE(env->near({1, 0}, 0));
  EXPECT_FALSE(env->near({1, 1}, 0));
  EXPECT_EQ(env->region(0).size(), 3U);
  EXPECT_EQ(env->region(1).size(), 1U);
  EXPECT_EQ(env->find_skill("scan"), 3);
  EXPECT_EQ(env->find_landmark("l1"), 1);
  const auto& f = env->landmark_field(1);
  EXPECT_EQ(f[env->index({5, 4})], 0);
  EXPECT_EQ(f[env->index({0, 0})], 9);
  EXPECT_EQ(f[env->index({2, 2})], -1);
}

TEST(World, DistanceFieldMatchesBfsAroundObstacles) {
  const auto env = small_env();
  const auto d = env->distance_field({{2, 1}});
  EXPECT_EQ(d[env->index({2, 3})], 4);  // around the wall
  EXPECT_EQ(d[env->index({2, 1})], 0);
}

TEST(World, CapabilitiesAndFailures) {
  const auto env = small_env();
  WorldState w(env, {{0, 0}, {1, 1}, {5, 4}},
               {CapabilityVector::of({1, 2}), CapabilityVector::of({1, 2, 3}), CapabilityVector::of({1})}, 0);
  EXPECT_EQ(w.team(2), (std::vector<RobotId>{1, 2}));
  EXPECT_EQ(w.team(1), (std::vector<RobotId>{1, 2, 3}));
  const WorldState after = w.apply_failure({{2, 2}, {3, std::nullopt}});
  EXPECT_EQ(after.team(2), (std::vector<RobotId>{1}));
  EXPECT_TRUE(after.removed(3));
  EXPECT_TRUE(after.caps(2).has(3));
  EXPECT_FALSE(after.can_move(3));
}

TEST(World, LabelerRules) {
  const auto env = small_env();
  PredicateTable table;
  table.declare({"grab", 2, 1, 0, 2});
  table.declare({"seen", 3, std::nullopt, 1, 3});
  table.declare({"near", kMobility, std::nullopt, 0, 2});
  const OccId grab = table.add_occurrence("grab");
  const OccId seen = table.add_occurrence("seen");
  const OccId near = table.add_occurrence("near");
  table.expand_rebindings(2);
  const Labeler lab(table, *env);
  const std::vector<CapabilityVector> caps{CapabilityVector::of({1, 2}), CapabilityVector::of({1, 3})};
  // Robot 1 grips at l0; robot 2 scans at l1.
  Symbol s = lab.label({{0, 1}, {5, 4}}, caps, {2, 3});
  EXPECT_TRUE(s.contains(grab));
  EXPECT_TRUE(s.contains(seen));
  EXPECT_TRUE(s.contains(near));
  // Wrong action, wrong place.
  s = lab.label({{0, 1}, {5, 3}}, caps, {0, 3});
  EXPECT_FALSE(s.contains(grab));
  EXPECT_FALSE(s.contains(seen));
  // Robot 2 at l0 is not in team 2, so `near` is false.
  s = lab.label({{3, 3}, {0, 0}}, caps, {0, 0});
  EXPECT_FALSE(s.contains(near));
  // A robot cannot apply a skill it lacks.
  EXPECT_THROW(lab.label({{3, 3}, {0, 0}}, caps, {0, 2}), WorldError);
  // The rebound copy of grab holds for robot 2 once it can grip.
  const std::vector<CapabilityVector> both{CapabilityVector::of({1, 2}), CapabilityVector::of({1, 2})};
  s = lab.label({{3, 3}, {0, 0}}, both, {0, 2});
  EXPECT_TRUE(s.contains(table.rebind(grab, 2)));
  EXPECT_FALSE(s.contains(grab));
}

TEST(World, StepAppliesMoves) {
  const auto env = small_env();
  WorldState w(env, {{0, 0}}, {CapabilityVector::of({1})}, 0);
  const WorldState n = w.step({Move::East});
  EXPECT_EQ(n.position(1), (Cell{1, 0}));
  EXPECT_EQ(n.time(), 1);
}
