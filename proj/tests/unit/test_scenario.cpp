#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "support.hpp"

using namespace rtlp;
using namespace rtlp::testing;
using nlohmann::json;

namespace {

json fixture_json(const std::string& name) {
  std::ifstream in(fixture_path(name));
  return json::parse(in);
}

std::string error_path(const json& doc) {
  try {
    parse_scenario(doc.dump());
  } catch (const ScenarioError& e) {
    return e.path();
  }
  return "<accepted>";
}

}  // namespace

TEST(Scenario, FixturesLoad) {
  for (const auto& name : fixture_names()) {
    const Scenario sc = load_scenario(fixture_path(name));
    EXPECT_EQ(sc.name, name);
    EXPECT_FALSE(sc.failures.empty());
    EXPECT_GT(sc.num_robots(), 0);
  }
  const Scenario s1 = load_scenario(fixture_path("scenario1"));
  EXPECT_EQ(s1.num_robots(), 3);
  ASSERT_EQ(s1.failures.size(), 1U);
  EXPECT_EQ(s1.failures[0].time, 3);
  EXPECT_EQ(s1.failures[0].events[0].robot, 3);
  const Scenario f = load_scenario(fixture_path("factory12"));
  EXPECT_EQ(f.num_robots(), 12);
  EXPECT_EQ(f.env->num_skills(), 5);
}

TEST(Scenario, RoundTripThroughJson) {
  for (const auto& name : fixture_names()) {
    const Scenario sc = load_scenario(fixture_path(name));
    const std::string text = scenario_to_json(sc);
    EXPECT_EQ(scenario_to_json(parse_scenario(text)), text) << name;
  }
}

TEST(Scenario, ErrorsNameTheOffendingField) {
  json doc = fixture_json("scenario1");
  {
    json d = doc;
    d["format"] = "other";
    EXPECT_EQ(error_path(d), "format");
  }
  {
    json d = doc;
    d["robots"][1]["start"] = json::array({99, 0});
    EXPECT_EQ(error_path(d), "robots[1].start");
  }
  {
    json d = doc;
    d["predicates"][0]["landmark"] = "nowhere";
    EXPECT_EQ(error_path(d), "predicates[0].landmark");
  }
  {
    json d = doc;
    d["surprise"] = 1;
    EXPECT_NE(error_path(d), "<accepted>");
  }
  {
    json d = doc;
    d["skills"].push_back(d["skills"][0]);
    EXPECT_EQ(error_path(d), "skills[3]");
  }
  EXPECT_THROW(parse_scenario("{ not json"), ScenarioError);
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), ScenarioError);
}

TEST(Scenario, BadMissionTextIsReported) {
  Scenario sc = load_scenario(fixture_path("scenario1"));
  sc.mission = "F(pi1 & ";
  EXPECT_THROW(compile_mission(sc), ParseError);
  sc.mission = "F undeclared";
  EXPECT_ANY_THROW(compile_mission(sc));
}

// Random structural mutations either load or raise ScenarioError.
TEST(Scenario, MutationFuzz) {
  std::mt19937_64 rng(41);
  const json base = fixture_json("scenario2");
  const std::vector<json> junk{json(nullptr), json(-1), json(1.5), json("x"), json::array(), json::object(),
                               json(1000000), json::array({1, 2, 3})};
  for (int i = 0; i < 1500; ++i) {
    json d = base;
    const int edits = 1 + static_cast<int>(rng() % 3);
    for (int e = 0; e < edits; ++e) {
      // Walk to a random node and replace or delete it.
      json* node = &d;
      for (int depth = 0; depth < 4 && (node->is_object() || node->is_array()) && !node->empty(); ++depth) {
        const std::size_t k = rng() % node->size();
        auto it = node->begin();
        std::advance(it, static_cast<std::ptrdiff_t>(k));
        if (rng() % 3 == 0) break;
        node = &*it;
      }
      *node = junk[rng() % junk.size()];
    }
    try {
      parse_scenario(d.dump());
    } catch (const ScenarioError&) {
    }
  }
}
