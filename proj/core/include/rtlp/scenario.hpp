#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rtlp/predicate.hpp"
#include "rtlp/world.hpp"

namespace rtlp {

/// Schema or consistency problem in a scenario document. The message
/// starts with the offending field path, e.g. `robots[2].skills[0]`.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string path, const std::string& what);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct RobotSpec {
  Cell start;
  std::vector<SkillId> skills;
};

/// Failures that take effect at `time`: the team is at the node of time
/// time - 1 when it learns about them and the lost skills are unavailable
/// from step `time` on.
struct FailureBatch {
  int time = 1;
  std::vector<FailureEvent> events;
};

struct Budgets {
  int tree = 50000;     // iterations per tree
  int total = 400000;   // iterations over all local replanning trees
  int attempts = 4;     // prefix/suffix attempts per full plan
};

struct Scenario {
  std::string name;
  std::shared_ptr<const Environment> env;
  std::vector<RobotSpec> robots;
  std::vector<PredicateDecl> predicates;
  std::string mission;
  std::vector<FailureBatch> failures;  // sorted by time, one batch per time
  std::uint64_t seed = 1;
  Budgets budgets;

  int num_robots() const { return static_cast<int>(robots.size()); }
  WorldState initial_world() const;
};

inline constexpr int kScenarioVersion = 1;

Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& sc);

}  // namespace rtlp
