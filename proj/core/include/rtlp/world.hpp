#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtlp/predicate.hpp"

namespace rtlp {

struct Cell {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell&) const = default;
  bool operator==(const Cell&) const = default;
};

inline int manhattan(Cell a, Cell b) {
  return (a.x > b.x ? a.x - b.x : b.x - a.x) + (a.y > b.y ? a.y - b.y : b.y - a.y);
}

enum class Move : std::uint8_t { Stay, North, South, East, West };
inline constexpr Move kMoves[] = {Move::Stay, Move::North, Move::South, Move::East, Move::West};

/// North increases y.
Cell apply_move(Cell c, Move m);
const char* move_name(Move m);

struct Landmark {
  std::string name;
  Cell cell;
  int radius = 0;
};

class WorldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Static part of the world: grid, obstacles, landmarks and the skill table.
/// Skill ids are 1-based; id 1 is mobility.
class Environment {
 public:
  Environment(int width, int height, std::set<Cell> obstacles, std::vector<Landmark> landmarks,
              std::vector<std::string> skills);

  int width() const { return width_; }
  int height() const { return height_; }
  const std::set<Cell>& obstacles() const { return obstacles_; }
  const std::vector<Landmark>& landmarks() const { return landmarks_; }
  const Landmark& landmark(LandmarkId l) const;
  std::optional<LandmarkId> find_landmark(std::string_view name) const;

  int num_skills() const { return static_cast<int>(skills_.size()); }
  const std::string& skill_name(SkillId c) const;
  std::optional<SkillId> find_skill(std::string_view name) const;
  bool valid_skill(SkillId c) const { return c >= 1 && c <= num_skills(); }

  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  bool free(Cell c) const { return in_bounds(c) && obstacles_.count(c) == 0; }
  bool near(Cell c, LandmarkId l) const;

  /// Free cells within the proximity radius of l.
  const std::vector<Cell>& region(LandmarkId l) const { return regions_.at(static_cast<std::size_t>(l)); }

  /// BFS distances (4-connected, free cells) to the nearest target; -1 if
  /// unreachable. Indexed by y * width + x.
  std::vector<int> distance_field(const std::vector<Cell>& targets, const std::set<Cell>& avoid = {}) const;
  /// Cached distance field to region(l).
  const std::vector<int>& landmark_field(LandmarkId l) const { return fields_.at(static_cast<std::size_t>(l)); }
  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.y) * width_ + c.x; }

 private:
  int width_;
  int height_;
  std::set<Cell> obstacles_;
  std::vector<Landmark> landmarks_;
  std::vector<std::string> skills_;
  std::vector<std::vector<Cell>> regions_;
  std::vector<std::vector<int>> fields_;
};

/// Live skills of one robot; bit c-1 stands for skill c.
class CapabilityVector {
 public:
  CapabilityVector() = default;
  explicit CapabilityVector(std::uint64_t bits) : bits_(bits) {}
  static CapabilityVector of(const std::vector<SkillId>& skills);

  bool has(SkillId c) const { return c >= 1 && c <= 64 && ((bits_ >> (c - 1)) & 1U) != 0; }
  void set(SkillId c);
  void clear(SkillId c);
  void clear_all() { bits_ = 0; }
  bool none() const { return bits_ == 0; }
  std::uint64_t bits() const { return bits_; }
  std::vector<SkillId> skills() const;

  bool operator==(const CapabilityVector&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Skill applied by each robot in one step; kNoSkill for none. Index j-1.
using ActionVector = std::vector<SkillId>;
using MoveVector = std::vector<Move>;

struct FailureEvent {
  RobotId robot = 1;
  std::optional<SkillId> skill;  // empty: every skill (robot removal)
};

/// Immutable snapshot of the world at time t.
class WorldState {
 public:
  WorldState(std::shared_ptr<const Environment> env, std::vector<Cell> positions,
             std::vector<CapabilityVector> caps, int time = 0);

  const Environment& env() const { return *env_; }
  const std::shared_ptr<const Environment>& env_ptr() const { return env_; }
  int time() const { return time_; }
  int num_robots() const { return static_cast<int>(positions_.size()); }
  const std::vector<Cell>& positions() const { return positions_; }
  Cell position(RobotId j) const;
  const CapabilityVector& caps(RobotId j) const;
  const std::vector<CapabilityVector>& all_caps() const { return caps_; }
  bool removed(RobotId j) const { return caps(j).none(); }
  /// A robot moves only while it holds the mobility skill.
  bool can_move(RobotId j) const { return caps(j).has(kMobility); }

  /// T_c(t), ascending.
  std::vector<RobotId> team(SkillId c) const;

  /// Next snapshot; throws WorldError for a move off the free grid or a move
  /// of a robot that cannot move.
  WorldState step(const MoveVector& moves) const;
  /// Same snapshot with new positions at the next time step (no checks
  /// beyond bounds and obstacles).
  WorldState with_positions(std::vector<Cell> positions, int time) const;
  WorldState apply_failure(const std::vector<FailureEvent>& events) const;

 private:
  std::shared_ptr<const Environment> env_;
  std::vector<Cell> positions_;
  std::vector<CapabilityVector> caps_;
  int time_ = 0;
};

/// Evaluates occurrences of a predicate table on (positions, actions).
/// Assigned occurrences hold when their robot has the skill, is near the
/// landmark and either the skill is mobility or it is the applied skill.
/// Unassigned occurrences hold when some member of their team does.
class Labeler {
 public:
  Labeler(const PredicateTable& table, const Environment& env);
  /// Restricts labeling to `occurrences` (ids of `table`).
  Labeler(const PredicateTable& table, const Environment& env, std::vector<OccId> occurrences);

  /// Throws WorldError when an action uses a skill the robot lacks.
  Symbol label(const WorldState& state, const ActionVector& actions) const;
  Symbol label(const std::vector<Cell>& positions, const std::vector<CapabilityVector>& caps,
               const ActionVector& actions) const;

  /// Does robot j alone, at `cell` applying `skill`, make occurrence p true?
  bool robot_satisfies(const Predicate& p, RobotId j, const CapabilityVector& caps, Cell cell,
                       SkillId skill) const;

  const std::vector<OccId>& occurrences() const { return occ_; }

 private:
  const PredicateTable* table_;
  const Environment* env_;
  std::vector<OccId> occ_;
};

/// Symbols robot i can generate over `ap` on its own: the empty symbol plus
/// the labels of every (cell near a landmark of `ap`, applied live skill or
/// none). Sorted and unique.
std::vector<Symbol> robot_symbols(const WorldState& state, RobotId i, const std::vector<OccId>& ap,
                                  const PredicateTable& table);

}  // namespace rtlp
