#include "rtlp/world.hpp"

#include <algorithm>
#include <deque>

namespace rtlp {

namespace {

std::string cell_str(Cell c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

}  // namespace

Cell apply_move(Cell c, Move m) {
  switch (m) {
    case Move::Stay: return c;
    case Move::North: return {c.x, c.y + 1};
    case Move::South: return {c.x, c.y - 1};
    case Move::East: return {c.x + 1, c.y};
    case Move::West: return {c.x - 1, c.y};
  }
  return c;
}

const char* move_name(Move m) {
  switch (m) {
    case Move::Stay: return "STAY";
    case Move::North: return "N";
    case Move::South: return "S";
    case Move::East: return "E";
    case Move::West: return "W";
  }
  return "?";
}

Environment::Environment(int width, int height, std::set<Cell> obstacles, std::vector<Landmark> landmarks,
                         std::vector<std::string> skills)
    : width_(width),
      height_(height),
      obstacles_(std::move(obstacles)),
      landmarks_(std::move(landmarks)),
      skills_(std::move(skills)) {
  if (width_ <= 0 || height_ <= 0) throw WorldError("grid must have positive size");
  if (skills_.empty()) throw WorldError("the skill table needs at least the mobility skill");
  if (skills_.size() > 64) throw WorldError("at most 64 skills are supported");
  for (Cell c : obstacles_)
    if (!in_bounds(c)) throw WorldError("obstacle " + cell_str(c) + " is outside the grid");
  for (const auto& l : landmarks_) {
    if (!free(l.cell)) throw WorldError("landmark " + l.name + " is not on a free cell");
    if (l.radius < 0) throw WorldError("landmark " + l.name + " has a negative radius");
  }
  for (std::size_t i = 0; i < landmarks_.size(); ++i) {
    const auto& l = landmarks_[i];
    std::vector<Cell> region;
    for (int dy = -l.radius; dy <= l.radius; ++dy)
      for (int dx = -l.radius; dx <= l.radius; ++dx) {
        const Cell c{l.cell.x + dx, l.cell.y + dy};
        if (manhattan(c, l.cell) <= l.radius && free(c)) region.push_back(c);
      }
    std::sort(region.begin(), region.end());
    regions_.push_back(region);
    fields_.push_back(distance_field(region));
  }
}

const Landmark& Environment::landmark(LandmarkId l) const {
  if (l < 0 || l >= static_cast<int>(landmarks_.size()))
    throw WorldError("unknown landmark " + std::to_string(l));
  return landmarks_[static_cast<std::size_t>(l)];
}

std::optional<LandmarkId> Environment::find_landmark(std::string_view name) const {
  for (std::size_t i = 0; i < landmarks_.size(); ++i)
    if (landmarks_[i].name == name) return static_cast<LandmarkId>(i);
  return std::nullopt;
}

const std::string& Environment::skill_name(SkillId c) const {
  if (!valid_skill(c)) throw WorldError("unknown skill " + std::to_string(c));
  return skills_[static_cast<std::size_t>(c - 1)];
}

std::optional<SkillId> Environment::find_skill(std::string_view name) const {
  for (std::size_t i = 0; i < skills_.size(); ++i)
    if (skills_[i] == name) return static_cast<SkillId>(i + 1);
  return std::nullopt;
}

bool Environment::near(Cell c, LandmarkId l) const { return manhattan(c, landmark(l).cell) <= landmark(l).radius; }

std::vector<int> Environment::distance_field(const std::vector<Cell>& targets, const std::set<Cell>& avoid) const {
  std::vector<int> dist(static_cast<std::size_t>(width_) * height_, -1);
  std::deque<Cell> queue;
  for (Cell t : targets) {
    if (!free(t) || dist[index(t)] == 0) continue;
    dist[index(t)] = 0;
    queue.push_back(t);
  }
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    for (Move m : kMoves) {
      if (m == Move::Stay) continue;
      const Cell n = apply_move(c, m);
      if (!free(n) || dist[index(n)] != -1 || avoid.count(n) != 0) continue;
      dist[index(n)] = dist[index(c)] + 1;
      queue.push_back(n);
    }
  }
  return dist;
}

CapabilityVector CapabilityVector::of(const std::vector<SkillId>& skills) {
  CapabilityVector v;
  for (SkillId c : skills) v.set(c);
  return v;
}

void CapabilityVector::set(SkillId c) {
  if (c < 1 || c > 64) throw WorldError("skill id out of range: " + std::to_string(c));
  bits_ |= std::uint64_t{1} << (c - 1);
}

void CapabilityVector::clear(SkillId c) {
  if (c < 1 || c > 64) throw WorldError("skill id out of range: " + std::to_string(c));
  bits_ &= ~(std::uint64_t{1} << (c - 1));
}

std::vector<SkillId> CapabilityVector::skills() const {
  std::vector<SkillId> out;
  for (int c = 1; c <= 64; ++c)
    if (has(c)) out.push_back(c);
  return out;
}

WorldState::WorldState(std::shared_ptr<const Environment> env, std::vector<Cell> positions,
                       std::vector<CapabilityVector> caps, int time)
    : env_(std::move(env)), positions_(std::move(positions)), caps_(std::move(caps)), time_(time) {
  if (!env_) throw WorldError("world state needs an environment");
  if (positions_.size() != caps_.size()) throw WorldError("positions and capabilities differ in size");
  for (std::size_t j = 0; j < positions_.size(); ++j)
    if (!env_->free(positions_[j]))
      throw WorldError("robot " + std::to_string(j + 1) + " starts on blocked cell " + cell_str(positions_[j]));
}

Cell WorldState::position(RobotId j) const {
  if (j < 1 || j > num_robots()) throw WorldError("unknown robot " + std::to_string(j));
  return positions_[static_cast<std::size_t>(j - 1)];
}

const CapabilityVector& WorldState::caps(RobotId j) const {
  if (j < 1 || j > num_robots()) throw WorldError("unknown robot " + std::to_string(j));
  return caps_[static_cast<std::size_t>(j - 1)];
}

std::vector<RobotId> WorldState::team(SkillId c) const {
  if (!env_->valid_skill(c)) throw WorldError("unknown skill " + std::to_string(c));
  std::vector<RobotId> out;
  for (std::size_t j = 0; j < caps_.size(); ++j)
    if (caps_[j].has(c)) out.push_back(static_cast<RobotId>(j + 1));
  return out;
}

WorldState WorldState::step(const MoveVector& moves) const {
  if (moves.size() != positions_.size()) throw WorldError("move vector has the wrong size");
  std::vector<Cell> next = positions_;
  for (std::size_t j = 0; j < moves.size(); ++j) {
    if (moves[j] == Move::Stay) continue;
    const RobotId id = static_cast<RobotId>(j + 1);
    if (!can_move(id))
      throw WorldError("robot " + std::to_string(id) + " at " + cell_str(positions_[j]) + " cannot move");
    const Cell n = apply_move(positions_[j], moves[j]);
    if (!env_->free(n))
      throw WorldError("robot " + std::to_string(id) + " cannot move " + move_name(moves[j]) + " from " +
                       cell_str(positions_[j]) + " into " + cell_str(n));
    next[j] = n;
  }
  return WorldState(env_, std::move(next), caps_, time_ + 1);
}

WorldState WorldState::with_positions(std::vector<Cell> positions, int time) const {
  return WorldState(env_, std::move(positions), caps_, time);
}

WorldState WorldState::apply_failure(const std::vector<FailureEvent>& events) const {
  std::vector<CapabilityVector> caps = caps_;
  for (const auto& e : events) {
    if (e.robot < 1 || e.robot > num_robots()) throw WorldError("unknown robot " + std::to_string(e.robot));
    auto& v = caps[static_cast<std::size_t>(e.robot - 1)];
    if (e.skill) {
      if (!env_->valid_skill(*e.skill)) throw WorldError("unknown skill " + std::to_string(*e.skill));
      v.clear(*e.skill);
    } else {
      v.clear_all();
    }
  }
  return WorldState(env_, positions_, std::move(caps), time_);
}

Labeler::Labeler(const PredicateTable& table, const Environment& env) : table_(&table), env_(&env) {
  for (const auto& p : table.all()) occ_.push_back(p.id);
}

Labeler::Labeler(const PredicateTable& table, const Environment& env, std::vector<OccId> occurrences)
    : table_(&table), env_(&env), occ_(std::move(occurrences)) {
  std::sort(occ_.begin(), occ_.end());
  occ_.erase(std::unique(occ_.begin(), occ_.end()), occ_.end());
}

bool Labeler::robot_satisfies(const Predicate& p, RobotId j, const CapabilityVector& caps, Cell cell,
                              SkillId skill) const {
  if (p.robot && *p.robot != j) return false;
  if (!p.robot && !caps.has(p.team)) return false;
  if (!caps.has(p.skill)) return false;
  if (!env_->near(cell, p.location)) return false;
  return p.is_mobility() || skill == p.skill;
}

Symbol Labeler::label(const WorldState& state, const ActionVector& actions) const {
  return label(state.positions(), state.all_caps(), actions);
}

Symbol Labeler::label(const std::vector<Cell>& positions, const std::vector<CapabilityVector>& caps,
                      const ActionVector& actions) const {
  if (actions.size() != positions.size() || caps.size() != positions.size())
    throw WorldError("action vector has the wrong size");
  for (std::size_t j = 0; j < actions.size(); ++j)
    if (actions[j] != kNoSkill && !caps[j].has(actions[j]))
      throw WorldError("robot " + std::to_string(j + 1) + " applies skill " + std::to_string(actions[j]) +
                       " it does not have");
  std::vector<OccId> holds;
  for (OccId id : occ_) {
    const Predicate& p = table_->at(id);
    bool ok = false;
    if (p.robot) {
      const std::size_t j = static_cast<std::size_t>(*p.robot - 1);
      ok = j < positions.size() && robot_satisfies(p, *p.robot, caps[j], positions[j], actions[j]);
    } else {
      for (std::size_t j = 0; j < positions.size() && !ok; ++j)
        ok = robot_satisfies(p, static_cast<RobotId>(j + 1), caps[j], positions[j], actions[j]);
    }
    if (ok) holds.push_back(id);
  }
  return Symbol(std::move(holds));
}

std::vector<Symbol> robot_symbols(const WorldState& state, RobotId i, const std::vector<OccId>& ap,
                                  const PredicateTable& table) {
  const Environment& env = state.env();
  const CapabilityVector& caps = state.caps(i);
  Labeler labeler(table, env, ap);
  std::set<LandmarkId> locations;
  for (OccId id : ap) locations.insert(table.at(id).location);
  std::set<Cell> cells;
  for (LandmarkId l : locations)
    for (Cell c : env.region(l)) cells.insert(c);

  std::vector<SkillId> actions{kNoSkill};
  for (SkillId c : caps.skills())
    if (c != kMobility) actions.push_back(c);

  std::set<Symbol> out{Symbol{}};
  if (!caps.none()) {
    for (Cell c : cells)
      for (SkillId s : actions) {
        std::vector<OccId> holds;
        for (OccId id : labeler.occurrences())
          if (labeler.robot_satisfies(table.at(id), i, caps, c, s)) holds.push_back(id);
        out.insert(Symbol(std::move(holds)));
      }
  }
  return {out.begin(), out.end()};
}

}  // namespace rtlp
