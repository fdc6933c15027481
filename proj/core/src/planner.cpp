#include "rtlp/planner.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <random>
#include <unordered_map>

namespace rtlp {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

const PlanNode& PrefixSuffixPlan::at(int t) const {
  if (t < 0) throw std::out_of_range("negative plan time");
  if (t <= T()) return prefix[static_cast<std::size_t>(t)];
  if (suffix.empty()) throw std::out_of_range("plan has no suffix");
  return suffix[static_cast<std::size_t>((t - T() - 1) % K())];
}

PlanPath PrefixSuffixPlan::concat() const {
  PlanPath out = prefix;
  out.insert(out.end(), suffix.begin(), suffix.end());
  return out;
}

std::vector<StrippedStep> strip_automaton(const PlanPath& path) {
  std::vector<StrippedStep> out;
  out.reserve(path.size());
  for (const auto& n : path) out.push_back({n.positions, n.actions});
  return out;
}

namespace {

std::vector<OccId> guard_atoms(const Nba& nba) {
  std::vector<OccId> out;
  for (const auto& [e, g] : nba.edges()) {
    auto a = g.formula().atoms();
    out.insert(out.end(), a.begin(), a.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool positive_realizable(const Predicate& p, const WorldState& w) {
  if (p.robot) return w.caps(*p.robot).has(p.skill);
  for (int j = 1; j <= w.num_robots(); ++j)
    if (w.caps(j).has(p.team) && w.caps(j).has(p.skill)) return true;
  return false;
}

}  // namespace

PlanContext::PlanContext(const Nba& nba, const PredicateTable& table, const WorldState& world)
    : nba_(&nba), table_(&table), world_(&world), labeler_(table, world.env(), guard_atoms(nba)) {
  options_.resize(static_cast<std::size_t>(nba.num_states()));
  for (StateId q = 0; q < nba.num_states(); ++q) {
    for (const auto& [to, guard] : nba.successors(q)) {
      Option opt{to, {}};
      for (const auto& c : guard->dnf()) {
        if (!clause_respects_one_skill(c, table)) continue;
        bool ok = true;
        for (OccId p : c.pos) ok = ok && positive_realizable(table.at(p), world);
        if (ok) opt.clauses.push_back(&c);
        for (OccId n : c.neg) {
          const Predicate& p = table.at(n);
          if (!p.robot && p.is_mobility())
            for (Cell cell : world.env().region(p.location)) hazards_.insert(cell);
        }
      }
      if (!opt.clauses.empty()) options_[static_cast<std::size_t>(q)].push_back(std::move(opt));
    }
  }
  for (StateId f : nba.final()) {
    std::set<StateId> seen;
    std::deque<StateId> queue;
    for (const auto& opt : options(f))
      if (seen.insert(opt.to).second) queue.push_back(opt.to);
    while (!queue.empty() && seen.count(f) == 0) {
      const StateId q = queue.front();
      queue.pop_front();
      for (const auto& opt : options(q))
        if (seen.insert(opt.to).second) queue.push_back(opt.to);
    }
    if (seen.count(f) != 0) live_finals_.insert(f);
  }
}

Symbol PlanContext::label(const PlanNode& n) const {
  return labeler_.label(n.positions, world_->all_caps(), n.actions);
}

bool PlanContext::legal_motion(const std::vector<Cell>& from, const std::vector<Cell>& to,
                               const ActionVector& actions) const {
  const auto n = static_cast<std::size_t>(num_robots());
  if (from.size() != n || to.size() != n || actions.size() != n) return false;
  const Environment& env = world_->env();
  for (std::size_t j = 0; j < n; ++j) {
    const RobotId id = static_cast<RobotId>(j + 1);
    const CapabilityVector& caps = world_->caps(id);
    if (!world_->can_move(id)) {
      if (to[j] != from[j]) return false;
    } else if (manhattan(from[j], to[j]) > 1 || !env.free(to[j])) {
      return false;
    }
    if (actions[j] != kNoSkill && (actions[j] == kMobility || !caps.has(actions[j]))) return false;
  }
  return true;
}

bool PlanContext::legal_hop(const PlanNode& parent, const PlanNode& child) const {
  if (!legal_motion(parent.positions, child.positions, child.actions)) return false;
  const Guard* g = nba_->guard(Edge{parent.nba_state, child.nba_state});
  return g != nullptr && g->accepts(label(child));
}

const std::vector<int>& PlanContext::field_to_region(LandmarkId l, bool avoid_hazards) const {
  const Environment& env = world_->env();
  if (!avoid_hazards || hazards_.empty()) return env.landmark_field(l);
  auto it = safe_fields_.find(l);
  if (it == safe_fields_.end()) it = safe_fields_.emplace(l, env.distance_field(env.region(l), hazards_)).first;
  return it->second;
}

const std::vector<int>& PlanContext::field_to_cell(Cell c) const {
  auto it = cell_fields_.find(c);
  if (it == cell_fields_.end()) it = cell_fields_.emplace(c, world_->env().distance_field({c})).first;
  return it->second;
}

namespace {

constexpr int kInf = 1 << 28;
constexpr int kStepWeight = 8;
constexpr int kWorkWeight = 8;

std::uint64_t hash_node(const PlanNode& n) {
  std::uint64_t h = splitmix(static_cast<std::uint64_t>(n.nba_state));
  for (std::size_t j = 0; j < n.positions.size(); ++j) {
    const auto v = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n.positions[j].x)) << 40) ^
                   (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n.positions[j].y)) << 16) ^
                   static_cast<std::uint64_t>(static_cast<std::uint32_t>(n.actions[j]));
    h = splitmix(h ^ v);
  }
  return h;
}

// Where one robot is heading inside a clause.
struct Duty {
  RobotId robot;
  LandmarkId location;
  SkillId skill;  // kMobility when presence suffices
};

struct Plan {
  int score = kInf;
  const Clause* clause = nullptr;
  int connect = -1;  // position steering toward SearchGoal::connect[connect]
};

class Search {
 public:
  Search(const PlanContext& ctx, const SearchGoal& goal, const SearchOptions& options)
      : ctx_(ctx), goal_(goal), options_(options), rng_(splitmix(options.seed)) {
    const Nba& nba = ctx.nba();
    const auto states = static_cast<std::size_t>(nba.num_states());
    pre_.resize(goal.connect.size());
    std::vector<char> target(states, 0);
    for (StateId f : goal.finals)
      if (nba.has_state(f)) target[static_cast<std::size_t>(f)] = 1;
    for (std::size_t k = 0; k < goal.connect.size(); ++k) {
      const PlanNode& x = goal.connect[k];
      Symbol l;
      try {
        l = ctx.label(x);
      } catch (const WorldError&) {
        continue;  // uses a skill that is gone: unreachable
      }
      for (StateId q = 0; q < nba.num_states(); ++q) {
        const Guard* g = nba.guard(Edge{q, x.nba_state});
        if (g != nullptr && g->accepts(l)) {
          pre_[k].insert(q);
          target[static_cast<std::size_t>(q)] = 1;
        }
      }
    }
    // Remaining work per state: a transition costs 4 per positive predicate
    // of its cheapest clause beyond what every transition out of the state
    // asks for, and at least 1. Standing obligations such as G x are thus
    // not counted as work on every step.
    base_.assign(states, 0);
    for (StateId q = 0; q < nba.num_states(); ++q) {
      std::size_t low = SIZE_MAX;
      for (const auto& opt : ctx.options(q))
        for (const Clause* c : opt.clauses) low = std::min(low, c->pos.size());
      base_[static_cast<std::size_t>(q)] = low == SIZE_MAX ? 0 : static_cast<int>(low);
    }
    std::vector<std::vector<std::pair<StateId, int>>> rev(states);
    for (StateId q = 0; q < nba.num_states(); ++q)
      for (const auto& opt : ctx.options(q)) {
        std::size_t need = SIZE_MAX;
        for (const Clause* c : opt.clauses) need = std::min(need, c->pos.size());
        rev[static_cast<std::size_t>(opt.to)].emplace_back(q, work(q, need));
      }
    dist_.assign(states, kInf);
    using Item = std::pair<int, StateId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (std::size_t q = 0; q < states; ++q)
      if (target[q]) {
        dist_[q] = 0;
        heap.emplace(0, static_cast<StateId>(q));
      }
    while (!heap.empty()) {
      const auto [d, q] = heap.top();
      heap.pop();
      if (d > dist_[static_cast<std::size_t>(q)]) continue;
      for (const auto& [p, w] : rev[static_cast<std::size_t>(q)])
        if (d + w < dist_[static_cast<std::size_t>(p)]) {
          dist_[static_cast<std::size_t>(p)] = d + w;
          heap.emplace(d + w, p);
        }
    }
    for (int j = 1; j <= ctx.num_robots(); ++j) {
      std::vector<SkillId> s;
      for (SkillId c : ctx.world().caps(j).skills())
        if (c != kMobility) s.push_back(c);
      skills_.push_back(std::move(s));
    }
    // Landmarks each robot still has to visit for some progress transition
    // reachable from each automaton state; idle robots head there.
    upcoming_.resize(states);
    for (StateId q = 0; q < nba.num_states(); ++q) {
      auto& todo = upcoming_[static_cast<std::size_t>(q)];
      todo.resize(static_cast<std::size_t>(ctx.num_robots()));
      std::set<StateId> seen{q};
      std::deque<StateId> frontier{q};
      while (!frontier.empty()) {
        const StateId u = frontier.front();
        frontier.pop_front();
        for (const auto& opt : ctx.options(u)) {
          if (dist_[static_cast<std::size_t>(opt.to)] < dist_[static_cast<std::size_t>(u)])
            for (const Clause* c : opt.clauses)
              for (OccId id : c->pos) {
                const Predicate& pr = ctx.table().at(id);
                if (pr.robot) todo[static_cast<std::size_t>(*pr.robot - 1)].insert(pr.location);
              }
          if (seen.insert(opt.to).second) frontier.push_back(opt.to);
        }
      }
    }
  }

  std::optional<SearchResult> run(const std::vector<PlanNode>& roots, SearchStats* stats) {
    for (const auto& r : roots) {
      const int idx = add(r, -1);
      if (idx < 0) continue;
      if (int g = goal_of(r); g != kNoGoal) return finish(idx, g, 0, stats);
    }
    if (nodes_.empty()) return std::nullopt;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int it = 1; it <= options_.budget; ++it) {
      found_ = -1;
      if (!queue_.empty() && coin(rng_) < options_.bias) steer();
      else sample();
      if (found_ >= 0) return finish(found_, found_goal_, it, stats);
    }
    if (stats) {
      stats->iterations += options_.budget;
      stats->tree_size += nodes_.size();
    }
    return std::nullopt;
  }

 private:
  static constexpr int kNoGoal = -2;

  struct Entry {
    int score;
    std::uint64_t seq;
    int node;
    bool operator<(const Entry& o) const { return score != o.score ? score > o.score : seq > o.seq; }
  };

  std::optional<SearchResult> finish(int idx, int goal, int iterations, SearchStats* stats) {
    SearchResult r;
    for (int v = idx; v >= 0; v = parent_[static_cast<std::size_t>(v)]) r.path.push_back(nodes_[static_cast<std::size_t>(v)]);
    std::reverse(r.path.begin(), r.path.end());
    r.goal_index = goal;
    r.iterations = iterations;
    r.tree_size = nodes_.size();
    if (stats) {
      stats->iterations += iterations;
      stats->tree_size += nodes_.size();
    }
    return r;
  }

  int goal_of(const PlanNode& n) const {
    if (goal_.finals.count(n.nba_state) != 0) return -1;
    for (std::size_t k = 0; k < goal_.connect.size(); ++k)
      if (pre_[k].count(n.nba_state) != 0 &&
          ctx_.legal_motion(n.positions, goal_.connect[k].positions, goal_.connect[k].actions))
        return static_cast<int>(k);
    return kNoGoal;
  }

  // Adds a node unless the same product state is already in the tree.
  int add(const PlanNode& n, int parent) {
    const auto h = hash_node(n);
    auto& bucket = index_[h];
    for (int i : bucket)
      if (nodes_[static_cast<std::size_t>(i)] == n) return -1;
    const int idx = static_cast<int>(nodes_.size());
    bucket.push_back(idx);
    nodes_.push_back(n);
    parent_.push_back(parent);
    pops_.push_back(0);
    const Plan p = plan_for(n);
    if (p.score < kInf) queue_.push(Entry{p.score, seq_++, idx});
    return idx;
  }

  // Adds every child of `parent` reachable with (positions, actions).
  int expand(int parent, const std::vector<Cell>& positions, const ActionVector& actions) {
    const PlanNode& from = nodes_[static_cast<std::size_t>(parent)];
    const Symbol l = ctx_.labeler().label(positions, ctx_.world().all_caps(), actions);
    int added = 0;
    for (const auto& [to, guard] : ctx_.nba().successors(from.nba_state)) {
      if (!guard->accepts(l)) continue;
      PlanNode child{positions, actions, to};
      const int idx = add(child, parent);
      if (idx < 0) continue;
      ++added;
      if (found_ < 0) {
        const int g = goal_of(nodes_[static_cast<std::size_t>(idx)]);
        if (g != kNoGoal) {
          found_ = idx;
          found_goal_ = g;
        }
      }
    }
    return added;
  }

  void sample() {
    std::uniform_int_distribution<std::size_t> pick(0, nodes_.size() - 1);
    const int parent = static_cast<int>(pick(rng_));
    const PlanNode& from = nodes_[static_cast<std::size_t>(parent)];
    const Environment& env = ctx_.world().env();
    std::uniform_int_distribution<int> move(0, 4);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Cell> positions = from.positions;
    ActionVector actions(positions.size(), kNoSkill);
    for (std::size_t j = 0; j < positions.size(); ++j) {
      const RobotId id = static_cast<RobotId>(j + 1);
      if (ctx_.world().can_move(id)) {
        const Cell next = apply_move(positions[j], kMoves[move(rng_)]);
        if (!env.free(next)) return;  // reject the whole sample
        positions[j] = next;
      }
      const auto& s = skills_[j];
      if (!s.empty() && coin(rng_) < 0.2) {
        std::uniform_int_distribution<std::size_t> which(0, s.size() - 1);
        actions[j] = s[which(rng_)];
      }
    }
    expand(parent, positions, actions);
  }

  int work(StateId q, std::size_t positives) const {
    const int extra = static_cast<int>(positives) - base_[static_cast<std::size_t>(q)];
    return extra <= 0 ? 1 : 4 * extra;
  }

  int robot_distance(RobotId j, LandmarkId l, const std::vector<Cell>& positions) const {
    const Cell at = positions[static_cast<std::size_t>(j - 1)];
    if (!ctx_.world().can_move(j)) return ctx_.world().env().near(at, l) ? 0 : kInf;
    const auto& env = ctx_.world().env();
    int d = ctx_.field_to_region(l, true)[env.index(at)];
    if (d < 0) d = env.landmark_field(l)[env.index(at)];
    return d < 0 ? kInf : d;
  }

  // Assigns a robot to every positive predicate of the clause; empty when
  // some predicate has no capable robot that can get there.
  std::vector<Duty> duties(const Clause& c, const std::vector<Cell>& positions, int* cost) const {
    const WorldState& w = ctx_.world();
    std::vector<Duty> out;
    std::map<RobotId, std::pair<LandmarkId, SkillId>> busy;
    int worst = 0, sum = 0;
    auto take = [&](RobotId j, const Predicate& p, int d) {
      auto it = busy.find(j);
      if (it == busy.end()) busy.emplace(j, std::make_pair(p.location, p.skill));
      else if (it->second.second == kMobility && !p.is_mobility()) it->second.second = p.skill;
      worst = std::max(worst, d);
      sum += d;
    };
    for (OccId id : c.pos) {
      const Predicate& p = ctx_.table().at(id);
      if (!p.robot) continue;
      const int d = w.caps(*p.robot).has(p.skill) ? robot_distance(*p.robot, p.location, positions) : kInf;
      if (d >= kInf) return {};
      take(*p.robot, p, d);
    }
    for (OccId id : c.pos) {
      const Predicate& p = ctx_.table().at(id);
      if (p.robot) continue;
      RobotId best = 0;
      int best_d = kInf;
      for (int j = 1; j <= w.num_robots(); ++j) {
        if (!w.caps(j).has(p.team) || !w.caps(j).has(p.skill)) continue;
        auto it = busy.find(j);
        if (it != busy.end()) {
          const auto [loc, skill] = it->second;
          const bool compatible =
              loc == p.location && (p.is_mobility() || skill == kMobility || skill == p.skill);
          if (!compatible) continue;
        }
        const int d = robot_distance(j, p.location, positions);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      if (best == 0) return {};
      take(best, p, best_d);
    }
    for (const auto& [j, ls] : busy) out.push_back(Duty{j, ls.first, ls.second});
    if (cost) *cost = worst * kStepWeight + sum;
    return out;
  }

  int connect_cost(const PlanNode& n, std::size_t k) const {
    const PlanNode& x = goal_.connect[k];
    int worst = 0;
    for (std::size_t j = 0; j < n.positions.size(); ++j) {
      if (n.positions[j] == x.positions[j]) continue;
      if (!ctx_.world().can_move(static_cast<RobotId>(j + 1))) return kInf;
      const int d = ctx_.field_to_cell(x.positions[j])[ctx_.world().env().index(n.positions[j])];
      if (d < 0) return kInf;
      worst = std::max(worst, d);
    }
    return worst;
  }

  Plan plan_for(const PlanNode& n) const {
    Plan best;
    const int here = dist_[static_cast<std::size_t>(n.nba_state)];
    if (here >= kInf) return best;
    if (here == 0) {
      for (std::size_t k = 0; k < goal_.connect.size(); ++k) {
        if (pre_[k].count(n.nba_state) == 0) continue;
        const int c = connect_cost(n, k);
        if (c < kInf && c * kStepWeight < best.score) {
          best.score = c * kStepWeight;
          best.connect = static_cast<int>(k);
        }
      }
      return best;
    }
    for (const auto& opt : ctx_.options(n.nba_state)) {
      const int there = dist_[static_cast<std::size_t>(opt.to)];
      if (there >= here) continue;
      for (const Clause* c : opt.clauses) {
        int cost = 0;
        if (duties(*c, n.positions, &cost).empty() && !c->pos.empty()) continue;
        const int score = cost + (there + work(n.nba_state, c->pos.size())) * kWorkWeight;
        if (score < best.score) {
          best.score = score;
          best.clause = c;
        }
      }
    }
    return best;
  }

  Cell step_toward(Cell at, const std::vector<int>& field) {
    const Environment& env = ctx_.world().env();
    const int d = field[env.index(at)];
    if (d <= 0) return at;
    std::vector<Cell> options;
    for (Move m : kMoves) {
      const Cell n = apply_move(at, m);
      if (env.free(n) && field[env.index(n)] == d - 1) options.push_back(n);
    }
    if (options.empty()) return at;
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    return options[pick(rng_)];
  }

  // Keeps the current automaton state enabled while others travel: robots
  // already in place for a self-loop clause stay and keep applying their
  // skill. Marks them busy.
  void hold(const PlanNode& from, std::vector<char>& busy, std::vector<Cell>& positions, ActionVector& actions) const {
    const Environment& env = ctx_.world().env();
    const Clause* best = nullptr;
    for (const auto& opt : ctx_.options(from.nba_state)) {
      if (opt.to != from.nba_state) continue;
      for (const Clause* c : opt.clauses) {
        bool ok = true;
        for (OccId id : c->pos) {
          const Predicate& p = ctx_.table().at(id);
          if (!p.robot) {
            ok = false;
            break;
          }
          const auto j = static_cast<std::size_t>(*p.robot - 1);
          if (busy[j] || !env.near(from.positions[j], p.location)) {
            ok = false;
            break;
          }
        }
        if (ok && (best == nullptr || c->pos.size() < best->pos.size())) best = c;
      }
    }
    if (best == nullptr) return;
    for (OccId id : best->pos) {
      const Predicate& p = ctx_.table().at(id);
      const auto j = static_cast<std::size_t>(*p.robot - 1);
      positions[j] = from.positions[j];
      if (!p.is_mobility()) actions[j] = p.skill;
    }
    for (OccId id : best->pos) busy[static_cast<std::size_t>(*ctx_.table().at(id).robot - 1)] = 1;
  }

  void steer() {
    const Entry e = queue_.top();
    queue_.pop();
    const int idx = e.node;
    const PlanNode from = nodes_[static_cast<std::size_t>(idx)];
    const Plan p = plan_for(from);
    if (p.score >= kInf) return;
    const Environment& env = ctx_.world().env();
    std::vector<Cell> positions = from.positions;
    ActionVector actions(positions.size(), kNoSkill);
    if (p.connect >= 0) {
      const PlanNode& x = goal_.connect[static_cast<std::size_t>(p.connect)];
      for (std::size_t j = 0; j < positions.size(); ++j)
        if (ctx_.world().can_move(static_cast<RobotId>(j + 1)))
          positions[j] = step_toward(positions[j], ctx_.field_to_cell(x.positions[j]));
    } else {
      // Robots already in place work while the rest travel, so standing
      // obligations such as G x keep holding.
      const auto ds = duties(*p.clause, from.positions, nullptr);
      for (const auto& d : ds) {
        const auto j = static_cast<std::size_t>(d.robot - 1);
        if (env.near(from.positions[j], d.location)) {
          if (d.skill != kMobility) actions[j] = d.skill;
          continue;
        }
        const auto& safe = ctx_.field_to_region(d.location, true);
        const auto& field = safe[env.index(from.positions[j])] >= 0 ? safe : env.landmark_field(d.location);
        positions[j] = step_toward(from.positions[j], field);
      }
      std::vector<char> busy(positions.size(), 0);
      for (const auto& d : ds) busy[static_cast<std::size_t>(d.robot - 1)] = 1;
      hold(from, busy, positions, actions);
      std::vector<Cell> helped = positions;
      const auto& todo = upcoming_[static_cast<std::size_t>(from.nba_state)];
      for (std::size_t j = 0; j < positions.size(); ++j) {
        if (busy[j] || todo[j].empty() || !ctx_.world().can_move(static_cast<RobotId>(j + 1))) continue;
        LandmarkId best = -1;
        int best_d = kInf;
        for (LandmarkId l : todo[j]) {
          const int d = robot_distance(static_cast<RobotId>(j + 1), l, from.positions);
          if (d < best_d) {
            best_d = d;
            best = l;
          }
        }
        if (best < 0 || best_d == 0) continue;
        const auto& safe = ctx_.field_to_region(best, true);
        const auto& field = safe[env.index(from.positions[j])] >= 0 ? safe : env.landmark_field(best);
        helped[j] = step_toward(from.positions[j], field);
      }
      if (helped != positions) {
        const int added = expand(idx, helped, actions);
        if (added > 0) {
          auto& pops = pops_[static_cast<std::size_t>(idx)];
          if (++pops < 24) queue_.push(Entry{e.score + 2 * kStepWeight, seq_++, idx});
          return;
        }
      }
    }
    const int added = expand(idx, positions, actions);
    auto& pops = pops_[static_cast<std::size_t>(idx)];
    if (++pops < 24) queue_.push(Entry{e.score + (added > 0 ? 2 * kStepWeight : 8 * kStepWeight), seq_++, idx});
  }

  const PlanContext& ctx_;
  const SearchGoal& goal_;
  SearchOptions options_;
  std::mt19937_64 rng_;
  std::vector<std::set<StateId>> pre_;
  std::vector<int> dist_;
  std::vector<int> base_;  // fewest positives on any transition out of a state
  std::vector<std::vector<SkillId>> skills_;
  std::vector<std::vector<std::set<LandmarkId>>> upcoming_;  // [state][robot - 1]

  std::vector<PlanNode> nodes_;
  std::vector<int> parent_;
  std::vector<int> pops_;
  std::unordered_map<std::uint64_t, std::vector<int>> index_;
  std::priority_queue<Entry> queue_;
  std::uint64_t seq_ = 0;
  int found_ = -1;
  int found_goal_ = -1;
};

}  // namespace

std::optional<SearchResult> plan_prefix(const std::vector<PlanNode>& roots, const PlanContext& ctx,
                                        const SearchGoal& goal, const SearchOptions& options, SearchStats* stats) {
  Search s(ctx, goal, options);
  return s.run(roots, stats);
}

std::optional<PlanPath> plan_suffix(const PlanNode& anchor, const PlanContext& ctx, const SearchOptions& options,
                                    SearchStats* stats) {
  SearchGoal goal;
  goal.connect.push_back(anchor);
  auto r = plan_prefix({anchor}, ctx, goal, options, stats);
  if (!r) return std::nullopt;
  PlanPath suffix(r->path.begin() + 1, r->path.end());
  suffix.push_back(anchor);
  return suffix;
}

namespace {

std::optional<PrefixSuffixPlan> plan_lasso(const PlanContext& ctx, const std::vector<PlanNode>& roots,
                                           const PlanOptions& options, SearchStats* stats) {
  std::set<StateId> blocked;
  for (int attempt = 0; attempt < options.attempts; ++attempt) {
    SearchGoal goal;
    for (StateId f : ctx.live_finals())
      if (blocked.count(f) == 0) goal.finals.insert(f);
    if (goal.finals.empty()) {
      blocked.clear();
      goal.finals = ctx.live_finals();
    }
    if (goal.finals.empty()) return std::nullopt;
    SearchOptions so;
    so.budget = options.budget;
    so.seed = splitmix(options.seed + 0x51ed * static_cast<std::uint64_t>(attempt));
    auto prefix = plan_prefix(roots, ctx, goal, so, stats);
    if (!prefix) return std::nullopt;
    so.seed = splitmix(so.seed ^ 0xa11ceULL);
    auto suffix = plan_suffix(prefix->path.back(), ctx, so, stats);
    if (suffix) return PrefixSuffixPlan{std::move(prefix->path), std::move(*suffix)};
    blocked.insert(prefix->path.back().nba_state);
  }
  return std::nullopt;
}

}  // namespace

std::optional<PrefixSuffixPlan> plan_mission(const PlanContext& ctx, const std::vector<Cell>& start,
                                             const PlanOptions& options, SearchStats* stats) {
  std::vector<PlanNode> roots;
  for (StateId q : ctx.nba().initial())
    roots.push_back(PlanNode{start, ActionVector(start.size(), kNoSkill), q});
  return plan_lasso(ctx, roots, options, stats);
}

std::optional<PrefixSuffixPlan> plan_from(const PlanContext& ctx, const PlanNode& root, const PlanOptions& options,
                                          SearchStats* stats) {
  return plan_lasso(ctx, {root}, options, stats);
}

LassoWord plan_word(const PrefixSuffixPlan& plan, const Labeler& labeler, const WorldState& world) {
  LassoWord w;
  for (std::size_t i = 1; i < plan.prefix.size(); ++i)
    w.stem.push_back(labeler.label(plan.prefix[i].positions, world.all_caps(), plan.prefix[i].actions));
  for (const auto& n : plan.suffix) w.loop.push_back(labeler.label(n.positions, world.all_caps(), n.actions));
  return w;
}

}  // namespace rtlp
