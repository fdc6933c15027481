#include "support.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace rtlp::testing {

std::string fixture_path(const std::string& name) { return std::string(RTLP_SCENARIO_DIR) + "/" + name + ".json"; }

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"scenario1", "scenario2", "aerial", "factory12"};
  return names;
}

const Fixture& fixture(const std::string& name) {
  static std::map<std::string, std::unique_ptr<Fixture>> cache;
  auto& slot = cache[name];
  if (!slot) {
    Scenario sc = load_scenario(fixture_path(name));
    CompiledMission m = compile_mission(sc);
    slot = std::make_unique<Fixture>(Fixture{std::move(sc), std::move(m)});
  }
  return *slot;
}

const std::map<std::string, OccId, std::less<>>& letter_atoms() {
  static const std::map<std::string, OccId, std::less<>> m{{"a", 0}, {"b", 1}, {"c", 2},
                                                           {"d", 3}, {"e", 4}, {"f", 5}};
  return m;
}

Formula parse_letters(const std::string& text) { return parse_ltl(text, letter_atoms()); }

const std::vector<std::string>& corpus_formulas() {
  static const std::vector<std::string> f{
      "F a",
      "G a",
      "a U b",
      "a R b",
      "X a",
      "G F a",
      "F G a",
      "F(a & F b)",
      "F(a & F b) & F c & G !d",
      "F(a & F((b | c) & d & F a)) & G !e",
      "G(!a | F b)",
      "(a U b) U c",
      "a U (b U c)",
      "G(a | X b)",
      "F(a & X(b & X c))",
      "!(a U b) | G c",
      "X X a",
      "G F a & G F b",
      "F G a | G F b",
      "(a R b) & F c",
      "G(a | b) & F !a",
      "F(a & !b) U c",
      "G(!a | X(!b U c))",
      "F G(a & b) & F(c & F d)",
      "F(G(a & b) & c & F d) & F(G(a & b) & e & F f)",
      "F(a & F(b & F c)) & F(d & F(e & F f))",
      "true U a",
      "a & !a | F b",
      "G !a & F b",
      "(X a U G b) | (F c R a)",
  };
  return f;
}

Formula random_formula(std::mt19937_64& rng, int atoms, int depth) {
  std::uniform_int_distribution<int> atom(0, atoms - 1);
  std::uniform_int_distribution<int> kind(0, depth <= 0 ? 1 : 10);
  switch (kind(rng)) {
    case 0: return Formula::atom(atom(rng));
    case 1: return Formula::negate(Formula::atom(atom(rng)));
    case 2: return Formula::negate(random_formula(rng, atoms, depth - 1));
    case 3: return Formula::conj(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 4: return Formula::disj(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 5: return Formula::next(random_formula(rng, atoms, depth - 1));
    case 6: return Formula::until(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 7: return Formula::release(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 8: return Formula::eventually(random_formula(rng, atoms, depth - 1));
    case 9: return Formula::always(random_formula(rng, atoms, depth - 1));
    default: return Formula::atom(atom(rng));
  }
}

std::vector<Symbol> all_symbols(int atoms) {
  std::vector<Symbol> out;
  for (int mask = 0; mask < (1 << atoms); ++mask) {
    std::vector<OccId> ids;
    for (int a = 0; a < atoms; ++a)
      if (mask & (1 << a)) ids.push_back(a);
    out.emplace_back(std::move(ids));
  }
  return out;
}

namespace {

void words_of_length(const std::vector<Symbol>& alphabet, int n, std::vector<std::vector<Symbol>>& out) {
  std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<Symbol> w;
    for (std::size_t d : digits) w.push_back(alphabet[d]);
    out.push_back(std::move(w));
    int i = 0;
    while (i < n && ++digits[static_cast<std::size_t>(i)] == alphabet.size()) digits[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
}

}  // namespace

std::vector<LassoWord> all_lassos(int atoms, int max_stem, int max_loop) {
  const auto alphabet = all_symbols(atoms);
  std::vector<std::vector<Symbol>> stems, loops;
  for (int n = 0; n <= max_stem; ++n) words_of_length(alphabet, n, stems);
  for (int n = 1; n <= max_loop; ++n) words_of_length(alphabet, n, loops);
  std::vector<LassoWord> out;
  out.reserve(stems.size() * loops.size());
  for (const auto& s : stems)
    for (const auto& l : loops) out.push_back(LassoWord{s, l});
  return out;
}

LassoWord random_lasso(std::mt19937_64& rng, int atoms, int max_stem, int max_loop) {
  std::uniform_int_distribution<int> stem(0, max_stem), loop(1, max_loop), letter(0, (1 << atoms) - 1);
  const auto alphabet = all_symbols(atoms);
  LassoWord w;
  for (int i = stem(rng); i > 0; --i) w.stem.push_back(alphabet[static_cast<std::size_t>(letter(rng))]);
  for (int i = loop(rng); i > 0; --i) w.loop.push_back(alphabet[static_cast<std::size_t>(letter(rng))]);
  return w;
}

std::optional<LassoWord> walk_lasso(std::mt19937_64& rng, const Nba& nba, int max_steps) {
  if (nba.initial().empty()) return std::nullopt;
  std::vector<StateId> starts(nba.initial().begin(), nba.initial().end());
  std::uniform_int_distribution<std::size_t> pick_start(0, starts.size() - 1);
  std::vector<StateId> states{starts[pick_start(rng)]};
  std::vector<Symbol> letters;
  for (int step = 0; step < max_steps; ++step) {
    const auto succ = nba.successors(states.back());
    if (succ.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, succ.size() - 1);
    const auto& [to, guard] = succ[pick(rng)];
    const Dnf& dnf = guard->dnf();
    if (dnf.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick_clause(0, dnf.size() - 1);
    letters.push_back(Symbol(dnf[pick_clause(rng)].pos));
    states.push_back(to);
    // Close the lasso at the latest earlier visit of `to` that leaves a
    // final state inside the loop.
    for (std::size_t j = states.size() - 1; j-- > 0;) {
      if (states[j] != to) continue;
      bool final_inside = false;
      for (std::size_t k = j + 1; k < states.size(); ++k) final_inside = final_inside || nba.is_final(states[k]);
      if (!final_inside) continue;
      LassoWord w;
      w.stem.assign(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(j));
      w.loop.assign(letters.begin() + static_cast<std::ptrdiff_t>(j), letters.end());
      return w;
    }
  }
  return std::nullopt;
}

const PredicateTable& letter_table() {
  static const PredicateTable table = [] {
    PredicateTable t;
    // a, b: robot 1 with two skills at two places; c, d: robot 2 at two
    // places; e: robot 3; f: whole-team presence.
    t.declare({"a", 2, 1, 0, 2});
    t.declare({"b", 3, 1, 1, 3});
    t.declare({"c", 2, 2, 0, 2});
    t.declare({"d", 2, 2, 1, 2});
    t.declare({"e", 3, 3, 2, 3});
    t.declare({"f", kMobility, std::nullopt, 2, kMobility});
    for (const char* n : {"a", "b", "c", "d", "e", "f"}) t.add_occurrence(n);
    t.expand_rebindings(3);
    return t;
  }();
  return table;
}

namespace {

bool holds(const Predicate& p, const std::vector<Cell>& positions, const std::vector<CapabilityVector>& caps,
           const ActionVector& actions, const Environment& env) {
  auto one = [&](std::size_t j) {
    if (!caps[j].has(p.skill)) return false;
    if (!p.robot && !caps[j].has(p.team)) return false;
    const Landmark& l = env.landmark(p.location);
    const int d = std::abs(positions[j].x - l.cell.x) + std::abs(positions[j].y - l.cell.y);
    if (d > l.radius) return false;
    return p.skill == kMobility || actions[j] == p.skill;
  };
  if (p.robot) return one(static_cast<std::size_t>(*p.robot - 1));
  for (std::size_t j = 0; j < positions.size(); ++j)
    if (one(j)) return true;
  return false;
}

Symbol label_of(const PlanNode& n, const PredicateTable& table, const WorldState& world) {
  std::vector<OccId> ids;
  for (const Predicate& p : table.all())
    if (holds(p, n.positions, world.all_caps(), n.actions, world.env())) ids.push_back(p.id);
  return Symbol(std::move(ids));
}

}  // namespace

LassoWord word_of(const PrefixSuffixPlan& plan, const PredicateTable& table, const WorldState& world) {
  LassoWord w;
  for (std::size_t i = 1; i < plan.prefix.size(); ++i) w.stem.push_back(label_of(plan.prefix[i], table, world));
  for (const auto& n : plan.suffix) w.loop.push_back(label_of(n, table, world));
  return w;
}

bool one_skill_per_robot(const Clause& c, const PredicateTable& table) {
  std::map<RobotId, std::set<std::pair<SkillId, LandmarkId>>> asks;
  for (OccId id : c.pos) {
    const Predicate& p = table.at(id);
    if (p.robot) asks[*p.robot].insert({p.skill, p.location});
  }
  for (const auto& [robot, set] : asks) {
    std::set<LandmarkId> places;
    std::set<SkillId> skills;
    for (const auto& [s, l] : set) {
      places.insert(l);
      if (s != kMobility) skills.insert(s);
    }
    if (places.size() > 1 || skills.size() > 1) return false;
  }
  return true;
}

// ---- reassignment -----------------------------------------------------------

std::string ReassignCase::describe() const {
  std::ostringstream s;
  s << "robots " << world->num_robots() << ":";
  for (int j = 1; j <= world->num_robots(); ++j) {
    s << " r" << j << "{";
    for (SkillId c : world->caps(j).skills()) s << c << ",";
    s << "}@(" << world->position(j).x << "," << world->position(j).y << ")";
  }
  s << " | landmarks:";
  for (const auto& l : env->landmarks()) s << " " << l.name << "(" << l.cell.x << "," << l.cell.y << ";r" << l.radius << ")";
  s << " | clause:";
  for (OccId id : clause.pos) {
    const Predicate& p = table->at(id);
    s << " " << p.name << "[s" << p.skill << " r" << (p.robot ? *p.robot : 0) << " l" << p.location << "]";
  }
  for (OccId id : clause.neg) {
    const Predicate& p = table->at(id);
    s << " !" << p.name << "[s" << p.skill << " r" << (p.robot ? *p.robot : 0) << " t" << p.team << " l"
      << p.location << "]";
  }
  s << " | failed " << table->at(failed).name;
  return s.str();
}

std::optional<ReassignCase> random_reassign_case(std::mt19937_64& rng, int max_robots, int max_preds,
                                                 int max_skills) {
  auto uni = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int width = 5, height = 5;
  const int num_skills = uni(2, max_skills);
  const int num_robots = uni(2, max_robots);
  const int num_landmarks = uni(2, 3);

  std::set<Cell> obstacles;
  std::vector<Landmark> landmarks;
  std::set<Cell> used;
  for (int l = 0; l < num_landmarks; ++l) {
    Cell c{uni(0, width - 1), uni(0, height - 1)};
    if (!used.insert(c).second) return std::nullopt;
    landmarks.push_back(Landmark{"l" + std::to_string(l), c, uni(0, 1)});
  }
  std::vector<std::string> skills{"move"};
  for (int s = 2; s <= num_skills; ++s) skills.push_back("s" + std::to_string(s));
  auto env = std::make_shared<const Environment>(width, height, obstacles, landmarks, skills);

  std::vector<CapabilityVector> caps;
  std::vector<Cell> positions;
  for (int j = 0; j < num_robots; ++j) {
    CapabilityVector v;
    v.set(kMobility);
    for (int s = 2; s <= num_skills; ++s)
      if (uni(0, 1) == 1) v.set(s);
    caps.push_back(v);
    positions.push_back(Cell{uni(0, width - 1), uni(0, height - 1)});
  }

  // Predicates: each robot gets at most one positive (skill, place) so the
  // clause survives pruning; negations are assigned or whole-team.
  auto table = std::make_unique<PredicateTable>();
  const int num_preds = uni(2, max_preds);
  std::vector<std::pair<std::string, bool>> uses;  // name, negated
  std::map<RobotId, std::pair<SkillId, LandmarkId>> duty;
  bool have_failable = false;
  for (int k = 0; k < num_preds; ++k) {
    const std::string name = "q" + std::to_string(k);
    const bool negated = k > 0 && uni(0, 3) == 0;
    if (!negated) {
      const RobotId j = uni(1, num_robots);
      const auto& mine = caps[static_cast<std::size_t>(j - 1)];
      std::vector<SkillId> own;
      for (SkillId s : mine.skills()) own.push_back(s);
      SkillId s = own[static_cast<std::size_t>(uni(0, static_cast<int>(own.size()) - 1))];
      LandmarkId l = uni(0, num_landmarks - 1);
      if (auto it = duty.find(j); it != duty.end()) {
        l = it->second.second;
        if (s != kMobility && it->second.first != kMobility && s != it->second.first) s = kMobility;
        if (s != kMobility) it->second.first = s;
      } else {
        duty[j] = {s, l};
      }
      table->declare({name, s, j, l, s});
      have_failable = have_failable || s != kMobility;
    } else if (uni(0, 1) == 0) {
      const RobotId j = uni(1, num_robots);
      const SkillId s = uni(1, num_skills);
      table->declare({name, s, j, uni(0, num_landmarks - 1), s});
    } else {
      const SkillId team = uni(1, num_skills);
      const SkillId s = uni(0, 1) == 0 ? kMobility : team;
      table->declare({name, s, std::nullopt, uni(0, num_landmarks - 1), team});
    }
    uses.emplace_back(name, negated);
  }
  if (!have_failable) return std::nullopt;
  Clause clause;
  for (const auto& [name, negated] : uses) {
    const OccId id = table->add_occurrence(name);
    (negated ? clause.neg : clause.pos).push_back(id);
  }
  clause.normalize();
  table->expand_rebindings(num_robots);

  std::vector<OccId> failable;
  for (OccId id : clause.pos)
    if (!table->at(id).is_mobility()) failable.push_back(id);
  const OccId failed = failable[static_cast<std::size_t>(uni(0, static_cast<int>(failable.size()) - 1))];
  const Predicate& fp = table->at(failed);
  caps[static_cast<std::size_t>(*fp.robot - 1)].clear(fp.skill);

  ReassignCase rc;
  rc.env = env;
  rc.world = std::make_unique<WorldState>(env, positions, caps, 1);
  rc.table = std::move(table);
  rc.clause = clause;
  rc.failed = failed;
  return rc;
}

namespace {

// Robot r alone can satisfy every occurrence of `bundle` (rebound to r)
// at some free cell with some action, without making a negated occurrence
// of the clause true.
bool oracle_can_do(const ClauseContext& ctx, RobotId r, const std::vector<OccId>& bundle,
                   const PredicateTable& table, const WorldState& state) {
  const Environment& env = state.env();
  const CapabilityVector& caps = state.caps(r);
  std::vector<SkillId> actions{kNoSkill};
  for (SkillId s : caps.skills()) actions.push_back(s);
  std::vector<Cell> positions(static_cast<std::size_t>(state.num_robots()), Cell{-100, -100});
  ActionVector acts(static_cast<std::size_t>(state.num_robots()), kNoSkill);
  std::vector<CapabilityVector> all(static_cast<std::size_t>(state.num_robots()));
  all[static_cast<std::size_t>(r - 1)] = caps;
  for (int y = 0; y < env.height(); ++y)
    for (int x = 0; x < env.width(); ++x) {
      const Cell c{x, y};
      if (!env.free(c)) continue;
      for (SkillId a : actions) {
        positions[static_cast<std::size_t>(r - 1)] = c;
        acts[static_cast<std::size_t>(r - 1)] = a;
        bool ok = true;
        for (OccId id : bundle) ok = ok && holds(table.at(table.rebind(id, r)), positions, all, acts, env);
        for (OccId id : ctx.clause.neg) ok = ok && !holds(table.at(id), positions, all, acts, env);
        if (ok) return true;
      }
    }
  return false;
}

// Clause after moving the failed occurrence to path[1] and each robot's
// own positives one step along the path.
Clause moved_clause(const ClauseContext& ctx, const std::vector<RobotId>& path, const PredicateTable& table) {
  Clause out;
  out.neg = ctx.clause.neg;
  for (OccId id : ctx.clause.pos) {
    const Predicate& p = table.at(id);
    RobotId to = p.robot ? *p.robot : 0;
    if (id == ctx.failed) to = path[1];
    else
      for (std::size_t k = 1; k + 1 < path.size(); ++k)
        if (p.robot == path[k] && ctx.busy(path[k])) to = path[k + 1];
    out.pos.push_back(p.robot && to != *p.robot ? table.rebind(id, to) : id);
  }
  out.normalize();
  return out;
}

}  // namespace

std::optional<std::vector<RobotId>> dfs_reassign(const ClauseContext& ctx, const PredicateTable& table,
                                                 const WorldState& state) {
  const RobotId root = *table.at(ctx.failed).robot;
  std::optional<std::vector<RobotId>> best;
  std::vector<RobotId> path{root};
  std::function<void()> dfs = [&]() {
    if (best && path.size() >= best->size()) return;
    const RobotId last = path.back();
    const std::vector<OccId> handed = path.size() == 1 ? std::vector<OccId>{ctx.failed} : ctx.g.at(last);
    for (RobotId r = 1; r <= state.num_robots(); ++r) {
      if (r == last) continue;
      if (r != root && std::find(path.begin(), path.end(), r) != path.end()) continue;
      if (!oracle_can_do(ctx, r, handed, table, state)) continue;
      path.push_back(r);
      if (r == root || !ctx.busy(r)) {
        if (one_skill_per_robot(moved_clause(ctx, path, table), table) && (!best || path.size() < best->size()))
          best = path;
      } else {
        dfs();
      }
      path.pop_back();
    }
  };
  dfs();
  return best;
}

std::vector<Symbol> forbidden_by_valuation(const ClauseContext& ctx, RobotId i, const PredicateTable& table,
                                           const WorldState& state) {
  const Environment& env = state.env();
  const auto preds = robot_predicates(ctx, i, table, state);
  std::set<Symbol> generated;
  std::vector<Cell> positions(static_cast<std::size_t>(state.num_robots()), Cell{-100, -100});
  ActionVector acts(static_cast<std::size_t>(state.num_robots()), kNoSkill);
  std::vector<CapabilityVector> all(static_cast<std::size_t>(state.num_robots()));
  all[static_cast<std::size_t>(i - 1)] = state.caps(i);
  std::vector<SkillId> actions{kNoSkill};
  for (SkillId s : state.caps(i).skills()) actions.push_back(s);
  for (int y = 0; y < env.height(); ++y)
    for (int x = 0; x < env.width(); ++x) {
      if (!env.free(Cell{x, y})) continue;
      for (SkillId a : actions) {
        positions[static_cast<std::size_t>(i - 1)] = Cell{x, y};
        acts[static_cast<std::size_t>(i - 1)] = a;
        std::vector<OccId> ids;
        for (OccId id : preds)
          if (holds(table.at(id), positions, all, acts, env)) ids.push_back(id);
        generated.insert(Symbol(std::move(ids)));
      }
    }
  // Other robots may make any atom of the clause true; negated atoms the
  // symbol already makes true stay true.
  const std::vector<OccId> atoms = ctx.clause.atoms();
  std::vector<Symbol> out;
  for (const Symbol& s : generated) {
    bool satisfiable = false;
    for (std::uint32_t mask = 0; mask < (1U << atoms.size()) && !satisfiable; ++mask) {
      std::vector<OccId> ids = s.ids();
      for (std::size_t k = 0; k < atoms.size(); ++k)
        if (mask & (1U << k)) ids.push_back(atoms[k]);
      satisfiable = ctx.clause.satisfied_by(Symbol(std::move(ids)));
    }
    if (!satisfiable) out.push_back(s);
  }
  return out;
}

}  // namespace rtlp::testing
