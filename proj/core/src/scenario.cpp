#include "rtlp/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rtlp {

using json = nlohmann::ordered_json;

ScenarioError::ScenarioError(std::string path, const std::string& what)
    : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

WorldState Scenario::initial_world() const {
  std::vector<Cell> pos;
  std::vector<CapabilityVector> caps;
  for (const auto& r : robots) {
    pos.push_back(r.start);
    caps.push_back(CapabilityVector::of(r.skills));
  }
  return WorldState(env, std::move(pos), std::move(caps), 0);
}

namespace {

std::string at(const std::string& base, std::string_view key) {
  return base.empty() ? std::string(key) : base + "." + std::string(key);
}
std::string at(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

const json& field(const json& obj, const std::string& path, std::string_view key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ScenarioError(at(path, key), "missing field");
  return *it;
}

const json& object(const json& v, const std::string& path) {
  if (!v.is_object()) throw ScenarioError(path, "expected an object");
  return v;
}

const json& array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ScenarioError(path, "expected an array");
  return v;
}

std::string string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ScenarioError(path, "expected a string");
  return v.get<std::string>();
}

long long integer(const json& v, const std::string& path, long long lo, long long hi) {
  if (!v.is_number_integer()) throw ScenarioError(path, "expected an integer");
  const auto x = v.get<long long>();
  if (x < lo || x > hi)
    throw ScenarioError(path, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
  return x;
}

Cell cell(const json& v, const std::string& path) {
  array(v, path);
  if (v.size() != 2) throw ScenarioError(path, "a cell is [x, y]");
  return Cell{static_cast<int>(integer(v[0], at(path, 0), 0, 1 << 20)),
              static_cast<int>(integer(v[1], at(path, 1), 0, 1 << 20))};
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> keys) {
  for (const auto& [k, _] : obj.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ScenarioError(at(path, k), "unknown field");
}

SkillId skill_ref(const json& v, const std::string& path, const std::vector<std::string>& skills) {
  const std::string name = string(v, path);
  auto it = std::find(skills.begin(), skills.end(), name);
  if (it == skills.end()) throw ScenarioError(path, "unknown skill '" + name + "'");
  return static_cast<SkillId>(it - skills.begin() + 1);
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError("", std::string("malformed JSON: ") + e.what());
  }
  object(doc, "");
  reject_unknown(doc, "", {"format", "version", "name", "grid", "skills", "landmarks", "robots", "predicates",
                           "mission", "failures", "seed", "budgets"});
  if (string(field(doc, "", "format"), "format") != "rtlp-scenario")
    throw ScenarioError("format", "expected \"rtlp-scenario\"");
  if (integer(field(doc, "", "version"), "version", 0, 1 << 20) != kScenarioVersion)
    throw ScenarioError("version", "unsupported version");

  Scenario sc;
  sc.name = string(field(doc, "", "name"), "name");

  const json& grid = object(field(doc, "", "grid"), "grid");
  reject_unknown(grid, "grid", {"width", "height", "obstacles"});
  const int width = static_cast<int>(integer(field(grid, "grid", "width"), "grid.width", 1, 4096));
  const int height = static_cast<int>(integer(field(grid, "grid", "height"), "grid.height", 1, 4096));
  std::set<Cell> obstacles;
  if (grid.contains("obstacles")) {
    const json& obs = array(grid["obstacles"], "grid.obstacles");
    for (std::size_t i = 0; i < obs.size(); ++i) {
      const Cell c = cell(obs[i], at("grid.obstacles", i));
      if (c.x >= width || c.y >= height) throw ScenarioError(at("grid.obstacles", i), "outside the grid");
      obstacles.insert(c);
    }
  }

  const json& skills_json = array(field(doc, "", "skills"), "skills");
  std::vector<std::string> skills;
  for (std::size_t i = 0; i < skills_json.size(); ++i) {
    std::string s = string(skills_json[i], at("skills", i));
    if (s.empty()) throw ScenarioError(at("skills", i), "empty skill name");
    if (std::find(skills.begin(), skills.end(), s) != skills.end())
      throw ScenarioError(at("skills", i), "duplicate skill '" + s + "'");
    skills.push_back(std::move(s));
  }
  if (skills.empty()) throw ScenarioError("skills", "the first skill is mobility and must be present");
  if (skills.size() > 64) throw ScenarioError("skills", "at most 64 skills");

  const json& lm_json = array(field(doc, "", "landmarks"), "landmarks");
  std::vector<Landmark> landmarks;
  for (std::size_t i = 0; i < lm_json.size(); ++i) {
    const std::string p = at("landmarks", i);
    const json& l = object(lm_json[i], p);
    reject_unknown(l, p, {"name", "cell", "radius"});
    Landmark lm;
    lm.name = string(field(l, p, "name"), at(p, "name"));
    lm.cell = cell(field(l, p, "cell"), at(p, "cell"));
    lm.radius = l.contains("radius") ? static_cast<int>(integer(l["radius"], at(p, "radius"), 0, 64)) : 0;
    if (lm.cell.x >= width || lm.cell.y >= height || obstacles.count(lm.cell) != 0)
      throw ScenarioError(at(p, "cell"), "not a free cell of the grid");
    for (const auto& other : landmarks)
      if (other.name == lm.name) throw ScenarioError(at(p, "name"), "duplicate landmark '" + lm.name + "'");
    landmarks.push_back(std::move(lm));
  }
  try {
    sc.env = std::make_shared<Environment>(width, height, obstacles, landmarks, skills);
  } catch (const WorldError& e) {
    throw ScenarioError("grid", e.what());
  }

  const json& robots = array(field(doc, "", "robots"), "robots");
  if (robots.empty()) throw ScenarioError("robots", "at least one robot is required");
  for (std::size_t i = 0; i < robots.size(); ++i) {
    const std::string p = at("robots", i);
    const json& r = object(robots[i], p);
    reject_unknown(r, p, {"start", "skills"});
    RobotSpec spec;
    spec.start = cell(field(r, p, "start"), at(p, "start"));
    if (!sc.env->free(spec.start)) throw ScenarioError(at(p, "start"), "not a free cell of the grid");
    const json& rs = array(field(r, p, "skills"), at(p, "skills"));
    for (std::size_t k = 0; k < rs.size(); ++k) spec.skills.push_back(skill_ref(rs[k], at(at(p, "skills"), k), skills));
    std::sort(spec.skills.begin(), spec.skills.end());
    spec.skills.erase(std::unique(spec.skills.begin(), spec.skills.end()), spec.skills.end());
    sc.robots.push_back(std::move(spec));
  }
  const int n = sc.num_robots();

  const json& preds = array(field(doc, "", "predicates"), "predicates");
  std::set<std::string> names;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const std::string p = at("predicates", i);
    const json& d = object(preds[i], p);
    reject_unknown(d, p, {"name", "skill", "robot", "landmark", "team"});
    PredicateDecl decl;
    decl.name = string(field(d, p, "name"), at(p, "name"));
    if (decl.name.empty() || decl.name.find_first_of("#@ \t") != std::string::npos)
      throw ScenarioError(at(p, "name"), "predicate names must be non-empty and free of '#', '@' and blanks");
    if (!names.insert(decl.name).second) throw ScenarioError(at(p, "name"), "duplicate predicate '" + decl.name + "'");
    decl.skill = skill_ref(field(d, p, "skill"), at(p, "skill"), skills);
    decl.team = d.contains("team") ? skill_ref(d["team"], at(p, "team"), skills) : decl.skill;
    const json& robot = field(d, p, "robot");
    if (!robot.is_null()) {
      decl.robot = static_cast<RobotId>(integer(robot, at(p, "robot"), 1, n));
      const auto& rs = sc.robots[static_cast<std::size_t>(*decl.robot - 1)].skills;
      if (!std::binary_search(rs.begin(), rs.end(), decl.skill))
        throw ScenarioError(at(p, "robot"), "robot " + std::to_string(*decl.robot) + " lacks skill '" +
                                                skills[static_cast<std::size_t>(decl.skill - 1)] + "'");
    }
    const std::string lname = string(field(d, p, "landmark"), at(p, "landmark"));
    const auto l = sc.env->find_landmark(lname);
    if (!l) throw ScenarioError(at(p, "landmark"), "unknown landmark '" + lname + "'");
    decl.location = *l;
    sc.predicates.push_back(std::move(decl));
  }

  sc.mission = string(field(doc, "", "mission"), "mission");

  std::map<int, std::vector<FailureEvent>> batches;
  if (doc.contains("failures")) {
    const json& fs = array(doc["failures"], "failures");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const std::string p = at("failures", i);
      const json& f = object(fs[i], p);
      reject_unknown(f, p, {"time", "robot", "skill"});
      const int time = static_cast<int>(integer(field(f, p, "time"), at(p, "time"), 1, 1 << 30));
      FailureEvent e;
      e.robot = static_cast<RobotId>(integer(field(f, p, "robot"), at(p, "robot"), 1, n));
      const json& s = field(f, p, "skill");
      if (!(s.is_string() && s.get<std::string>() == "ALL")) e.skill = skill_ref(s, at(p, "skill"), skills);
      batches[time].push_back(e);
    }
  }
  for (auto& [t, ev] : batches) sc.failures.push_back(FailureBatch{t, std::move(ev)});

  if (doc.contains("seed"))
    sc.seed = static_cast<std::uint64_t>(integer(doc["seed"], "seed", 0, std::numeric_limits<long long>::max()));
  if (doc.contains("budgets")) {
    const json& b = object(doc["budgets"], "budgets");
    reject_unknown(b, "budgets", {"tree", "total", "attempts"});
    if (b.contains("tree")) sc.budgets.tree = static_cast<int>(integer(b["tree"], "budgets.tree", 1, 1 << 30));
    if (b.contains("total")) sc.budgets.total = static_cast<int>(integer(b["total"], "budgets.total", 1, 1 << 30));
    if (b.contains("attempts"))
      sc.budgets.attempts = static_cast<int>(integer(b["attempts"], "budgets.attempts", 1, 1000));
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("", "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string scenario_to_json(const Scenario& sc) {
  const Environment& env = *sc.env;
  json doc;
  doc["format"] = "rtlp-scenario";
  doc["version"] = kScenarioVersion;
  doc["name"] = sc.name;
  json obstacles = json::array();
  for (Cell c : env.obstacles()) obstacles.push_back({c.x, c.y});
  doc["grid"] = {{"width", env.width()}, {"height", env.height()}, {"obstacles", obstacles}};
  json skills = json::array();
  for (SkillId c = 1; c <= env.num_skills(); ++c) skills.push_back(env.skill_name(c));
  doc["skills"] = skills;
  json lms = json::array();
  for (const auto& l : env.landmarks()) lms.push_back({{"name", l.name}, {"cell", {l.cell.x, l.cell.y}}, {"radius", l.radius}});
  doc["landmarks"] = lms;
  json robots = json::array();
  for (const auto& r : sc.robots) {
    json s = json::array();
    for (SkillId c : r.skills) s.push_back(env.skill_name(c));
    robots.push_back({{"start", {r.start.x, r.start.y}}, {"skills", s}});
  }
  doc["robots"] = robots;
  json preds = json::array();
  for (const auto& p : sc.predicates) {
    json d = {{"name", p.name},
              {"skill", env.skill_name(p.skill)},
              {"landmark", env.landmark(p.location).name},
              {"team", env.skill_name(p.team)}};
    d["robot"] = p.robot ? json(*p.robot) : json(nullptr);
    preds.push_back(d);
  }
  doc["predicates"] = preds;
  doc["mission"] = sc.mission;
  json fails = json::array();
  for (const auto& b : sc.failures)
    for (const auto& e : b.events)
      fails.push_back({{"time", b.time}, {"robot", e.robot}, {"skill", e.skill ? json(env.skill_name(*e.skill)) : json("ALL")}});
  doc["failures"] = fails;
  doc["seed"] = sc.seed;
  doc["budgets"] = {{"tree", sc.budgets.tree}, {"total", sc.budgets.total}, {"attempts", sc.budgets.attempts}};
  return doc.dump(2) + "\n";
}

}  // namespace rtlp
