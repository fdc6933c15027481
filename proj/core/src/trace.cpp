#include "rtlp/trace.hpp"

#include <sstream>

#include "json.hpp"

namespace rtlp {

TraceError::TraceError(const std::string& what, int line)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

PrefixSuffixPlan Trace::plan() const {
  PrefixSuffixPlan p;
  for (const auto& s : steps) {
    if (s.phase == Phase::Prefix) p.prefix.push_back(s.node);
    if (s.phase == Phase::Suffix) p.suffix.push_back(s.node);
  }
  return p;
}

Trace make_trace(const std::vector<TraceStep>& history, const PrefixSuffixPlan& plan, int root_time,
                 const std::vector<CapabilityVector>& caps) {
  Trace tr;
  tr.num_robots = static_cast<int>(caps.size());
  tr.caps = caps;
  tr.steps = history;
  int t = root_time;
  for (const auto& n : plan.prefix) tr.steps.push_back(TraceStep{t++, Phase::Prefix, n});
  for (const auto& n : plan.suffix) tr.steps.push_back(TraceStep{t++, Phase::Suffix, n});
  return tr;
}

std::string write_trace(const Trace& trace) {
  std::ostringstream out;
  out << "rtlp-trace 1\n";
  out << "robots " << trace.num_robots << "\n";
  for (int j = 0; j < trace.num_robots; ++j) {
    out << "caps " << j + 1;
    for (SkillId c : trace.caps[static_cast<std::size_t>(j)].skills()) out << ' ' << c;
    out << "\n";
  }
  for (const auto& s : trace.steps) {
    out << "step " << s.time << ' ' << static_cast<char>(s.phase) << ' ' << s.node.nba_state;
    for (std::size_t j = 0; j < s.node.positions.size(); ++j)
      out << ' ' << s.node.positions[j].x << ' ' << s.node.positions[j].y << ' ' << s.node.actions[j];
    out << "\n";
  }
  return out.str();
}

Trace parse_trace(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto next = [&](std::istringstream& words) {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      words = std::istringstream(line);
      return true;
    }
    return false;
  };
  auto expect_end = [&](std::istringstream& words) {
    std::string extra;
    if (words >> extra) throw TraceError("unexpected '" + extra + "'", lineno);
  };
  std::istringstream words;
  std::string tag;
  int version = 0;
  if (!next(words) || !(words >> tag >> version) || tag != "rtlp-trace")
    throw TraceError("missing 'rtlp-trace' header", lineno);
  if (version != 1) throw TraceError("unsupported trace version " + std::to_string(version), lineno);
  expect_end(words);
  Trace tr;
  if (!next(words) || !(words >> tag >> tr.num_robots) || tag != "robots" || tr.num_robots < 1 ||
      tr.num_robots > 4096)
    throw TraceError("expected 'robots <N>'", lineno);
  expect_end(words);
  tr.caps.resize(static_cast<std::size_t>(tr.num_robots));
  for (int j = 1; j <= tr.num_robots; ++j) {
    int id = 0;
    if (!next(words) || !(words >> tag >> id) || tag != "caps" || id != j)
      throw TraceError("expected 'caps " + std::to_string(j) + " ...'", lineno);
    int c = 0;
    while (words >> c) {
      if (c < 1 || c > 64) throw TraceError("skill id out of range", lineno);
      tr.caps[static_cast<std::size_t>(j - 1)].set(c);
    }
    if (!words.eof()) throw TraceError("malformed skill list", lineno);
  }
  while (next(words)) {
    TraceStep s;
    char phase = 0;
    if (!(words >> tag >> s.time >> phase >> s.node.nba_state) || tag != "step")
      throw TraceError("expected 'step <t> <H|P|S> <q> ...'", lineno);
    if (phase != 'H' && phase != 'P' && phase != 'S') throw TraceError("unknown phase", lineno);
    s.phase = static_cast<Phase>(phase);
    for (int j = 0; j < tr.num_robots; ++j) {
      Cell c;
      SkillId a = 0;
      if (!(words >> c.x >> c.y >> a)) throw TraceError("step needs x y action for every robot", lineno);
      s.node.positions.push_back(c);
      s.node.actions.push_back(a);
    }
    expect_end(words);
    tr.steps.push_back(std::move(s));
  }
  return tr;
}

std::string write_trace_json(const Trace& trace) {
  nlohmann::ordered_json doc;
  doc["format"] = "rtlp-trace";
  doc["version"] = 1;
  doc["robots"] = trace.num_robots;
  auto caps = nlohmann::ordered_json::array();
  for (const auto& c : trace.caps) caps.push_back(c.skills());
  doc["caps"] = caps;
  auto steps = nlohmann::ordered_json::array();
  for (const auto& s : trace.steps) {
    nlohmann::ordered_json j;
    j["t"] = s.time;
    j["phase"] = std::string(1, static_cast<char>(s.phase));
    j["q"] = s.node.nba_state;
    auto robots = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < s.node.positions.size(); ++r)
      robots.push_back({s.node.positions[r].x, s.node.positions[r].y, s.node.actions[r]});
    j["robots"] = robots;
    steps.push_back(j);
  }
  doc["steps"] = steps;
  return doc.dump(1) + "\n";
}

Trace parse_trace_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.at("format") != "rtlp-trace") throw TraceError("not an rtlp-trace document", 0);
    if (doc.at("version") != 1) throw TraceError("unsupported trace version", 0);
    Trace tr;
    tr.num_robots = doc.at("robots").get<int>();
    if (tr.num_robots < 1 || tr.num_robots > 4096) throw TraceError("bad robot count", 0);
    const auto& caps = doc.at("caps");
    if (!caps.is_array() || static_cast<int>(caps.size()) != tr.num_robots) throw TraceError("caps must list every robot", 0);
    for (const auto& c : caps) {
      CapabilityVector v;
      for (const auto& id : c) {
        const int k = id.get<int>();
        if (k < 1 || k > 64) throw TraceError("skill id out of range", 0);
        v.set(k);
      }
      tr.caps.push_back(v);
    }
    int i = 0;
    for (const auto& j : doc.at("steps")) {
      ++i;
      TraceStep s;
      s.time = j.at("t").get<int>();
      const auto phase = j.at("phase").get<std::string>();
      if (phase != "H" && phase != "P" && phase != "S") throw TraceError("unknown phase", i);
      s.phase = static_cast<Phase>(phase[0]);
      s.node.nba_state = j.at("q").get<StateId>();
      const auto& robots = j.at("robots");
      if (static_cast<int>(robots.size()) != tr.num_robots) throw TraceError("step needs every robot", i);
      for (const auto& r : robots) {
        if (r.size() != 3) throw TraceError("robot entry is [x, y, action]", i);
        s.node.positions.push_back(Cell{r[0].get<int>(), r[1].get<int>()});
        s.node.actions.push_back(r[2].get<SkillId>());
      }
      tr.steps.push_back(std::move(s));
    }
    return tr;
  } catch (const nlohmann::json::exception& e) {
    throw TraceError(e.what(), 0);
  }
}

Trace read_trace(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_trace_json(text);
  return parse_trace(text);
}

TraceVerdict check_trace(const Trace& trace, const Nba& nba, const PredicateTable& table, const Environment& env) {
  TraceVerdict v;
  auto fail = [&v](std::string why) {
    if (v.problem.empty()) v.problem = std::move(why);
    return v;
  };
  const auto& steps = trace.steps;
  int order = 0;  // 0 history, 1 prefix, 2 suffix
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const int o = steps[i].phase == Phase::History ? 0 : steps[i].phase == Phase::Prefix ? 1 : 2;
    if (o < order) return fail("phases out of order at step " + std::to_string(i));
    order = o;
    if (i > 0 && steps[i].time != steps[i - 1].time + 1)
      return fail("time does not advance by one at step " + std::to_string(i));
    if (static_cast<int>(steps[i].node.positions.size()) != trace.num_robots)
      return fail("wrong robot count at step " + std::to_string(i));
  }
  const PrefixSuffixPlan plan = trace.plan();
  if (plan.prefix.empty() || plan.suffix.empty()) return fail("trace has no prefix or no suffix");
  if (!plan.suffix.back().same_place(plan.prefix.back()) ||
      plan.suffix.back().nba_state != plan.prefix.back().nba_state)
    return fail("suffix does not close at the last prefix step");
  v.well_formed = true;

  auto legal = [&env](const PlanNode& a, const PlanNode& b) {
    for (std::size_t j = 0; j < a.positions.size(); ++j) {
      if (!env.free(b.positions[j]) || manhattan(a.positions[j], b.positions[j]) > 1) return false;
    }
    return true;
  };
  for (const auto& s : steps)
    for (Cell c : s.node.positions)
      if (!env.free(c)) return fail("robot on a blocked cell at time " + std::to_string(s.time));
  for (std::size_t i = 1; i < steps.size(); ++i)
    if (!legal(steps[i - 1].node, steps[i].node)) return fail("illegal move into time " + std::to_string(steps[i].time));
  if (!legal(plan.suffix.back(), plan.suffix.front())) return fail("illegal move closing the loop");
  v.dynamics = true;

  const Labeler labeler(table, env);
  LassoWord w;
  try {
    for (std::size_t i = 1; i < plan.prefix.size(); ++i)
      w.stem.push_back(labeler.label(plan.prefix[i].positions, trace.caps, plan.prefix[i].actions));
    for (const auto& n : plan.suffix) w.loop.push_back(labeler.label(n.positions, trace.caps, n.actions));
  } catch (const WorldError& e) {
    return fail(e.what());
  }
  const StateId start = plan.prefix.front().nba_state;
  if (!nba.has_state(start)) return fail("unknown automaton state " + std::to_string(start));
  v.accepted = accepting_run_check(nba, w, {start});
  if (!v.accepted) return fail("the automaton rejects the plan");
  return v;
}

}  // namespace rtlp
