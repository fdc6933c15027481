#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rtlp/hoa.hpp"
#include "rtlp/mission.hpp"

namespace fs = std::filesystem;
using namespace rtlp;

namespace {

// Exit codes: 0 success, 1 bad input or I/O error, 2 the run or check failed.
constexpr int kBadInput = 1;
constexpr int kFailed = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A scenario argument is a path, or a fixture name looked up in the bundled
// scenario directory.
fs::path resolve_scenario(const std::string& arg) {
  if (fs::exists(arg)) return arg;
  for (const fs::path& dir : {fs::path(RTLP_SCENARIO_DIR), fs::path("scenarios")}) {
    const fs::path p = dir / (arg + ".json");
    if (fs::exists(p)) return p;
  }
  throw InputError("no scenario file or fixture named '" + arg + "'");
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InputError("cannot write " + out);
  f << text;
}

std::string format_trace(const Trace& t, const std::string& format) {
  return format == "json" ? write_trace_json(t) : write_trace(t);
}

struct Common {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::optional<int> budget;
  std::string out;
  std::string trace_format = "text";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--scenario", c.scenario, "Scenario file or bundled fixture name")->required();
  cmd->add_option("--seed", c.seed, "Override the scenario seed");
  cmd->add_option("--budget", c.budget, "Override the per-tree iteration budget")->check(CLI::PositiveNumber);
  cmd->add_option("--out", c.out, "Output file (default: stdout)");
  cmd->add_option("--trace-format", c.trace_format, "Trace encoding")->check(CLI::IsMember({"text", "json"}));
}

int cmd_plan(const Common& c) {
  const Scenario sc = load_scenario(resolve_scenario(c.scenario));
  const CompiledMission m = compile_mission(sc);
  const WorldState world = sc.initial_world();
  const PlanContext ctx(m.nba, m.table, world);
  PlanOptions po;
  po.budget = c.budget.value_or(sc.budgets.tree);
  po.seed = c.seed.value_or(sc.seed);
  po.attempts = sc.budgets.attempts;
  SearchStats stats;
  const auto plan = plan_mission(ctx, world.positions(), po, &stats);
  if (!plan) {
    std::cerr << "no plan within " << stats.iterations << " iterations\n";
    return kFailed;
  }
  const Trace t = make_trace({}, *plan, 0, world.all_caps());
  emit(format_trace(t, c.trace_format), c.out);
  std::cerr << "plan T=" << plan->T() << " K=" << plan->K() << " iterations=" << stats.iterations << "\n";
  return 0;
}

int cmd_run(const Common& c, const std::string& trace_out, const std::string& hoa_out, const std::string& repairs_out,
            bool timings) {
  const Scenario sc = load_scenario(resolve_scenario(c.scenario));
  RunOptions ro;
  ro.seed = c.seed;
  ro.budget = c.budget;
  ro.timings = timings;
  const MissionReport r = run_mission(sc, ro);
  emit(report_to_json(r, *sc.env), c.out);
  if (!trace_out.empty()) emit(format_trace(r.trace, c.trace_format), trace_out);
  if (!hoa_out.empty()) emit(export_hoa(r.final_nba, r.table, sc.name), hoa_out);
  if (!repairs_out.empty()) emit(repairs_to_json(r.events, r.table, *sc.env, timings), repairs_out);
  std::cerr << sc.name << ": " << verdict_name(r.verdict) << "\n";
  return r.verdict == Verdict::Accepted ? 0 : kFailed;
}

int cmd_repair(const Common& c, const std::string& plan_path) {
  const Scenario sc = load_scenario(resolve_scenario(c.scenario));
  const CompiledMission m = compile_mission(sc);
  const Trace t = read_trace(read_file(plan_path));
  if (t.num_robots != sc.num_robots()) throw InputError("plan robot count does not match the scenario");
  const PrefixSuffixPlan plan = t.plan();
  if (plan.prefix.empty() || plan.suffix.empty()) throw InputError("plan has no prefix or no suffix");
  const auto events = repair_schedule(sc, m, plan);
  emit(repairs_to_json(events, m.table, *sc.env), c.out);
  return 0;
}

int cmd_check(const Common& c, const std::string& trace_path, const std::string& hoa_path) {
  const Scenario sc = load_scenario(resolve_scenario(c.scenario));
  const CompiledMission m = compile_mission(sc);
  const Nba nba = hoa_path.empty() ? m.nba : import_hoa(read_file(hoa_path), m.table);
  const Trace t = read_trace(read_file(trace_path));
  if (t.num_robots != sc.num_robots()) {
    std::cerr << "REJECTED: trace has " << t.num_robots << " robots, scenario has " << sc.num_robots() << "\n";
    return kFailed;
  }
  const TraceVerdict v = check_trace(t, nba, m.table, *sc.env);
  std::ostringstream s;
  s << (v.ok() ? "ACCEPTED" : "REJECTED") << " well_formed=" << v.well_formed << " dynamics=" << v.dynamics
    << " accepted=" << v.accepted;
  if (!v.problem.empty()) s << " problem=\"" << v.problem << "\"";
  s << "\n";
  emit(s.str(), c.out);
  return v.ok() ? 0 : kFailed;
}

int cmd_export_hoa(const Common& c) {
  const Scenario sc = load_scenario(resolve_scenario(c.scenario));
  const CompiledMission m = compile_mission(sc);
  emit(export_hoa(m.nba, m.table, sc.name), c.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resilient temporal-logic planning for multi-robot teams"};
  app.require_subcommand(1);

  Common plan_c, run_c, repair_c, check_c, hoa_c;
  auto* plan = app.add_subcommand("plan", "Plan offline and write the plan as a trace");
  add_common(plan, plan_c);

  std::string trace_out, hoa_out, repairs_out;
  bool timings = false;
  auto* run = app.add_subcommand("run", "Execute the mission with its failure schedule and write a report");
  add_common(run, run_c);
  run->add_option("--trace-out", trace_out, "Write the executed trace");
  run->add_option("--automaton-out", hoa_out, "Write the final repaired automaton (HOA)");
  run->add_option("--repairs-out", repairs_out, "Write the repair report");
  run->add_flag("--timings", timings, "Record wall-clock times (reports stop being reproducible)");

  std::string plan_path;
  auto* repair = app.add_subcommand("repair", "Repair the automaton for the failure schedule on a saved plan");
  add_common(repair, repair_c);
  repair->add_option("--plan", plan_path, "Plan trace written by 'plan'")->required();

  std::string trace_path, check_hoa;
  auto* check = app.add_subcommand("check", "Verify a saved trace against the mission automaton");
  add_common(check, check_c);
  check->add_option("--trace", trace_path, "Trace to verify")->required();
  check->add_option("--automaton", check_hoa, "Automaton to check against (HOA); default is the compiled mission");

  auto* hoa = app.add_subcommand("export-hoa", "Write the pruned mission automaton in HOA format");
  add_common(hoa, hoa_c);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plan) return cmd_plan(plan_c);
    if (*run) return cmd_run(run_c, trace_out, hoa_out, repairs_out, timings);
    if (*repair) return cmd_repair(repair_c, plan_path);
    if (*check) return cmd_check(check_c, trace_path, check_hoa);
    if (*hoa) return cmd_export_hoa(hoa_c);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const TraceError& e) {
    std::cerr << "error: trace " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
