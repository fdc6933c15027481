#include <benchmark/benchmark.h>

#include <string>

#include "rtlp/mission.hpp"

using namespace rtlp;

namespace {

Scenario load(const std::string& name) { return load_scenario(std::string(RTLP_SCENARIO_DIR) + "/" + name + ".json"); }

void BM_Translate(benchmark::State& state, const char* name) {
  const Scenario sc = load(name);
  for (auto _ : state) benchmark::DoNotOptimize(compile_mission(sc));
}

void BM_Repair(benchmark::State& state, const char* name) {
  const Scenario sc = load(name);
  const CompiledMission m = compile_mission(sc);
  const WorldState world = sc.initial_world().apply_failure(sc.failures.front().events);
  const auto failed = failed_predicates(m.nba, m.table, world);
  const StateId q0 = *m.nba.initial().begin();
  for (auto _ : state) benchmark::DoNotOptimize(repair_all(m.nba, q0, failed, m.table, world));
}

void BM_OfflinePlan(benchmark::State& state, const char* name) {
  const Scenario sc = load(name);
  const CompiledMission m = compile_mission(sc);
  const WorldState world = sc.initial_world();
  const PlanContext ctx(m.nba, m.table, world);
  PlanOptions po;
  po.budget = sc.budgets.tree;
  po.attempts = sc.budgets.attempts;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    po.seed = seed++;
    benchmark::DoNotOptimize(plan_mission(ctx, world.positions(), po));
  }
}

void BM_RunMission(benchmark::State& state, const char* name) {
  const Scenario sc = load(name);
  for (auto _ : state) benchmark::DoNotOptimize(run_mission(sc));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Translate, scenario1, "scenario1")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Translate, factory12, "factory12")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Translate, aerial, "aerial")->Unit(benchmark::kMillisecond)->Iterations(3);
BENCHMARK_CAPTURE(BM_Repair, scenario2, "scenario2")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Repair, factory12, "factory12")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_OfflinePlan, scenario1, "scenario1")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_OfflinePlan, factory12, "factory12")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunMission, scenario2, "scenario2")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunMission, aerial, "aerial")->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK_MAIN();
