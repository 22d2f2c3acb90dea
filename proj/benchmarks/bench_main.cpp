#include <benchmark/benchmark.h>

#include "lavatube/energy.hpp"
#include "lavatube/explorer.hpp"
#include "lavatube/grid_map.hpp"
#include "lavatube/mission.hpp"
#include "lavatube/program.hpp"
#include "lavatube/scenario.hpp"

namespace {

using namespace lavatube;

void BM_SimulateSol(benchmark::State& state) {
  const MissionConfig cfg = baseline_config();
  const auto loads = loads_for_phase(cfg, cfg.power.phase);
  const double dt = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto trace = energy::simulate_sol(cfg.power.sources, loads, cfg.power.battery, cfg.env.env, dt);
    benchmark::DoNotOptimize(trace);
  }
}
BENCHMARK(BM_SimulateSol)->Arg(60)->Arg(10)->Arg(1);

void BM_GenerateTube(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto map = explore::generate_tube(seed++, side, side, 0.2);
    benchmark::DoNotOptimize(map);
  }
}
BENCHMARK(BM_GenerateTube)->Arg(20)->Arg(100)->Arg(400);

void BM_RunExploration(benchmark::State& state) {
  const MissionConfig cfg = baseline_config();
  const int side = static_cast<int>(state.range(0));
  const auto map = explore::generate_tube(42, side, side, 0.2);
  std::vector<explore::ScoutRobot> robots{explore::make_scout("a"), explore::make_scout("b")};
  for (auto _ : state) {
    auto report = explore::run_exploration(map, robots, cfg.exploration.station, cfg.env.env, 2'000'000);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_RunExploration)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_RollupCost(benchmark::State& state) {
  const program::WbsNode wbs = program::default_wbs();
  for (auto _ : state) benchmark::DoNotOptimize(program::rollup_cost(wbs));
}
BENCHMARK(BM_RollupCost);

void BM_RunMission(benchmark::State& state) {
  const MissionConfig cfg = baseline_config();
  for (auto _ : state) {
    auto report = mission::run_mission(cfg);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_RunMission)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
