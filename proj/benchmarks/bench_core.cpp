// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <vector>

#include "fdran/ffmap/rate_map.hpp"
#include "fdran/oracle/verify.hpp"
#include "fdran/phy/miesm.hpp"
#include "fdran/sched/heavy.hpp"
#include "fdran/sim/presets.hpp"
#include "fdran/sim/simulator.hpp"
#include "fdran/tsra/tsra.hpp"

using namespace fdran;

namespace {

const RateMap& tiny_map() {
  static const RateMap map = build_map(preset("tiny").network, CqiTable::standard());
  return map;
}

void BM_EffectiveSnr(benchmark::State& state) {
  std::vector<double> sinrs(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < sinrs.size(); ++i) sinrs[i] = 0.5 + static_cast<double>(i % 17);
  for (auto _ : state) benchmark::DoNotOptimize(effective_snr(sinrs, 1.0, 6));
}
BENCHMARK(BM_EffectiveSnr)->Arg(4)->Arg(64);

void BM_GreedySchedule(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  std::vector<UserDemand> users;
  for (int i = 0; i < n; ++i) {
    users.push_back({i, 1.0 / n, 400000 + 37000 * i, 20000 + 1000 * (i % 7)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(greedy_schedule(users, 144 * n / 10, 0.1));
}
BENCHMARK(BM_GreedySchedule)->Arg(10)->Arg(100);

void BM_TsraSmall(benchmark::State& state) {
  const auto model = random_light_instance(static_cast<std::uint64_t>(state.range(0)), 3, 3, 8);
  for (auto _ : state) benchmark::DoNotOptimize(tsra(model));
}
BENCHMARK(BM_TsraSmall)->DenseRange(1, 4);

void BM_MapQuery(benchmark::State& state) {
  const auto& map = tiny_map();
  const Vec3 loc{5.0, 7.0, 1.5};
  for (auto _ : state) benchmark::DoNotOptimize(map.query(loc, 3));
}
BENCHMARK(BM_MapQuery);

void BM_TinyEpisode(benchmark::State& state) {
  auto cfg = preset("tiny");
  cfg.episode_slots = 100;
  const auto& map = tiny_map();
  for (auto _ : state) benchmark::DoNotOptimize(run_episode(cfg, &map));
}
BENCHMARK(BM_TinyEpisode)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
