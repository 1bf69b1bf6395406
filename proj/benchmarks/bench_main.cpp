// Copyright 2026 The geophase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "geophase/bell_chsh.hpp"
#include "geophase/interferometry.hpp"
#include "geophase/polarimetry.hpp"
#include "geophase/spin_core.hpp"

namespace {

using namespace geophase;

void BM_SolidAngleLune(benchmark::State& state) {
  const SpherePath path = flip_lune_path(0.7, -1.1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solid_angle(path));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(path.points().size()));
}
BENCHMARK(BM_SolidAngleLune)->Arg(16)->Arg(256)->Arg(4096);

void BM_FringeScan(benchmark::State& state) {
  PolarimeterConfig cfg;
  cfg.params = Su2Params(0.25 * kPi, 0.7, 0.0);
  cfg.purity = 0.5;
  for (int i = 0; i < state.range(0); ++i) cfg.eta_grid.push_back(kTwoPi * i / static_cast<double>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.rng_seed = seed++;
    benchmark::DoNotOptimize(extract_phase(simulate_fringe_scan(cfg).stats, cfg.purity));
  }
}
BENCHMARK(BM_FringeScan)->Arg(32)->Arg(256);

void BM_Interferogram(benchmark::State& state) {
  InterferometerScan scan;
  for (int i = 0; i < 64; ++i) scan.chi_grid.push_back(kTwoPi * i / 64);
  scan.phi_i = 0.4;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_interferogram(scan).fringe_phase);
}
BENCHMARK(BM_Interferogram);

void BM_SValue(benchmark::State& state) {
  const BellSetting s = BellSetting::standard();
  double g = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s_value(s, g));
    g += 1e-3;
  }
}
BENCHMARK(BM_SValue);

void BM_NumericalPolarMax(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(numerical_polar_max(1.0).s_value);
}
BENCHMARK(BM_NumericalPolarMax)->Unit(benchmark::kMillisecond);

}  // namespace
