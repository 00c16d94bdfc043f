// Copyright 2026 The stocheuler Authors
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

#include "stocheuler/gbm.hpp"
#include "stocheuler/log_gronwall.hpp"
#include "stocheuler/ode_lemma.hpp"

namespace se = stocheuler;

namespace {

void BM_GbmExitMc(benchmark::State& state) {
  const se::GbmParams p{3.0 / 8.0, 1.0, 1.0, 16.0};
  for (auto _ : state) benchmark::DoNotOptimize(se::gbm_exit_mc(p, 20.0, 1e-2, 1000, 0, 1));
  state.SetItemsProcessed(state.iterations() * 1000 * 2000);
}
BENCHMARK(BM_GbmExitMc)->Unit(benchmark::kMillisecond);

void BM_LogGronwall(benchmark::State& state) {
  double x = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(se::log_gronwall_functions(x));
    x = x < 100.0 ? x + 0.37 : 1.0;
  }
}
BENCHMARK(BM_LogGronwall);

void BM_KappaK(benchmark::State& state) {
  double R = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(se::kappa_K(R, 2.0));
    R = R < 64.0 ? R * 1.5 : 1.0;
  }
}
BENCHMARK(BM_KappaK);

}  // namespace
