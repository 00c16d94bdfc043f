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

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "stocheuler/brownian.hpp"
#include "stocheuler/dynamics.hpp"
#include "stocheuler/fields.hpp"

namespace se = stocheuler;

namespace {

void BM_StepEm(benchmark::State& state) {
  const se::Grid g(2, static_cast<int>(state.range(0)));
  const se::NoiseModel model = se::NoiseModel::linear_multiplicative(1.0);
  se::StepOptions opts;
  opts.drift = state.range(1) != 0 ? se::DriftScheme::RK4 : se::DriftScheme::Euler;
  opts.check_cfl = false;
  const se::SimState s0 = se::SimState::initial(se::random_divergence_free(g, 1, 4, 1.0), 1);
  const double dW = 0.03;
  for (auto _ : state) benchmark::DoNotOptimize(se::step_em(s0, 1e-3, model, std::span<const double>(&dW, 1), opts));
}
BENCHMARK(BM_StepEm)->ArgNames({"n", "rk4"})->Args({64, 0})->Args({64, 1})->Args({128, 0})->Args({128, 1});

void BM_StepTransformed(benchmark::State& state) {
  const se::Grid g(2, static_cast<int>(state.range(0)));
  se::StepOptions opts;
  opts.check_cfl = false;
  const se::SimState s0 = se::SimState::initial(se::random_divergence_free(g, 1, 4, 1.0), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(se::step_transformed(s0, 1e-3, 1.0, 0.97, se::TransformedScheme::RK4, opts));
  }
}
BENCHMARK(BM_StepTransformed)->Arg(64)->Arg(128);

void BM_BrownianFill(benchmark::State& state) {
  const se::BrownianDriver driver(7, 1);
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  std::uint64_t path = 0;
  for (auto _ : state) {
    driver.fill_standard_normals(path++, 0, 0, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BrownianFill)->Arg(1 << 12);

}  // namespace
