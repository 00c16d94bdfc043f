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

#include <vector>

#include <benchmark/benchmark.h>

#include "stocheuler/fft.hpp"
#include "stocheuler/fields.hpp"
#include "stocheuler/spectral_ops.hpp"

namespace se = stocheuler;

namespace {

// Args: dimension, points per side.
void BM_FftRoundTrip(benchmark::State& state) {
  const se::Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const se::SpectralField u = se::random_divergence_free(g, 1, 4, 1.0);
  std::vector<double> phys(g.size());
  std::vector<se::Complex> spec(u.data().begin(), u.data().begin() + static_cast<std::ptrdiff_t>(g.size()));
  for (auto _ : state) {
    se::fft::inverse(g, spec, phys);
    se::fft::forward(g, phys, spec);
    benchmark::DoNotOptimize(spec.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_FftRoundTrip)->Args({2, 64})->Args({2, 128})->Args({2, 256})->Args({3, 32});

void BM_NonlinearTerm(benchmark::State& state) {
  const se::Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const se::SpectralField u = se::random_divergence_free(g, 1, 4, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(se::nonlinear_term(u));
}
BENCHMARK(BM_NonlinearTerm)->Args({2, 64})->Args({2, 128})->Args({3, 32});

void BM_SobolevNorm(benchmark::State& state) {
  const se::Grid g(2, 128);
  const se::SpectralField u = se::random_divergence_free(g, 1, 8, 1.0);
  const se::NormRequest req{static_cast<int>(state.range(0)), 4.0};
  for (auto _ : state) benchmark::DoNotOptimize(se::sobolev_norm(u, req));
}
BENCHMARK(BM_SobolevNorm)->Arg(0)->Arg(1)->Arg(2);

}  // namespace
