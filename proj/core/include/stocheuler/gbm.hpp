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

#pragma once

#include <cstdint>

#include "stocheuler/wilson.hpp"

namespace stocheuler {

/// dx = mu x dt + alpha x dW, x(0) = x0, exit level R.
struct GbmParams {
  double mu = 0.375;
  double alpha = 1.0;
  double x0 = 1.0;
  double R = 16.0;
};

/// lambda_c = 1 - 2 mu / alpha^2, the power for which x^lambda is a
/// martingale.
double gbm_critical_exponent(const GbmParams& p);

/// Lower bound 1 - (x0 / R)^lambda_c on the probability that x never
/// reaches R. Throws InvalidParams unless alpha != 0, x0 > 0,
/// mu < alpha^2 / 2 and R > x0.
double gbm_survival_bound(const GbmParams& p);

struct GbmExitEstimate {
  std::uint64_t n_paths = 0;
  std::uint64_t n_hit = 0;
  double p_hit = 0.0;
  Interval interval;
};

/// Monte Carlo estimate of P(max_{t_i <= T} x(t_i) >= R) on the grid
/// t_i = i dt, sampling x exactly from its log-normal law. Path i draws its
/// normals (ziggurat) from the counter-based stream (seed, i), so the
/// estimate does not depend on `threads`. A path with x0 >= R counts as a hit at t = 0.
GbmExitEstimate gbm_exit_mc(const GbmParams& p, double T, double dt, std::uint64_t n_paths, std::uint64_t seed,
                            int threads = 1);

}  // namespace stocheuler
