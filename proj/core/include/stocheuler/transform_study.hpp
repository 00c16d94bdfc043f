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
#include <vector>

#include "stocheuler/dynamics.hpp"
#include "stocheuler/spectral_field.hpp"

namespace stocheuler {

struct TransformStudy {
  std::vector<double> dts;
  /// Mean over paths of the relative discrepancy
  /// ||u_em(T) - exp(alpha W_T) v(T)||_{L^2} / ||exp(alpha W_T) v(T)||_{L^2},
  /// one entry per dt. The normalization removes the log-normal factor
  /// exp(alpha W_T) that otherwise makes the average heavy-tailed.
  std::vector<double> errors;
  /// RMS over paths of the absolute discrepancy, for reference.
  std::vector<double> rms_errors;
  /// errors[i] / errors[i + 1].
  std::vector<double> ratios;
  int n_paths = 0;
};

/// Pathwise comparison of the stochastic run with linear multiplicative
/// noise and the transformed damped run on shared Brownian paths. Every dt
/// must be an integer multiple of the smallest one; coarse increments are
/// sums of the fine ones, so all resolutions see the same path. Path i uses
/// the stream (seed, i). The time steps are prescribed, so `opts` disables
/// the CFL check unless the caller turns it on. Throws InvalidParams for
/// non-nested time steps.
TransformStudy transform_equivalence_study(const SpectralField& u0, double alpha, double T,
                                           const std::vector<double>& dts, int n_paths, std::uint64_t seed,
                                           const StepOptions& opts = {DriftScheme::Euler, 0.5, false, true});

}  // namespace stocheuler
