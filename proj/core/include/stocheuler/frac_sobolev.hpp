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

#include <span>
#include <vector>

namespace stocheuler {

struct FracSobolevNorm {
  /// Riemann sum of ||v(t) - v(s)||^q / |t - s|^(1 + alpha q) over t != s.
  double seminorm_q = 0.0;
  /// Riemann sum of ||v(t)||^q.
  double lq_q = 0.0;
  /// (seminorm_q + lq_q)^(1/q).
  double norm = 0.0;
};

/// W^{alpha,q}(0, T) norm of a uniformly sampled vector-valued series
/// (samples[i] taken at t = i dt; each sample has the same length and is
/// measured in the Euclidean norm). Diagonal terms are excluded from the
/// double sum. Throws DegenerateSeries for fewer than 4 samples or ragged
/// samples, InvalidParams unless 0 < alpha < 1, q > 1 and dt > 0.
FracSobolevNorm frac_time_sobolev_norm(const std::vector<std::vector<double>>& samples, double dt, double alpha,
                                       double q);

/// Scalar series convenience overload.
FracSobolevNorm frac_time_sobolev_norm(std::span<const double> series, double dt, double alpha, double q);

}  // namespace stocheuler
