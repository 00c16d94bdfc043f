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

#include "stocheuler/frac_sobolev.hpp"

#include <cmath>

#include "stocheuler/error.hpp"

namespace stocheuler {

FracSobolevNorm frac_time_sobolev_norm(const std::vector<std::vector<double>>& samples, double dt, double alpha,
                                       double q) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidParams, "fractional order must lie in (0, 1)");
  if (!(q > 1.0)) throw Error(ErrorKind::InvalidParams, "integrability exponent must exceed 1");
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidParams, "sample spacing must be > 0");
  const std::size_t n = samples.size();
  if (n < 4) throw Error(ErrorKind::DegenerateSeries, "need at least 4 samples");
  const std::size_t width = samples.front().size();
  for (const auto& s : samples) {
    if (s.size() != width || width == 0) throw Error(ErrorKind::DegenerateSeries, "samples differ in length");
  }

  const double exponent = 1.0 + alpha * q;
  FracSobolevNorm out;
  for (std::size_t i = 0; i < n; ++i) {
    double self = 0.0;
    for (double x : samples[i]) self += x * x;
    out.lq_q += std::pow(std::sqrt(self), q) * dt;
    // Symmetric kernel: sum j > i and double.
    for (std::size_t j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      for (std::size_t c = 0; c < width; ++c) {
        const double d = samples[i][c] - samples[j][c];
        d2 += d * d;
      }
      const double gap = static_cast<double>(j - i) * dt;
      out.seminorm_q += 2.0 * std::pow(std::sqrt(d2), q) / std::pow(gap, exponent) * dt * dt;
    }
  }
  out.norm = std::pow(out.seminorm_q + out.lq_q, 1.0 / q);
  return out;
}

FracSobolevNorm frac_time_sobolev_norm(std::span<const double> series, double dt, double alpha, double q) {
  std::vector<std::vector<double>> samples;
  samples.reserve(series.size());
  for (double x : series) samples.push_back({x});
  return frac_time_sobolev_norm(samples, dt, alpha, q);
}

}  // namespace stocheuler
