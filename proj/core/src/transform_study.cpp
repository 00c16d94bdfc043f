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

#include "stocheuler/transform_study.hpp"

#include <algorithm>
#include <cmath>

#include "stocheuler/brownian.hpp"
#include "stocheuler/error.hpp"
#include "stocheuler/noise.hpp"
#include "stocheuler/spectral_ops.hpp"

namespace stocheuler {

TransformStudy transform_equivalence_study(const SpectralField& u0, double alpha, double T,
                                           const std::vector<double>& dts, int n_paths, std::uint64_t seed,
                                           const StepOptions& opts) {
  if (dts.empty() || n_paths < 1 || !(T > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "transform study needs T > 0, a time step list and n_paths >= 1");
  }
  const double fine = *std::min_element(dts.begin(), dts.end());
  if (!(fine > 0.0)) throw Error(ErrorKind::InvalidParams, "time steps must be > 0");
  const auto fine_steps = static_cast<std::size_t>(std::llround(T / fine));
  if (std::abs(static_cast<double>(fine_steps) * fine - T) > 1e-9 * T) {
    throw Error(ErrorKind::InvalidParams, "T must be a multiple of the finest time step");
  }
  std::vector<std::size_t> factors;
  for (double dt : dts) {
    const auto r = static_cast<std::size_t>(std::llround(dt / fine));
    if (r == 0 || std::abs(static_cast<double>(r) * fine - dt) > 1e-9 * dt || fine_steps % r != 0) {
      throw Error(ErrorKind::InvalidParams, "time steps must be nested multiples of the finest one");
    }
    factors.push_back(r);
  }

  const NoiseModel model = NoiseModel::linear_multiplicative(alpha);
  const BrownianDriver driver(seed, 1);
  std::vector<double> sq(dts.size(), 0.0);
  std::vector<double> rel(dts.size(), 0.0);
  std::vector<double> dW_fine(fine_steps);
  for (int path = 0; path < n_paths; ++path) {
    driver.fill_standard_normals(static_cast<std::uint64_t>(path), 0, 0, dW_fine);
    for (double& x : dW_fine) x *= std::sqrt(fine);
    for (std::size_t j = 0; j < dts.size(); ++j) {
      const std::size_t r = factors[j];
      const double dt = fine * static_cast<double>(r);
      SimState u = SimState::initial(u0, 1);
      SimState v = SimState::initial(u0, 1);
      double W = 0.0;
      for (std::size_t i = 0; i < fine_steps; i += r) {
        double dW = 0.0;
        for (std::size_t k = 0; k < r; ++k) dW += dW_fine[i + k];
        u = step_em(u, dt, model, std::span<const double>(&dW, 1), opts);
        W += dW;
        v = step_transformed(v, dt, alpha, std::exp(-alpha * W), TransformedScheme::RK4, opts);
      }
      SpectralField diff = v.u;
      diff *= std::exp(alpha * W);
      const double reference = l2_norm(diff);
      diff -= u.u;
      const double e = l2_norm(diff);
      sq[j] += e * e;
      rel[j] += reference > 0.0 ? e / reference : e;
    }
  }

  TransformStudy out;
  out.dts = dts;
  out.n_paths = n_paths;
  for (std::size_t j = 0; j < dts.size(); ++j) {
    out.errors.push_back(rel[j] / n_paths);
    out.rms_errors.push_back(std::sqrt(sq[j] / n_paths));
  }
  for (std::size_t j = 0; j + 1 < out.errors.size(); ++j) out.ratios.push_back(out.errors[j] / out.errors[j + 1]);
  return out;
}

}  // namespace stocheuler
