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

#include "stocheuler/mollifier_check.hpp"

#include <algorithm>
#include <functional>

#include "stocheuler/error.hpp"

namespace stocheuler {

MollifierReport mollifier_check(const std::vector<SpectralField>& calibration,
                                const std::vector<SpectralField>& validation, const std::vector<double>& eps,
                                const NormRequest& norm, double slack) {
  if (calibration.empty() || validation.empty() || eps.empty()) {
    throw Error(ErrorKind::InvalidParams, "mollifier check needs fields and eps values");
  }
  if (norm.m < 1) throw Error(ErrorKind::InvalidParams, "mollifier check needs m >= 1");
  const NormRequest lower{norm.m - 1, norm.p};

  MollifierReport r;
  r.eps = eps;
  std::sort(r.eps.begin(), r.eps.end(), std::greater<>());

  for (const auto& u : calibration) {
    const double base = sobolev_norm(u, lower);
    for (double e : r.eps) r.calibrated_C2 = std::max(r.calibrated_C2, e * sobolev_norm(mollify(u, e), norm) / base);
  }

  std::vector<SpectralField> all = calibration;
  all.insert(all.end(), validation.begin(), validation.end());
  for (double e : r.eps) {
    double uniform = 0.0, conv = 0.0, smooth = 0.0;
    for (std::size_t f = 0; f < all.size(); ++f) {
      const SpectralField& u = all[f];
      const SpectralField fu = mollify(u, e);
      const double nu = sobolev_norm(u, norm);
      const double nf = sobolev_norm(fu, norm);
      uniform = std::max(uniform, nf / nu);
      conv = std::max(conv, sobolev_norm(fu - u, norm) / nu);
      if (f >= calibration.size()) smooth = std::max(smooth, e * nf / sobolev_norm(u, lower));
    }
    r.uniform_ratio.push_back(uniform);
    r.convergence_error.push_back(conv);
    r.smoothing_ratio.push_back(smooth);
  }
  r.uniform_constant = *std::max_element(r.uniform_ratio.begin(), r.uniform_ratio.end());
  // The Gaussian multiplier is a contraction on every W^{m,p}; allow rounding.
  r.uniform_ok = r.uniform_constant <= 1.0 + 1e-10;
  r.smoothing_ok = *std::max_element(r.smoothing_ratio.begin(), r.smoothing_ratio.end()) <= slack * r.calibrated_C2;
  r.convergence_monotone = true;
  for (std::size_t i = 1; i < r.convergence_error.size(); ++i) {
    if (r.convergence_error[i] > r.convergence_error[i - 1]) r.convergence_monotone = false;
  }
  return r;
}

}  // namespace stocheuler
