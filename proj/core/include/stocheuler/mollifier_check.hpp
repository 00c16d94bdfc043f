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

#include <vector>

#include "stocheuler/spectral_field.hpp"
#include "stocheuler/spectral_ops.hpp"

namespace stocheuler {

/// Numerical checks of the smoothing operators F_eps over a list of eps:
///   uniform bound   ||F_eps u||_{W^{m,p}} <= C1 ||u||_{W^{m,p}},
///   smoothing       ||F_eps u||_{W^{m,p}} <= (C2 / eps) ||u||_{W^{m-1,p}},
///   convergence     ||F_eps u - u||_{W^{m,p}} decreasing as eps decreases.
/// C2 is calibrated on one set of fields and then verified on another.
struct MollifierReport {
  std::vector<double> eps;
  /// max over fields of ||F_eps u|| / ||u||, per eps.
  std::vector<double> uniform_ratio;
  /// max over validation fields of eps ||F_eps u||_{W^{m}} / ||u||_{W^{m-1}}, per eps.
  std::vector<double> smoothing_ratio;
  /// max over fields of ||F_eps u - u|| / ||u||, per eps.
  std::vector<double> convergence_error;
  double uniform_constant = 0.0;
  double calibrated_C2 = 0.0;
  bool uniform_ok = false;
  bool smoothing_ok = false;
  bool convergence_monotone = false;

  bool ok() const noexcept { return uniform_ok && smoothing_ok && convergence_monotone; }
};

/// `eps` is taken in decreasing order. Validation fields may exceed the
/// calibrated C2 by the factor `slack`. Requires norm.m >= 1.
MollifierReport mollifier_check(const std::vector<SpectralField>& calibration,
                                const std::vector<SpectralField>& validation, const std::vector<double>& eps,
                                const NormRequest& norm, double slack = 2.0);

}  // namespace stocheuler
