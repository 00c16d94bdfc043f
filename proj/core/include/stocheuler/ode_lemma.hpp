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

#include <functional>
#include <string>
#include <vector>

namespace stocheuler {

/// K(R, alpha) and kappa(R, alpha) = alpha^2 / (2 Cbar K), with
///   K = 2R (1 + (alpha^2 / 8Cbar)^(1 - 1/(8(D_R - 1)))) exp(8 Cbar R D_R (Cbar + alpha^2) / alpha^2),
///   D_R = exp(dr_factor * Cbar * R).
/// Everything is accumulated in log space. K itself overflows a double for
/// moderate R and kappa then underflows; both conditions are flagged and the
/// log values stay exact.
struct KappaK {
  double log_K = 0.0;
  double log_kappa = 0.0;
  double K = 0.0;
  double kappa = 0.0;
  bool K_overflow = false;
  bool kappa_underflow = false;
};

inline constexpr double kDefaultDrFactor = 4.0;

/// Throws InvalidParams unless R >= 1, alpha != 0, Cbar >= 1, dr_factor > 0.
KappaK kappa_K(double R, double alpha, double Cbar = 1.0, double dr_factor = kDefaultDrFactor);

/// z(t) in the comparison ODE, admissible when 0 <= z <= alpha^2 / 4.
using ZProfile = std::function<double(double t)>;

/// Named profiles: "zero", "extremal" (alpha^2 / 4), "fraction:<f>"
/// (f alpha^2 / 4, 0 <= f <= 1) and "decaying:<rate>"
/// ((alpha^2 / 4) exp(-rate t)). Throws InvalidParams for unknown names.
ZProfile make_z_profile(const std::string& name, double alpha);

struct OdeLemmaParams {
  double R = 1.0;
  double alpha = 1.0;
  double Cbar = 1.0;
  /// Initial value in log form, since kappa is usually far below the
  /// smallest double. Use with_y0 to set it from a plain value.
  double log_y0 = 0.0;
  std::string z_profile = "extremal";
  double dr_factor = kDefaultDrFactor;

  /// Sets log_y0 = log(y0); throws InvalidParams for y0 <= 0.
  OdeLemmaParams& with_y0(double y0);
};

struct OdeBoundResult {
  /// Accepted RK4 steps on [0, T_end], as (t, log y).
  std::vector<double> t;
  std::vector<double> log_y;
  double T_end = 0.0;
  /// log(alpha^2 / (8 R Cbar)).
  double log_bound = 0.0;
  /// Analytic bound on the growth of log y after T_end.
  double tail_allowance = 0.0;
  /// max(max_t log y, log y(T_end) + tail_allowance).
  double log_y_sup = 0.0;
  /// log_bound - log_y_sup; nonnegative iff the bound holds.
  double margin = 0.0;
  bool bound_satisfied = false;
  /// Whether y0 <= kappa(R, alpha), i.e. the lemma applies.
  bool admissible = false;
  KappaK kappa;
};

/// Integrates the comparison equation with equality,
///   dy/dt = Cbar R exp(-alpha^2 t / 8) y (Cbar + alpha^2 + z(t) log y),
/// in the variable Y = log y by adaptive RK4 (step doubling, local tolerance
/// 1e-8 relative to max(1, |Y|), step size at most dt) up to
/// T_end = 8 ln(1e8) / alpha^2. The remainder of [T_end, inf) is covered by
/// tail_allowance. Throws StiffnessFailure if the step controller stalls.
OdeBoundResult ode_bound_check(const OdeLemmaParams& p, double dt);

}  // namespace stocheuler
