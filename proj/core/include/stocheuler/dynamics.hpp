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
#include <span>
#include <vector>

#include "stocheuler/brownian.hpp"
#include "stocheuler/noise.hpp"
#include "stocheuler/spectral_field.hpp"

namespace stocheuler {

/// State of one path. For linear multiplicative noise gamma tracks
/// exp(-alpha W_t); otherwise it stays 1. In transformed runs `u` holds the
/// transformed velocity v = gamma u.
struct SimState {
  double t = 0.0;
  SpectralField u;
  double gamma = 1.0;
  std::vector<double> w_accum;
  std::int64_t step_index = 0;

  static SimState initial(SpectralField u0, int n_modes);
};

enum class DriftScheme { Euler, RK4 };
enum class TransformedScheme { RK4, Heun };

struct StepOptions {
  DriftScheme drift = DriftScheme::Euler;
  double cfl = 0.5;
  bool check_cfl = true;
  /// Keep the (alpha^2 / 2)(dW^2 - dt) u term of linear multiplicative
  /// noise. Without it the step is plain Euler-Maruyama (strong order 1/2).
  bool milstein = true;
};

/// Largest admissible dt: cfl * dx / (speed_factor * ||u||_inf), further
/// capped by (0.1 / alpha)^2 for linear multiplicative noise.
double cfl_limit(const SpectralField& u, const NoiseModel& model, double cfl, double speed_factor = 1.0);

/// Noise increment of one step. Equal to apply_noise except for linear
/// multiplicative noise with `milstein` set, which also carries the term
/// (alpha^2 / 2)(dW^2 - dt) u so that the scheme is strongly first order.
SpectralField noise_increment(const NoiseModel& model, const SpectralField& u, std::span<const double> dW,
                              double dt, bool milstein = true);

/// u+ = u - dt P(u . grad u) + noise_increment(u, dW) (Euler drift), or the
/// same with an RK4 drift substep. Throws CflViolation / NonFinite.
SimState step_em(const SimState& s, double dt, const NoiseModel& model, std::span<const double> dW,
                 const StepOptions& opts = {});
SimState step_em(const SimState& s, double dt, const NoiseModel& model, const BrownianDriver& driver,
                 std::uint64_t trajectory_id, const StepOptions& opts = {});

/// Galerkin step with both drift and noise multiplied by
/// theta_R(||u||_{W^{1,inf}}). Identical to step_em when theta = 1.
SimState step_cutoff_galerkin(const SimState& s, double dt, double R, const NoiseModel& model,
                              std::span<const double> dW, const StepOptions& opts = {});
SimState step_cutoff_galerkin(const SimState& s, double dt, double R, const NoiseModel& model,
                              const BrownianDriver& driver, std::uint64_t trajectory_id,
                              const StepOptions& opts = {});

/// One step of dv/dt + (alpha^2/2) v + gamma^{-1} P(v . grad v) = 0 with an
/// exact integrating factor for the damping. `s.gamma` is gamma at the step
/// start and `gamma_next` at its end, both from the path driving the
/// companion stochastic run; the midpoint uses their geometric mean, i.e.
/// the linear interpolation of W.
SimState step_transformed(const SimState& s, double dt, double alpha, double gamma_next,
                          TransformedScheme scheme = TransformedScheme::RK4, const StepOptions& opts = {});

/// Parameters of a 2D vorticity step. alpha != 0 selects the damped
/// (transformed) form with gamma interpolated as in step_transformed; a
/// nonempty `rho` adds the additive forcing sum_k rho_k dW_k after the
/// transport substep.
struct VorticityStep {
  double alpha = 0.0;
  double gamma_now = 1.0;
  double gamma_next = 1.0;
  const std::vector<SpectralField>* rho = nullptr;
  std::span<const double> dW;
};

/// RK4 transport of a scalar 2D vorticity; the mean of w is preserved.
SpectralField step_vorticity_2d(const SpectralField& w, double dt, const VorticityStep& params = {});

/// RK4 step of dw/dt + (alpha^2/2) w + gamma^{-1}(v . grad w - w . grad v) = 0
/// for 3D vorticity, with v recovered by Biot-Savart; re-projected.
SpectralField step_vorticity_3d(const SpectralField& w, double dt, double alpha = 0.0, double gamma_now = 1.0,
                                double gamma_next = 1.0);

}  // namespace stocheuler
