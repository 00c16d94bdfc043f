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
#include <optional>
#include <string>
#include <vector>

#include "stocheuler/brownian.hpp"
#include "stocheuler/dynamics.hpp"
#include "stocheuler/grid.hpp"
#include "stocheuler/noise.hpp"
#include "stocheuler/spectral_ops.hpp"

namespace stocheuler {

struct InitialCondition {
  enum class Kind { TaylorGreen, Shear, Abc, Random };

  Kind kind = Kind::TaylorGreen;
  double amplitude = 1.0;
  std::uint64_t seed = 1;
  int kmax = 4;
  double slope = 1.5;
  /// When set, the field is rescaled so that ||u0||_{W^{m,p}} equals it
  /// (norm taken with the monitor's NormRequest).
  std::optional<double> target_norm;
};

SpectralField make_initial_condition(const Grid& grid, const InitialCondition& ic, const NormRequest& norm);

struct NoiseConfig {
  NoiseKind kind = NoiseKind::None;
  double alpha = 0.0;
  int K = 0;
  double amplitude = 0.1;
  double decay = 1.0;
  std::string g = "identity";
  std::uint64_t seed = 7;
};

NoiseModel make_noise_model(const Grid& grid, const NoiseConfig& cfg);

enum class IntegratorKind { EulerMaruyama, RK4EM, Transformed, CutoffGalerkin };

std::string to_string(IntegratorKind kind);
IntegratorKind integrator_kind_from_string(const std::string& name);

struct IntegratorConfig {
  IntegratorKind kind = IntegratorKind::EulerMaruyama;
  double dt = 1e-2;
  double cfl = 0.5;
  double T = 1.0;
  /// Cut-off level R for CutoffGalerkin.
  double cutoff_R = 10.0;
  TransformedScheme transformed_scheme = TransformedScheme::RK4;
};

struct StoppingRule {
  enum class Kind { W1InfThreshold, SobolevThreshold, GBMLevel };

  Kind kind = Kind::W1InfThreshold;
  double level = 1.0;
  NormRequest norm{2, 2.0};
  /// End the path at the first hit; otherwise only record it.
  bool stop_on_hit = true;

  std::string name() const;
  /// "w1inf:<level>", "sobolev:<m>:<p>:<level>", "gbm:<level>", with an
  /// optional ":record" suffix that disables stop_on_hit.
  static StoppingRule parse(const std::string& text);
};

struct TrajectoryConfig {
  Grid grid{2, 32};
  InitialCondition initial;
  NoiseConfig noise;
  IntegratorConfig integrator;
  std::vector<StoppingRule> rules;
  /// Record diagnostics every `sample_every` steps (and at t = 0).
  int sample_every = 1;
  /// Blow-up is declared when ||u||_{W^{1,inf}} reaches this level.
  double blowup_level = 1e6;
  /// Norm recorded in the wmp column and used for kappa scaling.
  NormRequest monitor_norm{2, 2.0};
  /// Linear multiplicative runs only: integrate the transformed system on
  /// the same path and record ||gamma u - v||_{L^2}.
  bool track_transform = false;
};

struct StoppingHit {
  std::size_t rule_index = 0;
  double time = 0.0;
  double value = 0.0;
};

enum class Termination { Completed, StoppingRule, BlowUpLevel, NonFinite, CflViolation };
std::string to_string(Termination t);

/// In Transformed runs the norm series describe the transformed velocity v.
struct TrajectoryDiagnostics {
  std::uint64_t trajectory_id = 0;
  std::vector<double> time;
  std::vector<double> l2;
  std::vector<double> wmp;
  std::vector<double> w1inf;
  std::vector<double> curl_sup;
  std::vector<double> gamma;
  std::vector<double> brownian;
  std::vector<double> rho_gbm;
  /// Empty unless track_transform is on.
  std::vector<double> transform_residual;

  /// At most one hit per rule, in order of occurrence.
  std::vector<StoppingHit> hits;
  Termination termination = Termination::Completed;
  bool blow_up_flag = false;
  double final_time = 0.0;
  std::string message;

  std::size_t samples() const noexcept { return time.size(); }
};

/// rho_alpha(t) = exp(alpha W_t - alpha^2 t / 8), the geometric Brownian
/// motion whose level crossings bound the damped 3D dynamics.
double gbm_rho(double alpha, double w, double t);

/// Integrate one path until T, a stopping rule hit, or a numerical failure.
/// Step errors end the path and set blow_up_flag; they never propagate.
TrajectoryDiagnostics integrate_trajectory(const TrajectoryConfig& cfg, const BrownianDriver& driver,
                                           std::uint64_t trajectory_id);

}  // namespace stocheuler
