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

#include "stocheuler/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "stocheuler/error.hpp"
#include "stocheuler/spectral_ops.hpp"

namespace stocheuler {
namespace {

/// Integrating-factor RK4 (or Heun) for y' = -damping y + g(t) f(y), where
/// g takes the values g0, gmid, g1 at the start, middle and end of the step.
template <typename Rhs>
SpectralField if_step(const SpectralField& y, double h, double damping, double g0, double gmid, double g1,
                      Rhs&& f, bool heun = false) {
  const double e_half = std::exp(0.5 * damping * h);
  const double e_full = std::exp(damping * h);
  SpectralField k1 = f(y);
  k1 *= g0;
  if (heun) {
    SpectralField stage = y;
    stage.axpy(h, k1);
    stage *= 1.0 / e_full;
    SpectralField k2 = f(stage);
    k2 *= e_full * g1;
    SpectralField out = y;
    out.axpy(0.5 * h, k1).axpy(0.5 * h, k2);
    out *= 1.0 / e_full;
    return out;
  }
  SpectralField stage = y;
  stage.axpy(0.5 * h, k1);
  stage *= 1.0 / e_half;
  SpectralField k2 = f(stage);
  k2 *= e_half * gmid;

  stage = y;
  stage.axpy(0.5 * h, k2);
  stage *= 1.0 / e_half;
  SpectralField k3 = f(stage);
  k3 *= e_half * gmid;

  stage = y;
  stage.axpy(h, k3);
  stage *= 1.0 / e_full;
  SpectralField k4 = f(stage);
  k4 *= e_full * g1;

  SpectralField out = y;
  out.axpy(h / 6.0, k1).axpy(h / 3.0, k2).axpy(h / 3.0, k3).axpy(h / 6.0, k4);
  if (damping != 0.0) out *= 1.0 / e_full;
  return out;
}

SpectralField euler_drift(const SpectralField& u) {
  SpectralField n = nonlinear_term(u);
  n *= -1.0;
  return n;
}

void require_finite(const SpectralField& u, double t) {
  if (!u.all_finite()) {
    std::ostringstream os;
    os << "non-finite coefficient at t = " << t;
    throw Error(ErrorKind::NonFinite, os.str());
  }
}

void require_cfl(double dt, double limit) {
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt = " << dt << " exceeds the CFL limit " << limit;
    throw Error(ErrorKind::CflViolation, os.str());
  }
}

void require_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidParams, "time step must be positive");
}

SimState advance(const SimState& s, double dt, const NoiseModel& model, std::span<const double> dW,
                 const StepOptions& opts, double theta) {
  require_dt(dt);
  if (static_cast<int>(dW.size()) != model.n_modes()) {
    throw Error(ErrorKind::ShapeMismatch, "increment vector does not match noise.K");
  }
  if (opts.check_cfl) require_cfl(dt, cfl_limit(s.u, model, opts.cfl, theta));

  SimState next = s;
  if (theta != 0.0) {
    if (opts.drift == DriftScheme::Euler) {
      next.u.axpy(-dt * theta, nonlinear_term(s.u));
    } else {
      next.u = if_step(s.u, dt, 0.0, theta, theta, theta, euler_drift);
    }
    if (model.kind() != NoiseKind::None) {
      next.u.axpy(theta, noise_increment(model, s.u, dW, dt, opts.milstein));
    }
  }
  next.u.set_divergence_free(true);
  require_finite(next.u, s.t + dt);

  next.t = s.t + dt;
  next.step_index = s.step_index + 1;
  if (next.w_accum.size() != dW.size()) next.w_accum.assign(dW.size(), 0.0);
  for (std::size_t k = 0; k < dW.size(); ++k) next.w_accum[k] += dW[k];
  next.gamma = model.kind() == NoiseKind::LinearMultiplicative ? std::exp(-model.alpha() * next.w_accum[0]) : 1.0;
  return next;
}

}  // namespace

SimState SimState::initial(SpectralField u0, int n_modes) {
  SimState s{0.0, std::move(u0), 1.0, std::vector<double>(static_cast<std::size_t>(n_modes), 0.0), 0};
  return s;
}

double cfl_limit(const SpectralField& u, const NoiseModel& model, double cfl, double speed_factor) {
  double limit = std::numeric_limits<double>::infinity();
  const double speed = speed_factor * sup_norm(u);
  if (speed > 0.0) limit = cfl * u.grid().spacing() / speed;
  if (model.kind() == NoiseKind::LinearMultiplicative && model.alpha() != 0.0) {
    const double cap = 0.1 / std::abs(model.alpha());
    limit = std::min(limit, cap * cap);
  }
  return limit;
}

SpectralField noise_increment(const NoiseModel& model, const SpectralField& u, std::span<const double> dW,
                              double dt, bool milstein) {
  SpectralField g = apply_noise(model, u, dW);
  if (milstein && model.kind() == NoiseKind::LinearMultiplicative) {
    const double a = model.alpha();
    g.axpy(0.5 * a * a * (dW[0] * dW[0] - dt), u);
  }
  return g;
}

SimState step_em(const SimState& s, double dt, const NoiseModel& model, std::span<const double> dW,
                 const StepOptions& opts) {
  return advance(s, dt, model, dW, opts, 1.0);
}

SimState step_em(const SimState& s, double dt, const NoiseModel& model, const BrownianDriver& driver,
                 std::uint64_t trajectory_id, const StepOptions& opts) {
  const auto dW = driver.sample_increments(trajectory_id, static_cast<std::uint64_t>(s.step_index), dt);
  return step_em(s, dt, model, dW, opts);
}

SimState step_cutoff_galerkin(const SimState& s, double dt, double R, const NoiseModel& model,
                              std::span<const double> dW, const StepOptions& opts) {
  const double theta = cutoff_theta(sobolev_norm(s.u, {1, NormRequest::infinity}), R);
  return advance(s, dt, model, dW, opts, theta);
}

SimState step_cutoff_galerkin(const SimState& s, double dt, double R, const NoiseModel& model,
                              const BrownianDriver& driver, std::uint64_t trajectory_id, const StepOptions& opts) {
  const auto dW = driver.sample_increments(trajectory_id, static_cast<std::uint64_t>(s.step_index), dt);
  return step_cutoff_galerkin(s, dt, R, model, dW, opts);
}

SimState step_transformed(const SimState& s, double dt, double alpha, double gamma_next, TransformedScheme scheme,
                          const StepOptions& opts) {
  require_dt(dt);
  if (!(s.gamma > 0.0) || !(gamma_next > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "gamma must be positive along the path");
  }
  const double g0 = 1.0 / s.gamma;
  const double g1 = 1.0 / gamma_next;
  const double gmid = 1.0 / std::sqrt(s.gamma * gamma_next);
  if (opts.check_cfl) {
    const NoiseModel shared = NoiseModel::linear_multiplicative(alpha);
    require_cfl(dt, cfl_limit(s.u, shared, opts.cfl, std::max(g0, g1)));
  }
  SimState next = s;
  next.u = if_step(s.u, dt, 0.5 * alpha * alpha, g0, gmid, g1, euler_drift, scheme == TransformedScheme::Heun);
  next.u.set_divergence_free(true);
  require_finite(next.u, s.t + dt);
  next.t = s.t + dt;
  next.gamma = gamma_next;
  next.step_index = s.step_index + 1;
  if (!next.w_accum.empty() && alpha != 0.0) next.w_accum[0] = -std::log(gamma_next) / alpha;
  return next;
}

SpectralField step_vorticity_2d(const SpectralField& w, double dt, const VorticityStep& params) {
  require_dt(dt);
  if (!w.is_scalar() || w.grid().dim() != 2) {
    throw Error(ErrorKind::ShapeMismatch, "step_vorticity_2d needs a scalar 2D vorticity");
  }
  const auto transport = [](const SpectralField& x) {
    SpectralField r = advect_scalar(biot_savart(x), x);
    r *= -1.0;
    return r;
  };
  const double g0 = 1.0 / params.gamma_now;
  const double g1 = 1.0 / params.gamma_next;
  const double gmid = 1.0 / std::sqrt(params.gamma_now * params.gamma_next);
  SpectralField out = if_step(w, dt, 0.5 * params.alpha * params.alpha, g0, gmid, g1, transport);
  if (params.rho != nullptr) {
    if (params.rho->size() != params.dW.size()) {
      throw Error(ErrorKind::ShapeMismatch, "vorticity forcing needs one increment per rho field");
    }
    for (std::size_t k = 0; k < params.dW.size(); ++k) out.axpy(params.dW[k], (*params.rho)[k]);
  }
  require_finite(out, dt);
  return out;
}

SpectralField step_vorticity_3d(const SpectralField& w, double dt, double alpha, double gamma_now,
                                double gamma_next) {
  require_dt(dt);
  if (!w.is_vector() || w.grid().dim() != 3) {
    throw Error(ErrorKind::ShapeMismatch, "step_vorticity_3d needs a 3D vector vorticity");
  }
  const auto rhs = [](const SpectralField& x) { return stretching_minus_transport(biot_savart(x), x); };
  const double g0 = 1.0 / gamma_now;
  const double g1 = 1.0 / gamma_next;
  const double gmid = 1.0 / std::sqrt(gamma_now * gamma_next);
  SpectralField out = leray_project(if_step(w, dt, 0.5 * alpha * alpha, g0, gmid, g1, rhs));
  require_finite(out, dt);
  return out;
}

}  // namespace stocheuler
