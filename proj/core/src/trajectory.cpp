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

#include "stocheuler/trajectory.hpp"

#include <cmath>
#include <sstream>

#include "stocheuler/error.hpp"
#include "stocheuler/fields.hpp"

namespace stocheuler {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  return parts;
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = s == "inf" ? NormRequest::infinity : std::stod(s, &pos);
    if (s != "inf" && pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ConfigError, "cannot parse " + what + " from '" + s + "'");
  }
}

std::string format_level(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct Sample {
  double l2;
  double wmp;
  double w1inf;
  double curl_sup;
};

Sample measure(const SpectralField& u, const NormRequest& monitor) {
  return {l2_norm(u), sobolev_norm(u, monitor), sobolev_norm(u, {1, NormRequest::infinity}), sup_norm(curl(u))};
}

double rule_value(const StoppingRule& rule, const SpectralField& u, const Sample& s, const NormRequest& monitor,
                  double rho) {
  switch (rule.kind) {
    case StoppingRule::Kind::W1InfThreshold:
      return s.w1inf;
    case StoppingRule::Kind::SobolevThreshold:
      if (rule.norm.m == monitor.m && rule.norm.p == monitor.p) return s.wmp;
      return sobolev_norm(u, rule.norm);
    case StoppingRule::Kind::GBMLevel:
      return rho;
  }
  return 0.0;
}

bool is_step_failure(ErrorKind kind) { return kind == ErrorKind::NonFinite || kind == ErrorKind::CflViolation; }

}  // namespace

SpectralField make_initial_condition(const Grid& grid, const InitialCondition& ic, const NormRequest& norm) {
  SpectralField u = SpectralField::vector(grid);
  switch (ic.kind) {
    case InitialCondition::Kind::TaylorGreen:
      u = taylor_green(grid, ic.amplitude);
      break;
    case InitialCondition::Kind::Shear:
      u = shear_flow(grid, ic.amplitude);
      break;
    case InitialCondition::Kind::Abc:
      if (grid.dim() != 3) throw Error(ErrorKind::ConfigError, "initial.kind = abc needs grid.dim = 3");
      u = abc_flow(grid, ic.amplitude, ic.amplitude, ic.amplitude);
      break;
    case InitialCondition::Kind::Random:
      u = random_divergence_free(grid, ic.seed, ic.kmax, ic.slope);
      u *= ic.amplitude;
      break;
  }
  if (ic.target_norm) {
    if (!(*ic.target_norm >= 0.0)) throw Error(ErrorKind::ConfigError, "initial.target_norm must be >= 0");
    const double current = sobolev_norm(u, norm);
    if (current == 0.0) throw Error(ErrorKind::DegenerateInput, "cannot rescale a zero initial field");
    u *= *ic.target_norm / current;
  }
  u.set_divergence_free(true);
  return u;
}

NoiseModel make_noise_model(const Grid& grid, const NoiseConfig& cfg) {
  switch (cfg.kind) {
    case NoiseKind::None:
      return NoiseModel::none();
    case NoiseKind::LinearMultiplicative:
      return NoiseModel::linear_multiplicative(cfg.alpha);
    case NoiseKind::Additive:
      if (cfg.K < 1) throw Error(ErrorKind::ConfigError, "noise.K must be >= 1 for additive noise");
      return NoiseModel::additive(decaying_vector_modes(grid, cfg.K, cfg.amplitude, cfg.decay, cfg.seed));
    case NoiseKind::Nemytskii:
      if (cfg.K < 1) throw Error(ErrorKind::ConfigError, "noise.K must be >= 1 for nemytskii noise");
      return NoiseModel::nemytskii(decaying_scalar_modes(grid, cfg.K, cfg.amplitude, cfg.decay, cfg.seed),
                                   PointwiseMap::from_tag(cfg.g));
    case NoiseKind::Functional:
      if (cfg.K < 1) throw Error(ErrorKind::ConfigError, "noise.K must be >= 1 for functional noise");
      return NoiseModel::functional(decaying_vector_modes(grid, cfg.K, 1.0, cfg.decay, cfg.seed + 1),
                                    decaying_vector_modes(grid, cfg.K, cfg.amplitude, cfg.decay, cfg.seed));
  }
  throw Error(ErrorKind::ConfigError, "unknown noise kind");
}

std::string to_string(IntegratorKind kind) {
  switch (kind) {
    case IntegratorKind::EulerMaruyama:
      return "euler_maruyama";
    case IntegratorKind::RK4EM:
      return "rk4_em";
    case IntegratorKind::Transformed:
      return "transformed";
    case IntegratorKind::CutoffGalerkin:
      return "cutoff_galerkin";
  }
  return "unknown";
}

IntegratorKind integrator_kind_from_string(const std::string& name) {
  for (auto k : {IntegratorKind::EulerMaruyama, IntegratorKind::RK4EM, IntegratorKind::Transformed,
                 IntegratorKind::CutoffGalerkin}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorKind::ConfigError, "integrator.kind: unknown integrator '" + name + "'");
}

std::string StoppingRule::name() const {
  std::string out;
  switch (kind) {
    case Kind::W1InfThreshold:
      out = "w1inf:" + format_level(level);
      break;
    case Kind::SobolevThreshold:
      out = "sobolev:" + std::to_string(norm.m) + ":" + (norm.is_sup() ? std::string("inf") : format_level(norm.p)) +
            ":" + format_level(level);
      break;
    case Kind::GBMLevel:
      out = "gbm:" + format_level(level);
      break;
  }
  if (!stop_on_hit) out += ":record";
  return out;
}

StoppingRule StoppingRule::parse(const std::string& text) {
  auto parts = split(text, ':');
  StoppingRule rule;
  if (!parts.empty() && parts.back() == "record") {
    rule.stop_on_hit = false;
    parts.pop_back();
  }
  if (parts.size() == 2 && parts[0] == "w1inf") {
    rule.kind = Kind::W1InfThreshold;
  } else if (parts.size() == 2 && parts[0] == "gbm") {
    rule.kind = Kind::GBMLevel;
  } else if (parts.size() == 4 && parts[0] == "sobolev") {
    rule.kind = Kind::SobolevThreshold;
    rule.norm.m = static_cast<int>(parse_number(parts[1], "stopping rule order"));
    rule.norm.p = parse_number(parts[2], "stopping rule exponent");
  } else {
    throw Error(ErrorKind::ConfigError, "stopping.rules: cannot parse rule '" + text + "'");
  }
  rule.level = parse_number(parts.back(), "stopping rule level");
  if (!(rule.level > 0.0)) throw Error(ErrorKind::ConfigError, "stopping.rules: level must be > 0 in '" + text + "'");
  return rule;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Completed:
      return "completed";
    case Termination::StoppingRule:
      return "stopping_rule";
    case Termination::BlowUpLevel:
      return "blowup_level";
    case Termination::NonFinite:
      return "non_finite";
    case Termination::CflViolation:
      return "cfl_violation";
  }
  return "unknown";
}

double gbm_rho(double alpha, double w, double t) { return std::exp(alpha * w - alpha * alpha * t / 8.0); }

TrajectoryDiagnostics integrate_trajectory(const TrajectoryConfig& cfg, const BrownianDriver& driver,
                                           std::uint64_t trajectory_id) {
  const auto& ic = cfg.integrator;
  if (!(ic.T >= 0.0) || !std::isfinite(ic.T)) throw Error(ErrorKind::ConfigError, "integrator.T must be >= 0");
  if (!(ic.dt > 0.0)) throw Error(ErrorKind::ConfigError, "integrator.dt must be > 0");
  if (cfg.sample_every < 1) throw Error(ErrorKind::ConfigError, "output.sample_every must be >= 1");

  const NoiseModel model = make_noise_model(cfg.grid, cfg.noise);
  if (driver.n_modes() != model.n_modes()) {
    throw Error(ErrorKind::ShapeMismatch, "Brownian driver has a different number of modes than noise.K");
  }
  const bool linear = model.kind() == NoiseKind::LinearMultiplicative;
  const double alpha = linear ? model.alpha() : 0.0;
  if (linear && alpha != 0.0 && ic.dt > std::pow(0.1 / alpha, 2) * (1.0 + 1e-12)) {
    throw Error(ErrorKind::ConfigError, "integrator.dt exceeds the noise resolution cap (0.1 / noise.alpha)^2");
  }
  if (ic.kind == IntegratorKind::Transformed && !linear && model.kind() != NoiseKind::None) {
    throw Error(ErrorKind::ConfigError, "integrator.kind = transformed needs linear_multiplicative or no noise");
  }
  const bool track = cfg.track_transform;
  if (track && (!linear || ic.kind == IntegratorKind::Transformed)) {
    throw Error(ErrorKind::ConfigError,
                "output.track_transform needs linear_multiplicative noise and a stochastic integrator");
  }

  TrajectoryDiagnostics d;
  d.trajectory_id = trajectory_id;
  if (ic.T == 0.0) return d;

  SimState s = SimState::initial(make_initial_condition(cfg.grid, cfg.initial, cfg.monitor_norm), model.n_modes());
  SimState companion = s;
  StepOptions opts;
  opts.cfl = ic.cfl;
  opts.drift = ic.kind == IntegratorKind::RK4EM ? DriftScheme::RK4 : DriftScheme::Euler;
  StepOptions companion_opts;
  companion_opts.cfl = ic.cfl;
  companion_opts.check_cfl = false;

  std::vector<bool> fired(cfg.rules.size(), false);
  const auto brownian = [&]() { return s.w_accum.empty() ? 0.0 : s.w_accum[0]; };

  // Returns true when the path must end.
  const auto record = [&]() {
    const Sample m = measure(s.u, cfg.monitor_norm);
    const double rho = gbm_rho(linear ? alpha : cfg.noise.alpha, brownian(), s.t);
    d.time.push_back(s.t);
    d.l2.push_back(m.l2);
    d.wmp.push_back(m.wmp);
    d.w1inf.push_back(m.w1inf);
    d.curl_sup.push_back(m.curl_sup);
    d.gamma.push_back(s.gamma);
    d.brownian.push_back(brownian());
    d.rho_gbm.push_back(rho);
    if (track) {
      SpectralField diff = s.u;
      diff *= s.gamma;
      diff -= companion.u;
      d.transform_residual.push_back(l2_norm(diff));
    }
    bool stop = false;
    for (std::size_t r = 0; r < cfg.rules.size(); ++r) {
      if (fired[r]) continue;
      const double v = rule_value(cfg.rules[r], s.u, m, cfg.monitor_norm, rho);
      if (v >= cfg.rules[r].level) {
        fired[r] = true;
        d.hits.push_back({r, s.t, v});
        if (cfg.rules[r].stop_on_hit) {
          stop = true;
          d.termination = Termination::StoppingRule;
        }
      }
    }
    if (!(m.w1inf < cfg.blowup_level)) {
      d.blow_up_flag = true;
      d.termination = Termination::BlowUpLevel;
      stop = true;
    }
    return stop;
  };

  bool stop = record();
  const auto n_steps = static_cast<std::int64_t>(std::ceil(ic.T / ic.dt - 1e-9));
  for (std::int64_t step = 0; step < n_steps && !stop; ++step) {
    const double dt = step + 1 == n_steps ? ic.T - s.t : ic.dt;
    if (!(dt > 0.0)) break;
    const auto dW = driver.sample_increments(trajectory_id, static_cast<std::uint64_t>(step), dt);
    try {
      switch (ic.kind) {
        case IntegratorKind::EulerMaruyama:
        case IntegratorKind::RK4EM:
          if (track) {
            const double w_next = companion.w_accum[0] + dW[0];
            companion = step_transformed(companion, dt, alpha, std::exp(-alpha * w_next), TransformedScheme::RK4,
                                         companion_opts);
            companion.w_accum[0] = w_next;
          }
          s = step_em(s, dt, model, dW, opts);
          break;
        case IntegratorKind::CutoffGalerkin:
          s = step_cutoff_galerkin(s, dt, ic.cutoff_R, model, dW, opts);
          break;
        case IntegratorKind::Transformed: {
          const double w_next = brownian() + (dW.empty() ? 0.0 : dW[0]);
          s = step_transformed(s, dt, alpha, std::exp(-alpha * w_next), ic.transformed_scheme, opts);
          if (!s.w_accum.empty()) s.w_accum[0] = w_next;
          break;
        }
      }
    } catch (const Error& e) {
      if (!is_step_failure(e.kind())) throw;
      d.blow_up_flag = true;
      d.termination = e.kind() == ErrorKind::NonFinite ? Termination::NonFinite : Termination::CflViolation;
      d.message = e.what();
      break;
    }
    if ((step + 1) % cfg.sample_every == 0 || step + 1 == n_steps) stop = record();
  }
  d.final_time = s.t;
  return d;
}

}  // namespace stocheuler
