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

#include "stocheuler/ode_lemma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stocheuler/error.hpp"

namespace stocheuler {
namespace {

// log(1 + exp(a)) without overflow.
double log1p_exp(double a) { return a > 0.0 ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a)); }

double parse_profile_arg(const std::string& name, std::size_t colon) {
  try {
    return std::stod(name.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidParams, "ode.z_profile: bad argument in '" + name + "'");
  }
}

}  // namespace

KappaK kappa_K(double R, double alpha, double Cbar, double dr_factor) {
  if (!(R >= 1.0) || !std::isfinite(R)) throw Error(ErrorKind::InvalidParams, "ode.R must be >= 1");
  if (alpha == 0.0 || !std::isfinite(alpha)) throw Error(ErrorKind::InvalidParams, "ode.alpha must be nonzero");
  if (!(Cbar >= 1.0) || !std::isfinite(Cbar)) throw Error(ErrorKind::InvalidParams, "ode.Cbar must be >= 1");
  if (!(dr_factor > 0.0) || !std::isfinite(dr_factor)) {
    throw Error(ErrorKind::InvalidParams, "ode.dr_factor must be > 0");
  }
  const double a2 = alpha * alpha;
  const double log_dr = dr_factor * Cbar * R;
  // 1 / (8 (D_R - 1)); expm1 keeps precision and saturates to +inf harmlessly.
  const double power = 1.0 - 1.0 / (8.0 * std::expm1(log_dr));
  const double middle = log1p_exp(power * std::log(a2 / (8.0 * Cbar)));
  // log of the exponent 8 Cbar R D_R (Cbar + alpha^2) / alpha^2.
  const double log_exponent = std::log(8.0 * Cbar * R * (Cbar + a2) / a2) + log_dr;

  KappaK out;
  out.log_K = std::log(2.0 * R) + middle + std::exp(log_exponent);
  out.log_kappa = std::log(a2 / (2.0 * Cbar)) - out.log_K;
  out.K = std::exp(out.log_K);
  out.kappa = std::exp(out.log_kappa);
  out.K_overflow = std::isinf(out.K);
  out.kappa_underflow = out.kappa < std::numeric_limits<double>::min();
  if (out.kappa_underflow) out.kappa = 0.0;
  return out;
}

ZProfile make_z_profile(const std::string& name, double alpha) {
  const double zmax = 0.25 * alpha * alpha;
  if (name == "zero") return [](double) { return 0.0; };
  if (name == "extremal") return [zmax](double) { return zmax; };
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string head = name.substr(0, colon);
    const double arg = parse_profile_arg(name, colon);
    if (head == "fraction") {
      if (!(arg >= 0.0 && arg <= 1.0)) throw Error(ErrorKind::InvalidParams, "ode.z_profile fraction must lie in [0, 1]");
      return [v = arg * zmax](double) { return v; };
    }
    if (head == "decaying") {
      if (!(arg >= 0.0)) throw Error(ErrorKind::InvalidParams, "ode.z_profile decay rate must be >= 0");
      return [zmax, arg](double t) { return zmax * std::exp(-arg * t); };
    }
  }
  throw Error(ErrorKind::InvalidParams, "ode.z_profile: unknown profile '" + name + "'");
}

OdeLemmaParams& OdeLemmaParams::with_y0(double y0) {
  if (!(y0 > 0.0)) throw Error(ErrorKind::InvalidParams, "ode.y0 must be > 0");
  log_y0 = std::log(y0);
  return *this;
}

OdeBoundResult ode_bound_check(const OdeLemmaParams& p, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidParams, "ode.dt must be > 0");
  if (!std::isfinite(p.log_y0)) throw Error(ErrorKind::InvalidParams, "ode.y0 must be positive and finite");

  OdeBoundResult out;
  out.kappa = kappa_K(p.R, p.alpha, p.Cbar, p.dr_factor);
  out.admissible = p.log_y0 <= out.kappa.log_kappa;

  const double a2 = p.alpha * p.alpha;
  const double c = p.Cbar + a2;
  const double zmax = 0.25 * a2;
  const ZProfile z = make_z_profile(p.z_profile, p.alpha);
  const auto rhs = [&](double t, double Y) {
    const double zt = z(t);
    if (!(zt >= 0.0 && zt <= zmax * (1.0 + 1e-12))) {
      std::ostringstream os;
      os << "z(" << t << ") = " << zt << " leaves [0, alpha^2 / 4]";
      throw Error(ErrorKind::InvalidParams, os.str());
    }
    return p.Cbar * p.R * std::exp(-a2 * t / 8.0) * (c + zt * Y);
  };
  const auto rk4 = [&](double t, double Y, double h) {
    const double k1 = rhs(t, Y);
    const double k2 = rhs(t + 0.5 * h, Y + 0.5 * h * k1);
    const double k3 = rhs(t + 0.5 * h, Y + 0.5 * h * k2);
    const double k4 = rhs(t + h, Y + h * k3);
    return Y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  constexpr double kTol = 1e-8;
  out.T_end = 8.0 * std::log(1e8) / a2;
  out.log_bound = std::log(a2 / (8.0 * p.R * p.Cbar));

  double t = 0.0;
  double Y = p.log_y0;
  double h = std::min(dt, out.T_end);
  double sup = Y;
  out.t.push_back(t);
  out.log_y.push_back(Y);
  const double h_min = 1e-12 * out.T_end;
  while (t < out.T_end) {
    h = std::min(h, out.T_end - t);
    const double full = rk4(t, Y, h);
    const double half = rk4(t + 0.5 * h, rk4(t, Y, 0.5 * h), 0.5 * h);
    const double err = std::abs(full - half) / 15.0;
    const double scale = std::max(1.0, std::abs(half));
    if (!std::isfinite(half) || err > kTol * scale) {
      h *= 0.5;
      if (h < h_min) {
        std::ostringstream os;
        os << "RK4 step size fell below " << h_min << " at t = " << t;
        throw Error(ErrorKind::StiffnessFailure, os.str());
      }
      continue;
    }
    t += h;
    Y = half + (half - full) / 15.0;
    sup = std::max(sup, Y);
    out.t.push_back(t);
    out.log_y.push_back(Y);
    if (err < 0.01 * kTol * scale) h = std::min(2.0 * h, dt);
  }

  // Beyond T_end: dY/dt <= a(t)(c + zmax Y+) with int_T^inf a = A, so by
  // Gronwall Y+ grows by at most Y+(T)(e^eps - 1) + c A e^eps, eps = zmax A.
  const double A = p.Cbar * p.R * (8.0 / a2) * std::exp(-a2 * out.T_end / 8.0);
  const double eps = zmax * A;
  out.tail_allowance = std::max(Y, 0.0) * std::expm1(eps) + c * A * std::exp(eps);
  out.log_y_sup = std::max(sup, Y + out.tail_allowance);
  out.margin = out.log_bound - out.log_y_sup;
  out.bound_satisfied = out.margin >= 0.0;
  return out;
}

}  // namespace stocheuler
