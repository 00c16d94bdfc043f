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

#include "stocheuler/log_gronwall.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "stocheuler/error.hpp"

namespace stocheuler {
namespace {

double integrand(double r) {
  // r zeta(r) -> 0 as r -> 0, so the integrand extends continuously by 1.
  if (r <= 0.0) return 1.0;
  return 1.0 / (r * (1.0 + std::log(r)) + 1.0);
}

double integrate(double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(integrand, a, b, 8, 1e-11);
}

// Psi(1), computed once; the log singularity of the integrand's derivative
// at 0 is confined to this panel.
double psi_at_one() {
  static const double value = integrate(0.0, 1.0);
  return value;
}

}  // namespace

LogGronwallValues log_gronwall_functions(double x) {
  if (!(x >= 1.0) || !std::isfinite(x)) throw Error(ErrorKind::DomainError, "log-Gronwall functions need x >= 1");
  LogGronwallValues v;
  v.zeta = 1.0 + std::log(x);
  v.Psi = psi_at_one() + (x > 1.0 ? integrate(1.0, x) : 0.0);
  v.Phi = std::exp(v.Psi);
  const double d = x * v.zeta + 1.0;
  v.Phi_prime = v.Phi / d;
  v.Phi_double_prime = -v.Phi * v.zeta / (d * d);
  return v;
}

}  // namespace stocheuler
