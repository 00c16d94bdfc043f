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

namespace stocheuler {

/// zeta(x) = 1 + ln x, Psi(x) = int_0^x dr / (r zeta(r) + 1), Phi = exp(Psi)
/// and the first two derivatives of Phi.
struct LogGronwallValues {
  double zeta = 0.0;
  double Psi = 0.0;
  double Phi = 0.0;
  double Phi_prime = 0.0;
  double Phi_double_prime = 0.0;
};

/// Evaluated for x >= 1 with adaptive Gauss-Kronrod quadrature (relative
/// tolerance 1e-12 per panel). Throws DomainError for x < 1 or non-finite x.
LogGronwallValues log_gronwall_functions(double x);

}  // namespace stocheuler
