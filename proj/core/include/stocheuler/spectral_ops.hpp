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

#include <limits>

#include "stocheuler/spectral_field.hpp"

namespace stocheuler {

/// Sobolev norm selector: derivative order m and integrability p (p may be
/// +infinity, in which case only m in {0, 1} is supported).
struct NormRequest {
  int m = 0;
  double p = 2.0;

  static constexpr double infinity = std::numeric_limits<double>::infinity();
  bool is_sup() const noexcept { return p == infinity; }
};

// Modewise operators ---------------------------------------------------------

/// Leray projection: c_k -> c_k - k (k.c_k) / |k|^2, identity on k = 0.
SpectralField leray_project(const SpectralField& f);

/// Zero every mode outside the dealias band (and the Nyquist plane).
SpectralField dealias(const SpectralField& f);

/// Spectral partial derivative along `axis`.
SpectralField derivative(const SpectralField& f, int axis);

/// Gradient of a scalar field.
SpectralField gradient(const SpectralField& scalar);

/// Divergence of a vector field (scalar result).
SpectralField divergence(const SpectralField& u);

/// 2D: scalar d1 u2 - d2 u1. 3D: vector curl, flagged divergence-free.
SpectralField curl(const SpectralField& u);

/// Velocity with zero mean recovered from vorticity (scalar in 2D, vector
/// in 3D). The mean mode of the result is zero.
SpectralField biot_savart(const SpectralField& vorticity);

/// Gaussian Fourier multiplier exp(-eps |k|^2) followed by projection.
SpectralField mollify(const SpectralField& u, double eps);

/// max over k != 0 of |k . c_k| (integer wavevectors, physical scaling).
double max_divergence(const SpectralField& u);

// Nonlinear terms ------------------------------------------------------------

/// P(u . grad u), computed pseudo-spectrally and dealiased.
SpectralField nonlinear_term(const SpectralField& u);

/// Dealiased u . grad w for a scalar w (2D vorticity transport).
SpectralField advect_scalar(const SpectralField& u, const SpectralField& w);

/// Dealiased, projected curl(v x w) = w . grad v - v . grad w (3D).
SpectralField stretching_minus_transport(const SpectralField& v, const SpectralField& w);

/// Dealiased pointwise product of two fields; a scalar factor broadcasts.
SpectralField pointwise_product(const SpectralField& a, const SpectralField& b);

// Norms ----------------------------------------------------------------------

/// L^2 inner product over the torus, via Parseval.
double inner_product(const SpectralField& a, const SpectralField& b);
double l2_norm(const SpectralField& u);

/// L^2 norm by physical-space quadrature (used to cross-check Parseval).
double l2_norm_quadrature(const SpectralField& u);

/// max over grid points of the Euclidean magnitude |u(x)|.
double sup_norm(const SpectralField& u);

/// ||u||_{W^{m,p}} = (sum_{|a|<=m} ||d^a u||_{L^p}^p)^{1/p} by quadrature on
/// the collocation grid; for p = inf the W^{1,inf} convention
/// max_x (|u| + |grad u|) is used. Throws UnsupportedNorm for p = inf, m >= 2.
double sobolev_norm(const SpectralField& u, const NormRequest& req);

/// Pressure solving -Lap(pi) = div(u . grad u); mean zero.
SpectralField pressure(const SpectralField& u);

// Cut-off and monitors -------------------------------------------------------

/// Smooth non-increasing bump equal to 1 below R and 0 above 2R.
double cutoff_theta(double x, double R);

struct BkmBound {
  double value = 0.0;
  double l2 = 0.0;
  double vorticity_sup = 0.0;
  double sobolev = 0.0;
  /// Set when ||curl u||_inf < 1e-14; value is then C2 ||u||_{L^2}.
  bool degenerate_vorticity = false;
};

/// C2 ||u||_2 + C2 ||w||_inf (1 + log+(||u||_{W^{m,p}} / ||w||_inf)).
BkmBound bkm_upper_bound(const SpectralField& u, int m, int p, double C2);

}  // namespace stocheuler
