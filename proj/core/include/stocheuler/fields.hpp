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

#include <array>
#include <cstdint>
#include <functional>

#include "stocheuler/spectral_field.hpp"

namespace stocheuler {

/// Sample a closed-form field at the collocation points and transform.
using PointFunction = std::function<std::array<double, 3>(const std::array<double, 3>& x)>;
SpectralField sample_field(const Grid& grid, int components, const PointFunction& f);

/// 2D: (sin x1 cos x2, -cos x1 sin x2); 3D: (sin x cos y cos z, -cos x sin y cos z, 0).
SpectralField taylor_green(const Grid& grid, double amplitude = 1.0);

/// Shear flow amplitude * (sin x2, 0[, 0]); an exact steady state with
/// vanishing nonlinearity.
SpectralField shear_flow(const Grid& grid, double amplitude = 1.0);

/// Arnold-Beltrami-Childress flow (3D); curl u = u.
SpectralField abc_flow(const Grid& grid, double A = 1.0, double B = 1.0, double C = 1.0);

/// Random smooth divergence-free field: independent Gaussian coefficients on
/// 0 < |k|_inf <= kmax with amplitude |k|^-slope, symmetrized, projected and
/// normalized to unit L^2 norm. Reproducible from `seed`.
SpectralField random_divergence_free(const Grid& grid, std::uint64_t seed, int kmax = 4, double slope = 1.5);

/// Random smooth real scalar field, normalized to unit L^2 norm; mean zero
/// unless `with_mean` is set.
SpectralField random_scalar(const Grid& grid, std::uint64_t seed, int kmax = 4, double slope = 1.5,
                            bool with_mean = false);

}  // namespace stocheuler
