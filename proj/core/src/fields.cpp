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

#include "stocheuler/fields.hpp"

#include <cmath>
#include <cstdlib>

#include "stocheuler/brownian.hpp"
#include "stocheuler/error.hpp"
#include "stocheuler/spectral_ops.hpp"

namespace stocheuler {

SpectralField sample_field(const Grid& grid, int components, const PointFunction& f) {
  PhysicalField phys(grid, components);
  const double h = grid.spacing();
  const auto un = static_cast<std::size_t>(grid.n());
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    std::size_t rest = flat;
    for (int d = grid.dim() - 1; d >= 0; --d) {
      x[d] = h * static_cast<double>(rest % un);
      rest /= un;
    }
    const auto value = f(x);
    for (int c = 0; c < components; ++c) phys.component(c)[flat] = value[c];
  }
  return SpectralField::from_physical(phys);
}

SpectralField taylor_green(const Grid& grid, double amplitude) {
  const double s = grid.wavenumber_scale();
  SpectralField u = grid.dim() == 2
      ? sample_field(grid, 2, [&](const auto& x) {
          return std::array<double, 3>{amplitude * std::sin(s * x[0]) * std::cos(s * x[1]),
                                       -amplitude * std::cos(s * x[0]) * std::sin(s * x[1]), 0.0};
        })
      : sample_field(grid, 3, [&](const auto& x) {
          const double cz = std::cos(s * x[2]);
          return std::array<double, 3>{amplitude * std::sin(s * x[0]) * std::cos(s * x[1]) * cz,
                                       -amplitude * std::cos(s * x[0]) * std::sin(s * x[1]) * cz, 0.0};
        });
  return leray_project(u);
}

SpectralField shear_flow(const Grid& grid, double amplitude) {
  const double s = grid.wavenumber_scale();
  SpectralField u = sample_field(grid, grid.dim(), [&](const auto& x) {
    return std::array<double, 3>{amplitude * std::sin(s * x[1]), 0.0, 0.0};
  });
  return leray_project(u);
}

SpectralField abc_flow(const Grid& grid, double A, double B, double C) {
  if (grid.dim() != 3) throw Error(ErrorKind::InvalidGrid, "the ABC flow is three-dimensional");
  const double s = grid.wavenumber_scale();
  SpectralField u = sample_field(grid, 3, [&](const auto& x) {
    const double a = s * x[0], b = s * x[1], c = s * x[2];
    return std::array<double, 3>{A * std::sin(c) + C * std::cos(b), B * std::sin(a) + A * std::cos(c),
                                 C * std::sin(b) + B * std::cos(a)};
  });
  return leray_project(u);
}

namespace {

SpectralField random_coefficients(const Grid& grid, int components, std::uint64_t seed, int kmax, double slope,
                                  bool with_mean) {
  if (kmax < 1 || kmax > grid.dealias_cutoff()) {
    throw Error(ErrorKind::InvalidParams, "random field kmax must lie in [1, dealias cutoff]");
  }
  const BrownianDriver rng(seed, 0);
  SpectralField f(grid, components);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Wavevector k = grid.wavevector(i);
    int kinf = 0;
    double k2 = 0.0;
    for (int d = 0; d < grid.dim(); ++d) {
      kinf = std::max(kinf, std::abs(k[d]));
      k2 += static_cast<double>(k[d]) * k[d];
    }
    if (kinf > kmax || (kinf == 0 && !with_mean)) continue;
    const double amp = kinf == 0 ? 1.0 : std::pow(k2, -0.5 * slope);
    for (int c = 0; c < components; ++c) {
      const auto stream = static_cast<std::uint32_t>(2 * c);
      f.at(c, i) = amp * Complex(rng.standard_normal(i, 0, stream), rng.standard_normal(i, 0, stream + 1));
    }
  }
  f.symmetrize();
  return f;
}

}  // namespace

SpectralField random_divergence_free(const Grid& grid, std::uint64_t seed, int kmax, double slope) {
  SpectralField u = leray_project(random_coefficients(grid, grid.dim(), seed, kmax, slope, false));
  const double norm = l2_norm(u);
  if (norm > 0.0) u *= 1.0 / norm;
  return u;
}

SpectralField random_scalar(const Grid& grid, std::uint64_t seed, int kmax, double slope, bool with_mean) {
  SpectralField f = random_coefficients(grid, 1, seed, kmax, slope, with_mean);
  const double norm = l2_norm(f);
  if (norm > 0.0) f *= 1.0 / norm;
  return f;
}

}  // namespace stocheuler
