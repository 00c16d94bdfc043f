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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "stocheuler/grid.hpp"

namespace stocheuler {

using Complex = std::complex<double>;

/// Real-valued field sampled on the collocation grid, one contiguous block
/// per component.
struct PhysicalField {
  PhysicalField(const Grid& g, int components)
      : grid(g), n_components(components), values(g.size() * static_cast<std::size_t>(components)) {}

  std::span<double> component(int c) { return {values.data() + offset(c), grid.size()}; }
  std::span<const double> component(int c) const { return {values.data() + offset(c), grid.size()}; }

  Grid grid;
  int n_components;
  std::vector<double> values;

 private:
  std::size_t offset(int c) const { return static_cast<std::size_t>(c) * grid.size(); }
};

/// Truncated Fourier representation of a scalar (1 component) or vector
/// (dim components) field on the torus.
///
/// Coefficients are Fourier-series coefficients: u(x) = sum_k c_k e^{i k.x}.
/// They are Hermitian (c_{-k} = conj c_k) so that u is real, and the Nyquist
/// plane is kept at zero. The divergence_free flag is informational; the
/// operations that guarantee it (projection, curl) set it.
class SpectralField {
 public:
  SpectralField(const Grid& grid, int components);

  static SpectralField vector(const Grid& grid) { return {grid, grid.dim()}; }
  static SpectralField scalar(const Grid& grid) { return {grid, 1}; }

  static SpectralField from_physical(const PhysicalField& f);
  PhysicalField to_physical() const;

  const Grid& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }
  bool is_vector() const noexcept { return components_ == grid_.dim(); }
  bool is_scalar() const noexcept { return components_ == 1; }

  bool divergence_free() const noexcept { return divergence_free_; }
  void set_divergence_free(bool flag) noexcept { divergence_free_ = flag; }

  std::span<Complex> component(int c) { return {coeffs_.data() + offset(c), grid_.size()}; }
  std::span<const Complex> component(int c) const { return {coeffs_.data() + offset(c), grid_.size()}; }

  Complex& at(int c, std::size_t flat) { return coeffs_[offset(c) + flat]; }
  const Complex& at(int c, std::size_t flat) const { return coeffs_[offset(c) + flat]; }

  std::span<Complex> data() noexcept { return coeffs_; }
  std::span<const Complex> data() const noexcept { return coeffs_; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

  /// this += s * other
  SpectralField& axpy(double s, const SpectralField& other);

  /// Largest |c_{-k} - conj c_k| over the spectrum (0 for a real field).
  double hermitian_defect() const;
  /// Replace c_k by (c_k + conj c_{-k}) / 2 and zero the Nyquist plane.
  void symmetrize();
  bool all_finite() const;

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  /// Bitwise equality of shape, flag and coefficients.
  friend bool operator==(const SpectralField& a, const SpectralField& b);

 private:
  std::size_t offset(int c) const { return static_cast<std::size_t>(c) * grid_.size(); }
  void require_same_shape(const SpectralField& other) const;

  Grid grid_;
  int components_;
  bool divergence_free_ = false;
  std::vector<Complex> coeffs_;
};

}  // namespace stocheuler
