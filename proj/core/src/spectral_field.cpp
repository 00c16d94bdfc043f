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

#include "stocheuler/spectral_field.hpp"

#include <algorithm>
#include <cmath>

#include "stocheuler/error.hpp"
#include "stocheuler/fft.hpp"

namespace stocheuler {

SpectralField::SpectralField(const Grid& grid, int components)
    : grid_(grid), components_(components), coeffs_(grid.size() * static_cast<std::size_t>(components)) {
  if (components != 1 && components != grid.dim()) {
    throw Error(ErrorKind::ShapeMismatch, "a spectral field has 1 or dim components");
  }
}

SpectralField SpectralField::from_physical(const PhysicalField& f) {
  SpectralField out(f.grid, f.n_components);
  for (int c = 0; c < f.n_components; ++c) fft::forward(f.grid, f.component(c), out.component(c));
  out.symmetrize();
  return out;
}

PhysicalField SpectralField::to_physical() const {
  PhysicalField out(grid_, components_);
  for (int c = 0; c < components_; ++c) fft::inverse(grid_, component(c), out.component(c));
  return out;
}

void SpectralField::require_same_shape(const SpectralField& other) const {
  if (!(grid_ == other.grid_) || components_ != other.components_) {
    throw Error(ErrorKind::ShapeMismatch, "spectral fields differ in grid or component count");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  divergence_free_ = divergence_free_ && other.divergence_free_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  divergence_free_ = divergence_free_ && other.divergence_free_;
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
  divergence_free_ = divergence_free_ && other.divergence_free_;
  return *this;
}

double SpectralField::hermitian_defect() const {
  double worst = 0.0;
  for (int c = 0; c < components_; ++c) {
    const auto comp = component(c);
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      worst = std::max(worst, std::abs(comp[grid_.mirror(i)] - std::conj(comp[i])));
    }
  }
  return worst;
}

void SpectralField::symmetrize() {
  for (int c = 0; c < components_; ++c) {
    auto comp = component(c);
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      const Wavevector k = grid_.wavevector(i);
      if (grid_.has_nyquist(k)) {
        comp[i] = 0.0;
        continue;
      }
      const std::size_t j = grid_.mirror(i);
      if (j < i) continue;
      const Complex avg = 0.5 * (comp[i] + std::conj(comp[j]));
      comp[i] = avg;
      comp[j] = std::conj(avg);
    }
  }
}

bool SpectralField::all_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

bool operator==(const SpectralField& a, const SpectralField& b) {
  return a.grid_ == b.grid_ && a.components_ == b.components_ &&
         a.divergence_free_ == b.divergence_free_ && a.coeffs_ == b.coeffs_;
}

}  // namespace stocheuler
