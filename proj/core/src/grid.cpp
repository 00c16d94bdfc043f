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

#include "stocheuler/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "stocheuler/error.hpp"

namespace stocheuler {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::UnsupportedNorm: return "UnsupportedNorm";
    case ErrorKind::DegenerateVorticity: return "DegenerateVorticity";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::CflViolation: return "CflViolation";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::StiffnessFailure: return "StiffnessFailure";
    case ErrorKind::DegenerateSeries: return "DegenerateSeries";
    case ErrorKind::VersionError: return "VersionError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Grid::Grid(int dim, int n, double length, double dealias_fraction)
    : dim_(dim), n_(n), length_(length), dealias_fraction_(dealias_fraction) {
  if (dim != 2 && dim != 3) {
    throw Error(ErrorKind::InvalidGrid, "grid.dim must be 2 or 3, got " + std::to_string(dim));
  }
  if (n < 8 || n % 2 != 0) {
    throw Error(ErrorKind::InvalidGrid, "grid.n must be even and >= 8, got " + std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorKind::InvalidGrid, "grid.length must be positive");
  }
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidGrid, "grid.dealias_fraction must lie in (0, 1]");
  }
  size_ = 1;
  for (int d = 0; d < dim; ++d) size_ *= static_cast<std::size_t>(n);
  k_scale_ = 2.0 * std::numbers::pi / length;
  cutoff_ = static_cast<int>(std::floor(dealias_fraction * n / 2.0 + 1e-12));
  // The Nyquist plane has no conjugate partner; never retain it.
  if (cutoff_ >= n / 2) cutoff_ = n / 2 - 1;

  auto table = std::make_shared<ModeTable>();
  table->k.resize(size_);
  table->mirror.resize(size_);
  table->k2.resize(size_);
  table->keep.resize(size_);
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t flat = 0; flat < size_; ++flat) {
    Wavevector k{0, 0, 0};
    std::size_t rest = flat;
    for (int d = dim - 1; d >= 0; --d) {
      k[d] = signed_wavenumber(static_cast<int>(rest % un));
      rest /= un;
    }
    Wavevector minus = k;
    for (int d = 0; d < dim; ++d) {
      if (minus[d] != -n / 2) minus[d] = -minus[d];
    }
    table->k[flat] = k;
    table->mirror[flat] = flat_index(minus);
    table->k2[flat] = static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1] +
                      static_cast<double>(k[2]) * k[2];
    table->keep[flat] = retained(k) ? 1 : 0;
  }
  modes_ = std::move(table);
}

double Grid::cell_volume() const noexcept { return std::pow(spacing(), dim_); }

double Grid::volume() const noexcept { return std::pow(length_, dim_); }

std::size_t Grid::flat_index(const Wavevector& k) const noexcept {
  std::size_t flat = 0;
  for (int d = 0; d < dim_; ++d) {
    flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(index_of(k[d]));
  }
  return flat;
}

bool Grid::retained(const Wavevector& k) const noexcept {
  for (int d = 0; d < dim_; ++d) {
    if (std::abs(k[d]) > cutoff_) return false;
  }
  return true;
}

bool Grid::has_nyquist(const Wavevector& k) const noexcept {
  for (int d = 0; d < dim_; ++d) {
    if (k[d] == -n_ / 2) return true;
  }
  return false;
}

double Grid::physical_k2(const Wavevector& k) const noexcept {
  double s = 0.0;
  for (int d = 0; d < dim_; ++d) s += static_cast<double>(k[d]) * k[d];
  return s * k_scale_ * k_scale_;
}

}  // namespace stocheuler
