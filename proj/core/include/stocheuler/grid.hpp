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
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace stocheuler {

/// Integer wavevector; unused trailing axes are zero in 2D.
using Wavevector = std::array<int, 3>;

/// Uniform periodic collocation grid on the torus [0, length)^dim.
///
/// Storage is row-major with axis 0 slowest, matching FFTW's layout. The
/// spectral index j maps to the signed wavenumber j for j < n/2 and j - n
/// otherwise, so the Nyquist plane sits at -n/2.
class Grid {
 public:
  Grid(int dim, int n, double length = 2.0 * std::numbers::pi,
       double dealias_fraction = 2.0 / 3.0);

  int dim() const noexcept { return dim_; }
  int n() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double dealias_fraction() const noexcept { return dealias_fraction_; }

  std::size_t size() const noexcept { return size_; }
  double spacing() const noexcept { return length_ / n_; }
  double cell_volume() const noexcept;
  double volume() const noexcept;

  /// 2*pi / length: converts integer wavenumbers to physical ones.
  double wavenumber_scale() const noexcept { return k_scale_; }

  int signed_wavenumber(int index) const noexcept { return index < n_ / 2 ? index : index - n_; }
  int index_of(int wavenumber) const noexcept { return wavenumber >= 0 ? wavenumber : wavenumber + n_; }

  Wavevector wavevector(std::size_t flat) const noexcept { return modes_->k[flat]; }
  std::size_t flat_index(const Wavevector& k) const noexcept;
  /// Flat index of -k (Nyquist entries map onto themselves).
  std::size_t mirror(std::size_t flat) const noexcept { return modes_->mirror[flat]; }

  /// Largest retained |k_i| under the dealias rule.
  int dealias_cutoff() const noexcept { return cutoff_; }
  bool retained(const Wavevector& k) const noexcept;
  bool retained(std::size_t flat) const noexcept { return modes_->keep[flat] != 0; }
  /// |k|^2 in integer units.
  double integer_k2(std::size_t flat) const noexcept { return modes_->k2[flat]; }

  /// Whole tables, indexed by flat position, for tight loops.
  std::span<const Wavevector> wavevectors() const noexcept { return modes_->k; }
  std::span<const double> integer_k2s() const noexcept { return modes_->k2; }
  std::span<const std::uint8_t> retained_mask() const noexcept { return modes_->keep; }
  bool has_nyquist(const Wavevector& k) const noexcept;

  double physical_k2(const Wavevector& k) const noexcept;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.length_ == b.length_ &&
           a.dealias_fraction_ == b.dealias_fraction_;
  }

 private:
  int dim_;
  int n_;
  double length_;
  double dealias_fraction_;
  std::size_t size_;
  double k_scale_;
  int cutoff_;

  // Per-mode lookup tables, shared between copies of the grid.
  struct ModeTable {
    std::vector<Wavevector> k;
    std::vector<std::size_t> mirror;
    std::vector<double> k2;
    std::vector<std::uint8_t> keep;
  };
  std::shared_ptr<const ModeTable> modes_;
};

}  // namespace stocheuler
