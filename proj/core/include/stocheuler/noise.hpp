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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stocheuler/spectral_field.hpp"
#include "stocheuler/spectral_ops.hpp"

namespace stocheuler {

enum class NoiseKind { None, Additive, LinearMultiplicative, Nemytskii, Functional };

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& name);

/// Closed-form pointwise map g applied componentwise in Nemytskii noise.
struct PointwiseMap {
  enum class Kind { Identity, Polynomial, Tanh };

  Kind kind = Kind::Identity;
  /// Polynomial: g(s) = sum_j coeffs[j] s^j.
  std::vector<double> coeffs;
  /// Tanh: g(s) = scale * tanh(s / scale).
  double scale = 1.0;

  static PointwiseMap identity() { return {}; }
  static PointwiseMap square() { return {Kind::Polynomial, {0.0, 0.0, 1.0}, 1.0}; }
  static PointwiseMap polynomial(std::vector<double> c) { return {Kind::Polynomial, std::move(c), 1.0}; }
  static PointwiseMap bounded_tanh(double s) { return {Kind::Tanh, {}, s}; }
  /// Parses "identity", "square", "tanh[:scale]", "poly:c0,c1,...".
  static PointwiseMap from_tag(const std::string& tag);

  double operator()(double s) const;
  std::string tag() const;
};

/// The noise operator sigma(u) dW = sum_k sigma_k(u) dW_k, truncated to K
/// modes.
///
///   Additive:             sigma_k(u) = fields[k] (vector), u-independent.
///   LinearMultiplicative: sigma_1(u) = alpha u, K = 1.
///   Nemytskii:            sigma_k(u) = fields[k](x) g(u(x)), fields scalar.
///   Functional:           sigma_k(u) = <u, profiles[k]> fields[k].
class NoiseModel {
 public:
  static NoiseModel none();
  static NoiseModel additive(std::vector<SpectralField> sigma);
  static NoiseModel linear_multiplicative(double alpha);
  static NoiseModel nemytskii(std::vector<SpectralField> alpha_fields, PointwiseMap g);
  static NoiseModel functional(std::vector<SpectralField> profiles, std::vector<SpectralField> alpha_fields);

  NoiseKind kind() const noexcept { return kind_; }
  int n_modes() const noexcept;
  double alpha() const noexcept { return alpha_; }
  const std::vector<SpectralField>& fields() const noexcept { return fields_; }
  const std::vector<SpectralField>& profiles() const noexcept { return profiles_; }
  const PointwiseMap& g() const noexcept { return g_; }

  /// P sigma_k(u), divergence-free.
  SpectralField mode_term(int k, const SpectralField& u) const;

 private:
  NoiseKind kind_ = NoiseKind::None;
  double alpha_ = 0.0;
  std::vector<SpectralField> fields_;
  std::vector<SpectralField> profiles_;
  PointwiseMap g_;
};

/// P(sum_k sigma_k(u) dW_k). Throws ShapeMismatch if dW.size() != K.
SpectralField apply_noise(const NoiseModel& model, const SpectralField& u, std::span<const double> dW);

/// (sum_k ||sigma_k(u) - sigma_k(v)||^2_{W^{m,p}})^{1/2} / ||u - v||_{W^{m,p}}.
/// Throws DegenerateInput when ||u - v|| < 1e-14.
double lipschitz_probe(const NoiseModel& model, const SpectralField& u, const SpectralField& v, int m, int p);

/// Deterministic noise-field families used by configs: mode k (1-based) is
/// amplitude * k^-decay * e_k cos(j_k . x + phi_k) with |e_k| = 1, where j_k
/// walks outward through the dealiased wavevectors. The scalar family uses
/// the constant field `amplitude` for k = 1.
std::vector<SpectralField> decaying_vector_modes(const Grid& grid, int K, double amplitude, double decay,
                                                 std::uint64_t seed);
std::vector<SpectralField> decaying_scalar_modes(const Grid& grid, int K, double amplitude, double decay,
                                                 std::uint64_t seed);

}  // namespace stocheuler
