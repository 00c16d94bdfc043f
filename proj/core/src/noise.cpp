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

#include "stocheuler/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stocheuler/brownian.hpp"
#include "stocheuler/error.hpp"
#include "stocheuler/fft.hpp"

namespace stocheuler {

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::None: return "none";
    case NoiseKind::Additive: return "additive";
    case NoiseKind::LinearMultiplicative: return "linear_multiplicative";
    case NoiseKind::Nemytskii: return "nemytskii";
    case NoiseKind::Functional: return "functional";
  }
  return "none";
}

NoiseKind noise_kind_from_string(const std::string& name) {
  if (name == "none") return NoiseKind::None;
  if (name == "additive") return NoiseKind::Additive;
  if (name == "linear_multiplicative" || name == "linear") return NoiseKind::LinearMultiplicative;
  if (name == "nemytskii") return NoiseKind::Nemytskii;
  if (name == "functional") return NoiseKind::Functional;
  throw Error(ErrorKind::ConfigError, "noise.kind: unknown noise kind '" + name + "'");
}

PointwiseMap PointwiseMap::from_tag(const std::string& tag) {
  if (tag == "identity") return identity();
  if (tag == "square") return square();
  if (tag.rfind("tanh", 0) == 0) {
    if (tag.size() == 4) return bounded_tanh(1.0);
    if (tag[4] != ':') throw Error(ErrorKind::ConfigError, "noise.g: bad tanh tag '" + tag + "'");
    return bounded_tanh(std::stod(tag.substr(5)));
  }
  if (tag.rfind("poly:", 0) == 0) {
    std::vector<double> c;
    std::stringstream ss(tag.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) c.push_back(std::stod(item));
    if (c.empty()) throw Error(ErrorKind::ConfigError, "noise.g: empty polynomial");
    return polynomial(std::move(c));
  }
  throw Error(ErrorKind::ConfigError, "noise.g: unknown map '" + tag + "'");
}

double PointwiseMap::operator()(double s) const {
  switch (kind) {
    case Kind::Identity: return s;
    case Kind::Polynomial: {
      double acc = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
      return acc;
    }
    case Kind::Tanh: return scale * std::tanh(s / scale);
  }
  return s;
}

std::string PointwiseMap::tag() const {
  switch (kind) {
    case Kind::Identity: return "identity";
    case Kind::Tanh: {
      std::ostringstream os;
      os.precision(17);
      os << "tanh:" << scale;
      return os.str();
    }
    case Kind::Polynomial: {
      std::ostringstream os;
      os.precision(17);
      os << "poly:";
      for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i];
      return os.str();
    }
  }
  return "identity";
}

NoiseModel NoiseModel::none() { return {}; }

NoiseModel NoiseModel::additive(std::vector<SpectralField> sigma) {
  NoiseModel m;
  m.kind_ = NoiseKind::Additive;
  for (auto& s : sigma) {
    if (!s.is_vector()) throw Error(ErrorKind::ShapeMismatch, "additive noise fields must be vector fields");
    m.fields_.push_back(leray_project(dealias(s)));
  }
  return m;
}

NoiseModel NoiseModel::linear_multiplicative(double alpha) {
  NoiseModel m;
  m.kind_ = NoiseKind::LinearMultiplicative;
  m.alpha_ = alpha;
  return m;
}

NoiseModel NoiseModel::nemytskii(std::vector<SpectralField> alpha_fields, PointwiseMap g) {
  NoiseModel m;
  m.kind_ = NoiseKind::Nemytskii;
  for (auto& a : alpha_fields) {
    if (!a.is_scalar()) throw Error(ErrorKind::ShapeMismatch, "Nemytskii coefficients must be scalar fields");
  }
  m.fields_ = std::move(alpha_fields);
  m.g_ = std::move(g);
  return m;
}

NoiseModel NoiseModel::functional(std::vector<SpectralField> profiles, std::vector<SpectralField> alpha_fields) {
  if (profiles.size() != alpha_fields.size()) {
    throw Error(ErrorKind::ShapeMismatch, "functional noise needs one profile per coefficient field");
  }
  NoiseModel m;
  m.kind_ = NoiseKind::Functional;
  m.profiles_ = std::move(profiles);
  for (auto& a : alpha_fields) m.fields_.push_back(leray_project(dealias(a)));
  return m;
}

int NoiseModel::n_modes() const noexcept {
  switch (kind_) {
    case NoiseKind::None: return 0;
    case NoiseKind::LinearMultiplicative: return 1;
    default: return static_cast<int>(fields_.size());
  }
}

namespace {

/// P dealias(a(x) g(u(x))) for a scalar coefficient field a.
SpectralField nemytskii_term(const SpectralField& a, const PointwiseMap& g, const SpectralField& u) {
  const Grid& grid = u.grid();
  std::vector<double> ap(grid.size());
  fft::inverse(grid, a.component(0), ap);
  const PhysicalField up = u.to_physical();
  PhysicalField prod(grid, u.components());
  for (int c = 0; c < u.components(); ++c) {
    const auto src = up.component(c);
    auto dst = prod.component(c);
    for (std::size_t x = 0; x < grid.size(); ++x) dst[x] = ap[x] * g(src[x]);
  }
  SpectralField out = SpectralField::from_physical(prod);
  return leray_project(dealias(out));
}

}  // namespace

SpectralField NoiseModel::mode_term(int k, const SpectralField& u) const {
  if (k < 0 || k >= n_modes()) throw Error(ErrorKind::ShapeMismatch, "noise mode index out of range");
  switch (kind_) {
    case NoiseKind::None: break;
    case NoiseKind::Additive: return fields_[k];
    case NoiseKind::LinearMultiplicative: {
      SpectralField out = u;
      out *= alpha_;
      return out;
    }
    case NoiseKind::Nemytskii: return nemytskii_term(fields_[k], g_, u);
    case NoiseKind::Functional: {
      SpectralField out = fields_[k];
      out *= inner_product(u, profiles_[k]);
      return out;
    }
  }
  throw Error(ErrorKind::ShapeMismatch, "noise model has no modes");
}

SpectralField apply_noise(const NoiseModel& model, const SpectralField& u, std::span<const double> dW) {
  const int K = model.n_modes();
  if (static_cast<int>(dW.size()) != K) {
    throw Error(ErrorKind::ShapeMismatch,
                "noise expects " + std::to_string(K) + " increments, got " + std::to_string(dW.size()));
  }
  const Grid& grid = u.grid();
  switch (model.kind()) {
    case NoiseKind::None: {
      SpectralField zero = SpectralField::vector(grid);
      zero.set_divergence_free(true);
      return zero;
    }
    case NoiseKind::LinearMultiplicative: {
      SpectralField out = u;
      out *= model.alpha() * dW[0];
      return out;
    }
    case NoiseKind::Nemytskii: {
      // sum_k a_k(x) dW_k g(u(x)) = (sum_k a_k dW_k)(x) g(u(x))
      SpectralField a = SpectralField::scalar(grid);
      for (int k = 0; k < K; ++k) a.axpy(dW[k], model.fields()[k]);
      return nemytskii_term(a, model.g(), u);
    }
    case NoiseKind::Additive:
    case NoiseKind::Functional: {
      SpectralField out = SpectralField::vector(grid);
      out.set_divergence_free(true);
      for (int k = 0; k < K; ++k) {
        const double weight = model.kind() == NoiseKind::Functional
                                  ? dW[k] * inner_product(u, model.profiles()[k])
                                  : dW[k];
        out.axpy(weight, model.fields()[k]);
      }
      return out;
    }
  }
  throw Error(ErrorKind::ShapeMismatch, "unknown noise kind");
}

double lipschitz_probe(const NoiseModel& model, const SpectralField& u, const SpectralField& v, int m, int p) {
  const NormRequest req{m, static_cast<double>(p)};
  const double denom = sobolev_norm(u - v, req);
  if (denom < 1e-14) throw Error(ErrorKind::DegenerateInput, "lipschitz_probe needs u != v");
  double acc = 0.0;
  for (int k = 0; k < model.n_modes(); ++k) {
    const double diff = sobolev_norm(model.mode_term(k, u) - model.mode_term(k, v), req);
    acc += diff * diff;
  }
  return std::sqrt(acc) / denom;
}

namespace {

std::vector<Wavevector> outward_wavevectors(const Grid& grid, int count) {
  std::vector<Wavevector> all;
  const int K = grid.dealias_cutoff();
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const Wavevector k = grid.wavevector(i);
    if (!grid.retained(k)) continue;
    // keep one of each +-k pair: first nonzero component positive
    int first = 0;
    for (int d = 0; d < grid.dim(); ++d) {
      if (k[d] != 0) {
        first = k[d];
        break;
      }
    }
    if (first > 0) all.push_back(k);
  }
  std::stable_sort(all.begin(), all.end(), [&](const Wavevector& a, const Wavevector& b) {
    const auto n2 = [&](const Wavevector& k) { return k[0] * k[0] + k[1] * k[1] + k[2] * k[2]; };
    if (n2(a) != n2(b)) return n2(a) < n2(b);
    return a < b;
  });
  if (static_cast<int>(all.size()) < count) {
    throw Error(ErrorKind::ConfigError, "noise.K exceeds the " + std::to_string(all.size()) +
                                            " resolved modes of this grid (cutoff " + std::to_string(K) + ")");
  }
  all.resize(static_cast<std::size_t>(count));
  return all;
}

}  // namespace

std::vector<SpectralField> decaying_vector_modes(const Grid& grid, int K, double amplitude, double decay,
                                                 std::uint64_t seed) {
  const auto wavevectors = outward_wavevectors(grid, K);
  const BrownianDriver rng(seed, 0);
  std::vector<SpectralField> out;
  for (int k = 0; k < K; ++k) {
    const Wavevector j = wavevectors[k];
    const double jn2 = static_cast<double>(j[0] * j[0] + j[1] * j[1] + j[2] * j[2]);
    std::array<double, 3> e{0.0, 0.0, 0.0};
    double dot = 0.0;
    for (int d = 0; d < grid.dim(); ++d) {
      e[d] = rng.standard_normal(static_cast<std::uint64_t>(k), 0, static_cast<std::uint32_t>(d));
      dot += e[d] * j[d];
    }
    double norm = 0.0;
    for (int d = 0; d < grid.dim(); ++d) {
      e[d] -= dot * j[d] / jn2;
      norm += e[d] * e[d];
    }
    norm = std::sqrt(norm);
    const double phase = 2.0 * std::numbers::pi * (0.5 + 0.5 * std::erf(rng.standard_normal(k, 0, 7) / std::sqrt(2.0)));
    const double scale = amplitude * std::pow(static_cast<double>(k + 1), -decay);
    SpectralField f = SpectralField::vector(grid);
    const std::size_t plus = grid.flat_index(j);
    const std::size_t minus = grid.mirror(plus);
    for (int d = 0; d < grid.dim(); ++d) {
      const Complex c = 0.5 * scale * (e[d] / norm) * std::polar(1.0, phase);
      f.at(d, plus) = c;
      f.at(d, minus) = std::conj(c);
    }
    out.push_back(leray_project(f));
  }
  return out;
}

std::vector<SpectralField> decaying_scalar_modes(const Grid& grid, int K, double amplitude, double decay,
                                                 std::uint64_t seed) {
  std::vector<SpectralField> out;
  if (K <= 0) return out;
  SpectralField constant = SpectralField::scalar(grid);
  constant.at(0, 0) = amplitude;
  out.push_back(constant);
  if (K == 1) return out;
  const auto wavevectors = outward_wavevectors(grid, K - 1);
  const BrownianDriver rng(seed, 0);
  for (int k = 1; k < K; ++k) {
    const double phase =
        2.0 * std::numbers::pi * (0.5 + 0.5 * std::erf(rng.standard_normal(k, 0, 7) / std::sqrt(2.0)));
    const double scale = amplitude * std::pow(static_cast<double>(k + 1), -decay);
    SpectralField f = SpectralField::scalar(grid);
    const std::size_t plus = grid.flat_index(wavevectors[k - 1]);
    f.at(0, plus) = 0.5 * scale * std::polar(1.0, phase);
    f.at(0, grid.mirror(plus)) = std::conj(f.at(0, plus));
    out.push_back(f);
  }
  return out;
}

}  // namespace stocheuler
