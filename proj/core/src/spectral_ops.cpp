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

#include "stocheuler/spectral_ops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "stocheuler/error.hpp"
#include "stocheuler/fft.hpp"

namespace stocheuler {
namespace {

// i * c without a general complex multiply.
inline Complex times_i(Complex c) { return {-c.imag(), c.real()}; }

void require_vector(const SpectralField& u, const char* op) {
  if (!u.is_vector()) throw Error(ErrorKind::ShapeMismatch, std::string(op) + " needs a vector field");
}

std::vector<double> physical_of(const Grid& g, std::span<const Complex> coeffs) {
  std::vector<double> out(g.size());
  fft::inverse(g, coeffs, out);
  return out;
}

/// Physical samples of d_axis of one component.
std::vector<double> physical_derivative(const Grid& g, std::span<const Complex> coeffs, int axis) {
  std::vector<Complex> tmp(g.size());
  const double s = g.wavenumber_scale();
  for (std::size_t i = 0; i < g.size(); ++i) {
    tmp[i] = times_i((s * g.wavevector(i)[axis]) * coeffs[i]);
  }
  return physical_of(g, tmp);
}

/// Forward transform of physical products into a component, then dealias.
void store_dealiased(const Grid& g, const std::vector<double>& phys, std::span<Complex> out) {
  fft::forward(g, phys, out);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g.retained(i)) out[i] = 0.0;
  }
}

/// Dealiased but unprojected u . grad u with the mean mode zeroed, in the
/// divergence form d_j(u_i u_j) - u_i (div u). Under the 2/3 rule both this
/// and the advective form equal the truncated exact product. The correction
/// is skipped for fields flagged divergence-free.
SpectralField advective_product(const SpectralField& u) {
  require_vector(u, "nonlinear_term");
  const Grid& g = u.grid();
  const int d = g.dim();
  const std::size_t size = g.size();
  const double s = g.wavenumber_scale();
  const SpectralField ud = dealias(u);
  const auto kv = g.wavevectors();
  const auto keep = g.retained_mask();

  std::vector<std::vector<double>> vel(d);
  for (int j = 0; j < d; ++j) vel[j] = physical_of(g, ud.component(j));

  SpectralField out = SpectralField::vector(g);
  std::vector<double> prod(size);
  std::vector<Complex> flux(size);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      for (std::size_t x = 0; x < size; ++x) prod[x] = vel[i][x] * vel[j][x];
      fft::forward(g, prod, flux);
      // d_j acts on row i and d_i on row j of the symmetric flux.
      Complex* oi = out.component(i).data();
      Complex* oj = out.component(j).data();
      const Complex* fl = flux.data();
      for (std::size_t m = 0; m < size; ++m) {
        if (keep[m] == 0) continue;
        const Wavevector& k = kv[m];
        oi[m] += times_i((s * k[j]) * fl[m]);
        if (j != i) oj[m] += times_i((s * k[i]) * fl[m]);
      }
    }
  }
  if (!u.divergence_free()) {
    const auto div = physical_of(g, divergence(ud).component(0));
    for (int i = 0; i < d; ++i) {
      for (std::size_t x = 0; x < size; ++x) prod[x] = vel[i][x] * div[x];
      fft::forward(g, prod, flux);
      auto oi = out.component(i);
      for (std::size_t m = 0; m < size; ++m) {
        if (g.retained(m)) oi[m] -= flux[m];
      }
    }
  }
  for (int i = 0; i < d; ++i) out.component(i)[0] = 0.0;
  return out;
}

}  // namespace

SpectralField leray_project(const SpectralField& f) {
  require_vector(f, "leray_project");
  const Grid& g = f.grid();
  const int d = g.dim();
  SpectralField out = f;
  const auto kv = g.wavevectors();
  const auto k2v = g.integer_k2s();
  std::array<Complex*, 3> o{};
  for (int c = 0; c < d; ++c) o[c] = out.component(c).data();
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double k2 = k2v[i];
    if (k2 == 0.0) continue;
    const Wavevector& k = kv[i];
    Complex kdotu = 0.0;
    for (int c = 0; c < d; ++c) kdotu += static_cast<double>(k[c]) * o[c][i];
    const Complex q = kdotu / k2;
    for (int c = 0; c < d; ++c) o[c][i] -= static_cast<double>(k[c]) * q;
  }
  out.set_divergence_free(true);
  return out;
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  const auto keep = f.grid().retained_mask();
  for (int c = 0; c < f.components(); ++c) {
    Complex* o = out.component(c).data();
    for (std::size_t i = 0; i < keep.size(); ++i) {
      if (keep[i] == 0) o[i] = 0.0;
    }
  }
  return out;
}

SpectralField derivative(const SpectralField& f, int axis) {
  const Grid& g = f.grid();
  SpectralField out(g, f.components());
  const double s = g.wavenumber_scale();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double factor = s * g.wavevector(i)[axis];
    for (int c = 0; c < f.components(); ++c) out.at(c, i) = times_i(factor * f.at(c, i));
  }
  return out;
}

SpectralField gradient(const SpectralField& scalar) {
  if (!scalar.is_scalar()) throw Error(ErrorKind::ShapeMismatch, "gradient needs a scalar field");
  const Grid& g = scalar.grid();
  SpectralField out = SpectralField::vector(g);
  for (int a = 0; a < g.dim(); ++a) {
    const SpectralField da = derivative(scalar, a);
    std::copy(da.component(0).begin(), da.component(0).end(), out.component(a).begin());
  }
  return out;
}

SpectralField divergence(const SpectralField& u) {
  require_vector(u, "divergence");
  const Grid& g = u.grid();
  SpectralField out = SpectralField::scalar(g);
  const double s = g.wavenumber_scale();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Wavevector k = g.wavevector(i);
    Complex acc = 0.0;
    for (int c = 0; c < g.dim(); ++c) acc += times_i((s * k[c]) * u.at(c, i));
    out.at(0, i) = acc;
  }
  return out;
}

SpectralField curl(const SpectralField& u) {
  require_vector(u, "curl");
  const Grid& g = u.grid();
  const double s = g.wavenumber_scale();
  if (g.dim() == 2) {
    SpectralField w = SpectralField::scalar(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Wavevector k = g.wavevector(i);
      w.at(0, i) = times_i(s * (static_cast<double>(k[0]) * u.at(1, i) - static_cast<double>(k[1]) * u.at(0, i)));
    }
    return w;
  }
  SpectralField w = SpectralField::vector(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Wavevector k = g.wavevector(i);
    const Complex u0 = u.at(0, i), u1 = u.at(1, i), u2 = u.at(2, i);
    w.at(0, i) = times_i(s * (static_cast<double>(k[1]) * u2 - static_cast<double>(k[2]) * u1));
    w.at(1, i) = times_i(s * (static_cast<double>(k[2]) * u0 - static_cast<double>(k[0]) * u2));
    w.at(2, i) = times_i(s * (static_cast<double>(k[0]) * u1 - static_cast<double>(k[1]) * u0));
  }
  w.set_divergence_free(true);
  return w;
}

SpectralField biot_savart(const SpectralField& vorticity) {
  const Grid& g = vorticity.grid();
  const double s = g.wavenumber_scale();
  SpectralField u = SpectralField::vector(g);
  if (g.dim() == 2) {
    if (!vorticity.is_scalar()) throw Error(ErrorKind::ShapeMismatch, "2D vorticity is a scalar field");
    // u = (-d2 psi, d1 psi) with Lap psi = w, so curl u = w.
    for (std::size_t i = 1; i < g.size(); ++i) {
      const Wavevector k = g.wavevector(i);
      const double k2 = g.physical_k2(k);
      if (k2 == 0.0) continue;
      const Complex psi = -vorticity.at(0, i) / k2;
      u.at(0, i) = -times_i((s * k[1]) * psi);
      u.at(1, i) = times_i((s * k[0]) * psi);
    }
  } else {
    require_vector(vorticity, "biot_savart");
    // u = i k x w / |k|^2, so curl u = w for divergence-free w.
    for (std::size_t i = 1; i < g.size(); ++i) {
      const Wavevector k = g.wavevector(i);
      const double k2 = g.physical_k2(k);
      if (k2 == 0.0) continue;
      const double kx = s * k[0], ky = s * k[1], kz = s * k[2];
      const Complex w0 = vorticity.at(0, i), w1 = vorticity.at(1, i), w2 = vorticity.at(2, i);
      u.at(0, i) = times_i((ky * w2 - kz * w1) / k2);
      u.at(1, i) = times_i((kz * w0 - kx * w2) / k2);
      u.at(2, i) = times_i((kx * w1 - ky * w0) / k2);
    }
  }
  u.set_divergence_free(true);
  return u;
}

SpectralField mollify(const SpectralField& u, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidParams, "mollifier width must be positive");
  const Grid& g = u.grid();
  SpectralField out = u;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double factor = std::exp(-eps * g.physical_k2(g.wavevector(i)));
    for (int c = 0; c < u.components(); ++c) out.at(c, i) *= factor;
  }
  return u.is_vector() ? leray_project(out) : out;
}

double max_divergence(const SpectralField& u) {
  require_vector(u, "max_divergence");
  const Grid& g = u.grid();
  const double s = g.wavenumber_scale();
  double worst = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) {
    const Wavevector k = g.wavevector(i);
    Complex acc = 0.0;
    for (int c = 0; c < g.dim(); ++c) acc += (s * k[c]) * u.at(c, i);
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

SpectralField nonlinear_term(const SpectralField& u) { return leray_project(advective_product(u)); }

SpectralField advect_scalar(const SpectralField& u, const SpectralField& w) {
  require_vector(u, "advect_scalar");
  if (!w.is_scalar()) throw Error(ErrorKind::ShapeMismatch, "advect_scalar needs a scalar field");
  const Grid& g = u.grid();
  const SpectralField ud = dealias(u);
  const SpectralField wd = dealias(w);
  std::vector<double> acc(g.size(), 0.0);
  for (int j = 0; j < g.dim(); ++j) {
    const auto vel = physical_of(g, ud.component(j));
    const auto grad = physical_derivative(g, wd.component(0), j);
    for (std::size_t x = 0; x < g.size(); ++x) acc[x] += vel[x] * grad[x];
  }
  SpectralField out = SpectralField::scalar(g);
  store_dealiased(g, acc, out.component(0));
  out.component(0)[0] = 0.0;
  return out;
}

SpectralField stretching_minus_transport(const SpectralField& v, const SpectralField& w) {
  require_vector(v, "stretching_minus_transport");
  require_vector(w, "stretching_minus_transport");
  const Grid& g = v.grid();
  if (g.dim() != 3) throw Error(ErrorKind::ShapeMismatch, "vortex stretching is three-dimensional");
  const SpectralField vd = dealias(v);
  const SpectralField wd = dealias(w);
  std::vector<std::vector<double>> vp(3), wp(3);
  for (int c = 0; c < 3; ++c) {
    vp[c] = physical_of(g, vd.component(c));
    wp[c] = physical_of(g, wd.component(c));
  }
  SpectralField cross = SpectralField::vector(g);
  std::vector<double> acc(g.size());
  for (int c = 0; c < 3; ++c) {
    const int a = (c + 1) % 3, b = (c + 2) % 3;
    for (std::size_t x = 0; x < g.size(); ++x) acc[x] = vp[a][x] * wp[b][x] - vp[b][x] * wp[a][x];
    store_dealiased(g, acc, cross.component(c));
  }
  return leray_project(curl(cross));
}

SpectralField pointwise_product(const SpectralField& a, const SpectralField& b) {
  const Grid& g = a.grid();
  if (!(g == b.grid())) throw Error(ErrorKind::ShapeMismatch, "pointwise_product grids differ");
  const SpectralField& scalar = a.is_scalar() ? a : b;
  const SpectralField& other = a.is_scalar() ? b : a;
  if (!scalar.is_scalar()) throw Error(ErrorKind::ShapeMismatch, "pointwise_product needs a scalar factor");
  const auto sp = physical_of(g, dealias(scalar).component(0));
  const SpectralField od = dealias(other);
  SpectralField out(g, other.components());
  std::vector<double> acc(g.size());
  for (int c = 0; c < other.components(); ++c) {
    const auto op = physical_of(g, od.component(c));
    for (std::size_t x = 0; x < g.size(); ++x) acc[x] = sp[x] * op[x];
    store_dealiased(g, acc, out.component(c));
  }
  return out;
}

double inner_product(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid()) || a.components() != b.components()) {
    throw Error(ErrorKind::ShapeMismatch, "inner_product operands differ in shape");
  }
  double acc = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) acc += (da[i] * std::conj(db[i])).real();
  return acc * a.grid().volume();
}

double l2_norm(const SpectralField& u) { return std::sqrt(std::max(0.0, inner_product(u, u))); }

double l2_norm_quadrature(const SpectralField& u) {
  const PhysicalField p = u.to_physical();
  double acc = 0.0;
  for (double v : p.values) acc += v * v;
  return std::sqrt(acc * u.grid().cell_volume());
}

double sup_norm(const SpectralField& u) {
  const PhysicalField p = u.to_physical();
  double worst = 0.0;
  for (std::size_t x = 0; x < u.grid().size(); ++x) {
    double s = 0.0;
    for (int c = 0; c < u.components(); ++c) s += p.component(c)[x] * p.component(c)[x];
    worst = std::max(worst, s);
  }
  return std::sqrt(worst);
}

namespace {

void enumerate_multi_indices(int dim, int max_order, std::vector<Wavevector>& out) {
  for (int a = 0; a <= max_order; ++a) {
    for (int b = 0; a + b <= max_order; ++b) {
      if (dim == 2) {
        out.push_back({a, b, 0});
        continue;
      }
      for (int c = 0; a + b + c <= max_order; ++c) out.push_back({a, b, c});
    }
  }
}

double w1inf_norm(const SpectralField& u) {
  const Grid& g = u.grid();
  const int d = g.dim();
  const int nc = u.components();
  std::vector<std::vector<double>> val(nc);
  std::vector<std::vector<double>> grad(static_cast<std::size_t>(nc * d));
  for (int c = 0; c < nc; ++c) {
    val[c] = physical_of(g, u.component(c));
    for (int j = 0; j < d; ++j) grad[c * d + j] = physical_derivative(g, u.component(c), j);
  }
  double worst = 0.0;
  for (std::size_t x = 0; x < g.size(); ++x) {
    double v2 = 0.0, g2 = 0.0;
    for (int c = 0; c < nc; ++c) {
      v2 += val[c][x] * val[c][x];
      for (int j = 0; j < d; ++j) g2 += grad[c * d + j][x] * grad[c * d + j][x];
    }
    worst = std::max(worst, std::sqrt(v2) + std::sqrt(g2));
  }
  return worst;
}

}  // namespace

double sobolev_norm(const SpectralField& u, const NormRequest& req) {
  if (req.m < 0) throw Error(ErrorKind::UnsupportedNorm, "derivative order m must be >= 0");
  if (req.is_sup()) {
    if (req.m == 0) return sup_norm(u);
    if (req.m == 1) return w1inf_norm(u);
    throw Error(ErrorKind::UnsupportedNorm, "sup norms are available for m in {0, 1} only");
  }
  if (!(req.p >= 2.0) || !std::isfinite(req.p)) {
    throw Error(ErrorKind::UnsupportedNorm, "integrability exponent p must be >= 2");
  }
  const Grid& g = u.grid();
  std::vector<Wavevector> alphas;
  enumerate_multi_indices(g.dim(), req.m, alphas);
  const double s = g.wavenumber_scale();
  std::vector<Complex> tmp(g.size());
  std::vector<double> mag2(g.size());
  double total = 0.0;
  for (const Wavevector& alpha : alphas) {
    std::fill(mag2.begin(), mag2.end(), 0.0);
    for (int c = 0; c < u.components(); ++c) {
      const auto comp = u.component(c);
      const int order = alpha[0] + alpha[1] + alpha[2];
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Wavevector k = g.wavevector(i);
        double factor = 1.0;
        for (int a = 0; a < g.dim(); ++a) {
          for (int r = 0; r < alpha[a]; ++r) factor *= s * k[a];
        }
        Complex v = factor * comp[i];
        for (int r = 0; r < order % 4; ++r) v = times_i(v);
        tmp[i] = v;
      }
      const auto phys = physical_of(g, tmp);
      for (std::size_t x = 0; x < g.size(); ++x) mag2[x] += phys[x] * phys[x];
    }
    double acc = 0.0;
    if (req.p == 2.0) {
      for (double m2 : mag2) acc += m2;
    } else {
      for (double m2 : mag2) acc += std::pow(m2, 0.5 * req.p);
    }
    total += acc * g.cell_volume();
  }
  return std::pow(total, 1.0 / req.p);
}

SpectralField pressure(const SpectralField& u) {
  const SpectralField div = divergence(advective_product(u));
  const Grid& g = u.grid();
  SpectralField pi = SpectralField::scalar(g);
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double k2 = g.physical_k2(g.wavevector(i));
    if (k2 > 0.0) pi.at(0, i) = div.at(0, i) / k2;
  }
  return pi;
}

double cutoff_theta(double x, double R) {
  if (!(R > 0.0)) throw Error(ErrorKind::InvalidParams, "cut-off level R must be positive");
  const auto q = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double upper = q((2.0 * R - x) / R);
  const double lower = q((x - R) / R);
  return upper / (upper + lower);
}

BkmBound bkm_upper_bound(const SpectralField& u, int m, int p, double C2) {
  BkmBound out;
  out.l2 = l2_norm(u);
  out.vorticity_sup = sup_norm(curl(u));
  out.sobolev = sobolev_norm(u, {m, static_cast<double>(p)});
  if (out.vorticity_sup < 1e-14) {
    out.degenerate_vorticity = true;
    out.value = C2 * out.l2;
    return out;
  }
  const double log_plus = std::max(0.0, std::log(out.sobolev / out.vorticity_sup));
  out.value = C2 * out.l2 + C2 * out.vorticity_sup * (1.0 + log_plus);
  return out;
}

}  // namespace stocheuler
