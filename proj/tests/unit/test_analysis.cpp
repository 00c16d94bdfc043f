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

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cmath>
#include <random>

#include "stocheuler/error.hpp"
#include "stocheuler/frac_sobolev.hpp"
#include "stocheuler/gbm.hpp"
#include "stocheuler/log_gronwall.hpp"
#include "stocheuler/ode_lemma.hpp"
#include "stocheuler/wilson.hpp"

namespace se = stocheuler;
using mp = boost::multiprecision::cpp_dec_float_50;

namespace {

// log K evaluated in 50-digit arithmetic straight from the formula.
double log_K_oracle(double R_, double alpha_, double Cbar_, double dr = 4.0) {
  const mp R = R_, a2 = mp(alpha_) * alpha_, C = Cbar_;
  const mp D = exp(mp(dr) * C * R);
  const mp base = a2 / (8 * C);
  const mp power = 1 - 1 / (8 * (D - 1));
  const mp logK = log(2 * R * (1 + pow(base, power))) + 8 * C * R * D * (C + a2) / a2;
  return static_cast<double>(logK);
}

// Fraction of exactly sampled GBM paths reaching R on the time grid.
double gbm_oracle(const se::GbmParams& p, double T, double dt, int n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> z;
  const int steps = static_cast<int>(std::llround(T / dt));
  const double drift = (p.mu - 0.5 * p.alpha * p.alpha) * dt, vol = p.alpha * std::sqrt(dt);
  const double target = std::log(p.R / p.x0);
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    double y = 0.0;
    for (int s = 0; s < steps; ++s) {
      y += drift + vol * z(rng);
      if (y >= target) {
        ++hits;
        break;
      }
    }
  }
  return double(hits) / n;
}

}  // namespace

TEST(Gbm, SurvivalBoundClosedForms) {
  se::GbmParams p;
  p.alpha = 1.0;
  p.mu = 3.0 / 8.0;
  EXPECT_DOUBLE_EQ(se::gbm_critical_exponent(p), 0.25);
  for (double R : {2.0, 16.0, 81.0}) {
    p.R = R;
    EXPECT_NEAR(se::gbm_survival_bound(p), 1.0 - std::pow(R, -0.25), 1e-15);
  }
  p.R = 1e12;
  EXPECT_GT(se::gbm_survival_bound(p), 0.99);

  se::GbmParams q{0.0, 1.0, 1.0, 4.0};
  EXPECT_DOUBLE_EQ(se::gbm_survival_bound(q), 0.75);
  q.x0 = 2.0;
  q.R = 10.0;
  EXPECT_DOUBLE_EQ(se::gbm_survival_bound(q), 1.0 - 2.0 / 10.0);
}

TEST(Gbm, InvalidParameters) {
  EXPECT_THROW(se::gbm_survival_bound({0.5, 1.0, 1.0, 16.0}), se::Error);
  EXPECT_THROW(se::gbm_survival_bound({0.1, 1.0, 1.0, 1.0}), se::Error);
  EXPECT_THROW(se::gbm_survival_bound({0.1, 0.0, 1.0, 16.0}), se::Error);
  EXPECT_THROW(se::gbm_survival_bound({0.1, 1.0, -1.0, 16.0}), se::Error);
}

TEST(Gbm, MonteCarloEdgeCasesAndThreadIndependence) {
  const se::GbmExitEstimate all = se::gbm_exit_mc({0.1, 1.0, 2.0, 1.5}, 1.0, 0.01, 100, 1);
  EXPECT_EQ(all.n_hit, 100u);
  EXPECT_EQ(all.p_hit, 1.0);
  const se::GbmParams p{0.375, 1.0, 1.0, 4.0};
  const auto a = se::gbm_exit_mc(p, 5.0, 0.01, 2000, 9, 1);
  const auto b = se::gbm_exit_mc(p, 5.0, 0.01, 2000, 9, 3);
  EXPECT_EQ(a.n_hit, b.n_hit);
  EXPECT_TRUE(a.interval.contains(a.p_hit));
}

TEST(Gbm, AgreesWithIndependentMonteCarlo) {
  const se::GbmParams p{0.375, 1.0, 1.0, 4.0};
  const int n = 20000;
  const auto est = se::gbm_exit_mc(p, 20.0, 0.01, n, 3);
  const double oracle = gbm_oracle(p, 20.0, 0.01, n, 77);
  const double se_diff = std::sqrt(2.0 * oracle * (1 - oracle) / n);
  EXPECT_LT(std::abs(est.p_hit - oracle), 4.0 * se_diff) << est.p_hit << " vs " << oracle;
  // Never meaningfully above the analytic hit bound 4^-1/4.
  EXPECT_LE(est.interval.lower, 1.0 - se::gbm_survival_bound(p));
}

TEST(Wilson, KnownValuesAndOrdering) {
  const se::Interval i = se::wilson_interval(50, 100, 0.95);
  EXPECT_NEAR(i.lower, 0.40383, 1e-4);
  EXPECT_NEAR(i.upper, 0.59617, 1e-4);
  const se::Interval z = se::wilson_interval(0, 40);
  EXPECT_EQ(z.lower, 0.0);
  EXPECT_GT(z.upper, 0.0);
  const se::Interval f = se::wilson_interval(40, 40);
  EXPECT_EQ(f.upper, 1.0);
  EXPECT_NEAR(se::normal_quantile_two_sided(0.99), 2.5758293035489, 1e-10);
}

TEST(LogGronwall, IdentitiesAndShape) {
  EXPECT_DOUBLE_EQ(se::log_gronwall_functions(1.0).zeta, 1.0);
  for (double x : {1.0, 2.0, 5.0, 10.0, 100.0}) {
    const auto v = se::log_gronwall_functions(x);
    EXPECT_NEAR(v.Phi_prime * (x * v.zeta + 1.0), v.Phi, 1e-9 * v.Phi);
    EXPECT_GT(v.Phi_prime, 0.0);
    EXPECT_LT(v.Phi_double_prime, 0.0);
  }
  EXPECT_THROW(se::log_gronwall_functions(0.5), se::Error);
  EXPECT_THROW(se::log_gronwall_functions(std::nan("")), se::Error);
}

TEST(LogGronwall, FiniteDifferenceDerivatives) {
  const double h = 1e-4;
  for (double x : {1.0, 2.0, 5.0, 10.0, 100.0}) {
    const auto v = se::log_gronwall_functions(x);
    double fd = 0.0, fd2 = 0.0;
    if (x - h >= 1.0) {
      fd = (se::log_gronwall_functions(x + h).Phi - se::log_gronwall_functions(x - h).Phi) / (2 * h);
      fd2 = (se::log_gronwall_functions(x + h).Phi_prime - se::log_gronwall_functions(x - h).Phi_prime) / (2 * h);
    } else {
      // One-sided second-order stencil at the domain edge.
      const auto a = se::log_gronwall_functions(x + h), b = se::log_gronwall_functions(x + 2 * h);
      fd = (-3 * v.Phi + 4 * a.Phi - b.Phi) / (2 * h);
      fd2 = (-3 * v.Phi_prime + 4 * a.Phi_prime - b.Phi_prime) / (2 * h);
    }
    EXPECT_NEAR(fd, v.Phi_prime, 1e-6 * std::max(1.0, v.Phi_prime)) << "x = " << x;
    EXPECT_NEAR(fd2, v.Phi_double_prime, 1e-6 * std::max(1.0, std::abs(v.Phi_double_prime))) << "x = " << x;
  }
}

TEST(KappaK, MatchesHighPrecisionOracle) {
  for (double R : {1.0, 2.0, 3.5}) {
    for (double a : {0.5, 1.0, 4.0}) {
      for (double C : {1.0, 2.0}) {
        const se::KappaK k = se::kappa_K(R, a, C);
        const double oracle = log_K_oracle(R, a, C);
        EXPECT_NEAR(k.log_K, oracle, 1e-12 * std::abs(oracle));
        EXPECT_NEAR(k.log_kappa, std::log(a * a / (2 * C)) - oracle, 1e-12 * std::abs(oracle));
      }
    }
  }
  // R = 1, alpha = 1: K itself overflows, so compare the logarithm.
  EXPECT_NEAR(se::kappa_K(1.0, 1.0).log_K, log_K_oracle(1.0, 1.0, 1.0), 1e-10 * 874.0);
  EXPECT_NEAR(se::kappa_K(0.0 + 1.0, 1.0, 1.0, 2.0).log_K, log_K_oracle(1.0, 1.0, 1.0, 2.0), 1e-9);
}

TEST(KappaK, OrderingAndLimits) {
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double R = 1.0 + 0.25 * i, a2 = std::pow(10.0, -2.0 + 0.3 * j);
      EXPECT_GE(se::kappa_K(R, std::sqrt(a2)).log_K, std::log(2.0));
    }
  }
  double prev = -INFINITY;
  for (double a2 : {1.0, 10.0, 1e2, 1e3, 1e4}) {
    const double lk = se::kappa_K(1.0, std::sqrt(a2)).log_kappa;
    EXPECT_GT(lk, prev);
    prev = lk;
  }
  prev = INFINITY;
  double prev_K = -INFINITY;
  for (double R : {1.0, 2.0, 4.0, 8.0}) {
    const auto k = se::kappa_K(R, 1.0);
    EXPECT_LT(k.log_kappa, prev);
    EXPECT_GT(k.log_K, prev_K);
    prev = k.log_kappa;
    prev_K = k.log_K;
  }
  prev = INFINITY;
  for (int j = 0; j <= 4; ++j) {
    const double lk = se::kappa_K(1.0, std::sqrt(std::pow(10.0, -j))).log_kappa;
    EXPECT_LT(lk, prev);
    prev = lk;
  }
  const auto flags = se::kappa_K(1.0, 1.0);
  EXPECT_TRUE(flags.K_overflow);
  EXPECT_TRUE(flags.kappa_underflow);
  EXPECT_EQ(flags.kappa, 0.0);
  EXPECT_THROW(se::kappa_K(0.5, 1.0), se::Error);
  EXPECT_THROW(se::kappa_K(1.0, 0.0), se::Error);
  EXPECT_THROW(se::kappa_K(1.0, 1.0, 0.5), se::Error);
}

TEST(OdeLemma, ZeroProfileClosedForm) {
  for (double R : {1.0, 2.0}) {
    for (double a2 : {1.0, 4.0}) {
      se::OdeLemmaParams p;
      p.R = R;
      p.alpha = std::sqrt(a2);
      p.z_profile = "zero";
      p.log_y0 = se::kappa_K(R, p.alpha).log_kappa;
      const auto r = se::ode_bound_check(p, 0.05);
      const double growth = 8.0 * R * (1.0 + a2) / a2 * (1.0 - std::exp(-a2 * r.T_end / 8.0));
      EXPECT_NEAR(r.log_y.back() - p.log_y0, growth, 1e-7 * growth);
      EXPECT_TRUE(r.bound_satisfied);
      EXPECT_TRUE(r.admissible);
    }
  }
}

TEST(OdeLemma, ExtremalSweepSatisfiesBound) {
  for (double R : {1.0, 2.0, 4.0}) {
    for (double a2 : {1.0, 4.0, 16.0}) {
      se::OdeLemmaParams p;
      p.R = R;
      p.alpha = std::sqrt(a2);
      p.log_y0 = se::kappa_K(R, p.alpha).log_kappa;
      const auto r = se::ode_bound_check(p, 0.05);
      EXPECT_TRUE(r.bound_satisfied) << R << " " << a2;
      EXPECT_GE(r.margin, 0.0);
      EXPECT_NEAR(r.log_bound, std::log(a2 / (8 * R)), 1e-15);
    }
  }
}

TEST(OdeLemma, TinyAndViolatingInitialData) {
  se::OdeLemmaParams p;
  p.with_y0(1e-30);
  EXPECT_TRUE(se::ode_bound_check(p, 0.05).bound_satisfied);
  p.with_y0(1.0);
  const auto r = se::ode_bound_check(p, 0.05);
  EXPECT_FALSE(r.admissible);
  EXPECT_FALSE(r.bound_satisfied);
  EXPECT_THROW(p.with_y0(0.0), se::Error);
  EXPECT_THROW(se::make_z_profile("sideways", 1.0), se::Error);
  EXPECT_DOUBLE_EQ(se::make_z_profile("fraction:0.5", 2.0)(3.0), 0.5);
}

TEST(FracSobolev, ConstantSeriesHasNoSeminorm) {
  const std::vector<double> c(50, 2.0);
  const auto r = se::frac_time_sobolev_norm(c, 0.02, 0.3, 2.0);
  EXPECT_EQ(r.seminorm_q, 0.0);
  EXPECT_NEAR(r.lq_q, 4.0 * 50 * 0.02, 1e-12);
  const std::vector<double> short_series(3, 1.0);
  EXPECT_THROW(se::frac_time_sobolev_norm(short_series, 0.1, 0.3, 2.0), se::Error);
  EXPECT_THROW(se::frac_time_sobolev_norm(c, 0.1, 1.5, 2.0), se::Error);
}

TEST(FracSobolev, RampConvergesToClosedForm) {
  // int_0^1 int_0^1 |t - s|^{1/2} ds dt = 8 / 15.
  double prev_err = INFINITY;
  for (int n : {100, 400, 1600}) {
    const double dt = 1.0 / n;
    std::vector<double> ramp(n);
    for (int i = 0; i < n; ++i) ramp[i] = (i + 0.5) * dt;
    const double err = std::abs(se::frac_time_sobolev_norm(ramp, dt, 0.25, 2.0).seminorm_q - 8.0 / 15.0);
    EXPECT_LT(err, prev_err);
    prev_err = err;
  }
  EXPECT_LT(prev_err, 1e-3);
}

TEST(FracSobolev, BrownianPathRefinementTrend) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  const int fine = 2048;
  std::vector<double> w(fine + 1, 0.0);
  for (int i = 1; i <= fine; ++i) w[i] = w[i - 1] + std::sqrt(1.0 / fine) * z(rng);
  auto at_level = [&](int n, double a) {
    std::vector<double> s;
    for (int i = 0; i <= fine; i += fine / n) s.push_back(w[i]);
    return se::frac_time_sobolev_norm(s, 1.0 / n, a, 2.0).seminorm_q;
  };
  const double low_a = at_level(2048, 0.25) / at_level(256, 0.25);
  const double high_a = at_level(2048, 0.75) / at_level(256, 0.75);
  EXPECT_LT(low_a, 1.3);
  EXPECT_GT(high_a, 2.0);
}
