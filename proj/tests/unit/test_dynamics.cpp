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

#include <cmath>

#include "stocheuler/dynamics.hpp"
#include "stocheuler/error.hpp"
#include "stocheuler/fields.hpp"
#include "stocheuler/spectral_ops.hpp"
#include "stocheuler/trajectory.hpp"

namespace se = stocheuler;

namespace {

double max_abs_diff(const se::SpectralField& a, const se::SpectralField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

se::SpectralField shear(const se::Grid& g) {
  return se::sample_field(g, g.dim(), [](const auto& x) { return std::array<double, 3>{std::sin(x[1]), 0.0, 0.0}; });
}

}  // namespace

TEST(StepEm, ZeroStaysZero) {
  const se::Grid g(2, 16);
  const se::SimState s = se::SimState::initial(se::SpectralField::vector(g), 0);
  const se::SimState next = se::step_em(s, 0.01, se::NoiseModel::none(), std::span<const double>{});
  EXPECT_EQ(se::l2_norm(next.u), 0.0);
  EXPECT_DOUBLE_EQ(next.t, 0.01);
  EXPECT_EQ(next.step_index, 1);
}

TEST(StepEm, DeterministicStepIsEulerUpdate) {
  const se::Grid g(2, 32);
  const se::SpectralField u = se::taylor_green(g);
  const double dt = 1e-3;
  const se::SimState next =
      se::step_em(se::SimState::initial(u, 0), dt, se::NoiseModel::none(), std::span<const double>{});
  EXPECT_LT(max_abs_diff(next.u, u - dt * se::nonlinear_term(u)), 1e-13);
}

TEST(StepEm, AdditiveNoiseFromRest) {
  const se::Grid g(2, 16);
  const auto sigma = se::decaying_vector_modes(g, 3, 0.5, 1.0, 1);
  const se::NoiseModel m = se::NoiseModel::additive(sigma);
  const std::vector<double> dW{0.3, -0.1, 0.2};
  const se::SimState next = se::step_em(se::SimState::initial(se::SpectralField::vector(g), 3), 0.01, m, dW);
  se::SpectralField expect = se::SpectralField::vector(g);
  for (int k = 0; k < 3; ++k) expect.axpy(dW[k], sigma[k]);
  EXPECT_LT(max_abs_diff(next.u, expect), 1e-15);
  EXPECT_EQ(next.w_accum, dW);
}

TEST(StepEm, TracksGammaAndRaisesCfl) {
  const se::Grid g(2, 16);
  const se::NoiseModel m = se::NoiseModel::linear_multiplicative(0.8);
  se::SimState s = se::SimState::initial(se::taylor_green(g), 1);
  const se::BrownianDriver d(1, 1);
  for (int i = 0; i < 50; ++i) {
    s = se::step_em(s, 1e-3, m, d, 0);
    EXPECT_NEAR(s.gamma, std::exp(-0.8 * s.w_accum[0]), 1e-12 * s.gamma);
    EXPECT_LE(se::max_divergence(s.u), 1e-10 * se::l2_norm(s.u));
  }
  EXPECT_THROW(se::step_em(s, 10.0, m, d, 0), se::Error);
}

TEST(StepTransformed, PureDampingOfShear) {
  const se::Grid g(2, 16);
  const se::SpectralField v0 = shear(g);
  const double alpha = 1.3, dt = 0.005;
  se::SimState s = se::SimState::initial(v0, 1);
  for (int i = 0; i < 200; ++i) s = se::step_transformed(s, dt, alpha, 1.0);
  EXPECT_LT(max_abs_diff(s.u, std::exp(-alpha * alpha * 1.0 / 2) * v0), 1e-10);
}

TEST(StepTransformed, ZeroAlphaIsDeterministicStep) {
  const se::Grid g(2, 32);
  const se::SpectralField u = se::taylor_green(g);
  const se::SimState s = se::SimState::initial(u, 1);
  const se::SimState a = se::step_transformed(s, 1e-3, 0.0, 1.0);
  se::StepOptions rk;
  rk.drift = se::DriftScheme::RK4;
  const se::SimState b = se::step_em(s, 1e-3, se::NoiseModel::none(), std::span<const double>{}, rk);
  EXPECT_LT(max_abs_diff(a.u, b.u), 1e-14);
}

TEST(Cutoff, MatchesStepEmBelowR) {
  const se::Grid g(2, 16);
  const se::NoiseModel m = se::NoiseModel::additive(se::decaying_vector_modes(g, 2, 0.1, 1.0, 1));
  const se::BrownianDriver d(3, 2);
  se::SimState a = se::SimState::initial(0.1 * se::taylor_green(g), 2), b = a;
  for (int i = 0; i < 20; ++i) {
    a = se::step_em(a, 1e-3, m, d, 0);
    b = se::step_cutoff_galerkin(b, 1e-3, 100.0, m, d, 0);
    ASSERT_TRUE(a.u == b.u) << "step " << i;
  }
}

TEST(Cutoff, FreezesAboveTwoR) {
  const se::Grid g(2, 16);
  const se::NoiseModel m = se::NoiseModel::additive(se::decaying_vector_modes(g, 2, 0.1, 1.0, 1));
  const se::SimState s = se::SimState::initial(se::taylor_green(g), 2);
  const std::vector<double> dW{0.5, 0.5};
  const se::SimState next = se::step_cutoff_galerkin(s, 1e-3, 0.1, m, dW);
  EXPECT_TRUE(next.u == s.u);
}

TEST(Vorticity2d, ConstantUnchangedAndMeanPreserved) {
  const se::Grid g(2, 16);
  se::SpectralField c = se::SpectralField::scalar(g);
  c.at(0, 0) = 0.7;
  EXPECT_TRUE(se::step_vorticity_2d(c, 0.01) == c);

  se::SpectralField w = se::curl(se::random_divergence_free(g, 3));
  w.at(0, 0) = 0.25;
  for (int i = 0; i < 10; ++i) w = se::step_vorticity_2d(w, 0.01);
  EXPECT_NEAR(w.at(0, 0).real(), 0.25, 1e-15);
}

TEST(Vorticity2d, DampedSupDecays) {
  const se::Grid g(2, 32);
  const double alpha = 2.0, dt = 5e-3;
  se::SpectralField w = se::curl(se::random_divergence_free(g, 8));
  const double w0 = se::sup_norm(w);
  for (int i = 1; i <= 100; ++i) {
    se::VorticityStep p;
    p.alpha = alpha;
    w = se::step_vorticity_2d(w, dt, p);
    EXPECT_LE(se::sup_norm(w), 1.02 * w0 * std::exp(-alpha * alpha * i * dt / 2));
  }
}

TEST(Vorticity3d, ZeroAndSolenoidal) {
  const se::Grid g(3, 16);
  EXPECT_EQ(se::l2_norm(se::step_vorticity_3d(se::SpectralField::vector(g), 0.01)), 0.0);
  const se::SpectralField w = se::step_vorticity_3d(se::curl(se::random_divergence_free(g, 2)), 0.01, 1.0);
  EXPECT_LT(se::max_divergence(w), 1e-10 * se::l2_norm(w));
}

TEST(Vorticity3d, CurlOfVelocityStepAgreesToSecondOrder) {
  const se::Grid g(3, 16);
  const se::SpectralField u = se::dealias(se::random_divergence_free(g, 5, 3));
  se::StepOptions rk;
  rk.drift = se::DriftScheme::RK4;
  std::vector<double> err;
  for (double dt : {4e-3, 2e-3}) {
    const se::SimState s = se::step_em(se::SimState::initial(u, 0), dt, se::NoiseModel::none(), {}, rk);
    err.push_back(se::l2_norm(se::curl(s.u) - se::step_vorticity_3d(se::curl(u), dt)));
  }
  // Both are RK4; they agree far below the O(dt^2) budget.
  EXPECT_LT(err[0], 1e-6);
  EXPECT_LT(err[1], 1e-6);
}

TEST(Trajectory, ZeroHorizonIsEmpty) {
  se::TrajectoryConfig c;
  c.integrator.T = 0.0;
  c.rules = {se::StoppingRule::parse("w1inf:1")};
  const auto d = se::integrate_trajectory(c, se::BrownianDriver(0, 0), 0);
  EXPECT_EQ(d.samples(), 0u);
  EXPECT_TRUE(d.hits.empty());
}

TEST(Trajectory, FirstHittingAndMonotoneLevels) {
  se::TrajectoryConfig c;
  c.grid = se::Grid(2, 16);
  c.noise.kind = se::NoiseKind::LinearMultiplicative;
  c.noise.alpha = 1.0;
  c.integrator.dt = 5e-3;
  c.integrator.T = 1.0;
  const se::BrownianDriver d(11, 1);
  double prev_time = 0.0;
  for (double level : {1.2, 1.5, 2.0}) {
    c.rules = {se::StoppingRule::parse("w1inf:" + std::to_string(level) + ":record")};
    const auto r = se::integrate_trajectory(c, d, 3);
    ASSERT_EQ(r.time.size(), r.w1inf.size());
    ASSERT_EQ(r.time.size(), r.gamma.size());
    if (r.hits.empty()) continue;
    const auto& h = r.hits.front();
    for (std::size_t i = 0; i < r.time.size() && r.time[i] < h.time; ++i) EXPECT_LT(r.w1inf[i], level);
    EXPECT_GE(h.value, level);
    EXPECT_GE(h.time, prev_time);
    prev_time = h.time;
  }
}

TEST(Trajectory, DeterministicEnergyConservation) {
  se::TrajectoryConfig c;
  c.grid = se::Grid(2, 32);
  c.integrator.kind = se::IntegratorKind::RK4EM;
  c.integrator.dt = 5e-3;
  c.integrator.T = 0.5;
  c.initial.kind = se::InitialCondition::Kind::Random;
  c.initial.seed = 4;
  const auto d = se::integrate_trajectory(c, se::BrownianDriver(0, 0), 0);
  EXPECT_EQ(d.termination, se::Termination::Completed);
  EXPECT_LT(std::abs(d.l2.back() * d.l2.back() / (d.l2.front() * d.l2.front()) - 1.0), 1e-8);
}

TEST(Trajectory, TransformResidualShrinksWithDt) {
  se::TrajectoryConfig c;
  c.grid = se::Grid(2, 16);
  c.noise.kind = se::NoiseKind::LinearMultiplicative;
  c.noise.alpha = 1.0;
  c.integrator.T = 0.2;
  c.track_transform = true;
  const se::BrownianDriver d(2, 1);
  c.integrator.dt = 4e-3;
  const double coarse = se::integrate_trajectory(c, d, 0).transform_residual.back();
  c.integrator.dt = 1e-3;
  const double fine = se::integrate_trajectory(c, d, 0).transform_residual.back();
  EXPECT_LT(fine, coarse);
}

TEST(Trajectory, RejectsInconsistentConfigs) {
  se::TrajectoryConfig c;
  c.grid = se::Grid(2, 16);
  c.integrator.kind = se::IntegratorKind::Transformed;
  c.noise.kind = se::NoiseKind::Additive;
  c.noise.K = 2;
  EXPECT_THROW(se::integrate_trajectory(c, se::BrownianDriver(0, 2), 0), se::Error);
  c.integrator.kind = se::IntegratorKind::EulerMaruyama;
  EXPECT_THROW(se::integrate_trajectory(c, se::BrownianDriver(0, 3), 0), se::Error);
}

TEST(StoppingRule, ParseAndName) {
  const auto r = se::StoppingRule::parse("sobolev:2:4:7.5:record");
  EXPECT_EQ(r.kind, se::StoppingRule::Kind::SobolevThreshold);
  EXPECT_EQ(r.norm.m, 2);
  EXPECT_EQ(r.norm.p, 4.0);
  EXPECT_EQ(r.level, 7.5);
  EXPECT_FALSE(r.stop_on_hit);
  EXPECT_EQ(se::StoppingRule::parse(r.name()).level, 7.5);
  EXPECT_THROW(se::StoppingRule::parse("w1inf:-1"), se::Error);
  EXPECT_THROW(se::StoppingRule::parse("bogus:1"), se::Error);
}
