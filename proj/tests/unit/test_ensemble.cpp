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

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "stocheuler/ensemble.hpp"
#include "stocheuler/error.hpp"
#include "stocheuler/parallel.hpp"
#include "stocheuler/persist.hpp"

namespace se = stocheuler;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("stocheuler_test_" + name);
  fs::remove_all(p);
  return p;
}

se::EnsembleConfig small_pde_ensemble() {
  se::EnsembleConfig e;
  e.trajectory.grid = se::Grid(2, 16);
  e.trajectory.noise.kind = se::NoiseKind::LinearMultiplicative;
  e.trajectory.noise.alpha = 1.0;
  e.trajectory.integrator.dt = 5e-3;
  e.trajectory.integrator.T = 0.2;
  e.trajectory.rules = {se::StoppingRule::parse("w1inf:1.6")};
  e.n_paths = 12;
  e.master_seed = 5;
  return e;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Parallel, VisitsEveryIndexAndRethrows) {
  std::vector<int> seen(1000, 0);
  se::parallel_for(seen.size(), 4, [&](std::size_t i) { seen[i] += 1; });
  for (int s : seen) EXPECT_EQ(s, 1);
  EXPECT_THROW(se::parallel_for(10, 3, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
  EXPECT_GE(se::effective_threads(8), 1);
}

TEST(Ensemble, DeterministicSinglePathSurvives) {
  se::EnsembleConfig e;
  e.trajectory.grid = se::Grid(2, 16);
  e.trajectory.initial.amplitude = 0.1;
  e.trajectory.integrator.T = 0.1;
  e.trajectory.rules = {se::StoppingRule::parse("w1inf:10")};
  e.n_paths = 1;
  const auto s = se::run_ensemble(e);
  EXPECT_EQ(s.survival_fraction, 1.0);
  EXPECT_EQ(s.n_survived, 1u);
  EXPECT_EQ(s.mode, "dynamics");
}

TEST(Ensemble, IndependentOfParallelWidth) {
  se::EnsembleConfig e = small_pde_ensemble();
  e.parallel_width = 1;
  const auto a = se::run_ensemble(e);
  e.parallel_width = 4;
  const auto b = se::run_ensemble(e);
  EXPECT_TRUE(a == b);
  EXPECT_EQ(se::summary_to_json(a).dump(), se::summary_to_json(b).dump());
  EXPECT_LE(a.n_survived, a.n_paths);
  EXPECT_TRUE(a.wilson_99.contains(a.survival_fraction));
}

TEST(Ensemble, WritesPerPathRecords) {
  se::EnsembleConfig e = small_pde_ensemble();
  e.n_paths = 3;
  e.output_dir = scratch("paths").string();
  se::run_ensemble(e);
  for (int id = 0; id < 3; ++id) {
    const auto d = se::read_trajectory_csv((fs::path(e.output_dir) / "paths" / (std::to_string(id) + ".csv")).string());
    EXPECT_EQ(d.trajectory_id, std::uint64_t(id));
    EXPECT_GT(d.samples(), 0u);
  }
  fs::remove_all(e.output_dir);
}

TEST(Ensemble, GbmSurrogateNearHalf) {
  se::EnsembleConfig e;
  e.gbm_surrogate = true;
  e.trajectory.noise.kind = se::NoiseKind::LinearMultiplicative;
  e.trajectory.noise.alpha = 1.0;
  e.trajectory.integrator.dt = 1e-2;
  e.trajectory.integrator.T = 200.0;
  // Levels are checked at every recorded sample.
  e.trajectory.sample_every = 1;
  e.trajectory.rules = {se::StoppingRule::parse("gbm:16")};
  e.n_paths = 4000;
  e.parallel_width = 2;
  const auto s = se::run_ensemble(e);
  EXPECT_EQ(s.mode, "gbm_surrogate");
  ASSERT_TRUE(s.analytic_bound.has_value());
  EXPECT_DOUBLE_EQ(*s.analytic_bound, 0.5);
  const double hit = 1.0 - s.survival_fraction;
  EXPECT_GT(hit, 0.44);
  EXPECT_LT(hit, 0.53);
  EXPECT_EQ(s.histograms.size(), 1u);
  EXPECT_EQ(s.histograms[0].hits, s.n_paths - s.n_survived);
}

TEST(Ensemble, ConfigFailuresAreIsolatedAndFlagged) {
  se::EnsembleConfig e = small_pde_ensemble();
  e.trajectory.integrator.kind = se::IntegratorKind::Transformed;
  e.trajectory.noise.kind = se::NoiseKind::Additive;
  e.trajectory.noise.K = 2;
  e.n_paths = 4;
  const auto s = se::run_ensemble(e);
  EXPECT_EQ(s.n_failed, 4u);
  EXPECT_TRUE(s.partial);
  EXPECT_FALSE(s.failures.empty());
  se::EnsembleConfig bad = small_pde_ensemble();
  bad.n_paths = 0;
  EXPECT_THROW(se::run_ensemble(bad), se::Error);
}

TEST(Sweep, FlagsUnderflowAndReportsThresholds) {
  se::EnsembleConfig e = small_pde_ensemble();
  e.trajectory.grid = se::Grid(3, 8);
  e.trajectory.integrator.T = 0.05;
  e.trajectory.rules.clear();
  e.n_paths = 4;
  const auto fixed = se::survival_vs_alpha_sweep(e, {0.5, 2.0}, 1.0, se::DataScaling::Fixed, 0.2);
  ASSERT_EQ(fixed.size(), 2u);
  EXPECT_DOUBLE_EQ(fixed[0].threshold, 0.0625);
  EXPECT_DOUBLE_EQ(fixed[1].threshold, 1.0);
  EXPECT_EQ(fixed[0].exceed_fraction, 1.0);
  EXPECT_EQ(fixed[1].exceed_fraction, 0.0);
  const auto scaled = se::survival_vs_alpha_sweep(e, {1.0}, 1.0, se::DataScaling::KappaScaled, 0.2);
  EXPECT_TRUE(scaled[0].flagged);
  EXPECT_EQ(scaled[0].n_paths, 0u);
  EXPECT_EQ(se::data_scaling_from_string("kappa-scaled"), se::DataScaling::KappaScaled);
  EXPECT_THROW(se::data_scaling_from_string("log"), se::Error);

  const fs::path dir = scratch("sweep");
  se::ensure_directory(dir.string());
  se::write_sweep_csv(fixed, (dir / "sweep.csv").string());
  const std::string text = read_file(dir / "sweep.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "alpha,kappa,log_kappa,threshold,initial_norm,exceed_fraction,ci_lower,ci_upper,n_paths,flagged");
  fs::remove_all(dir);
}

TEST(Persist, SummaryRoundTrip) {
  se::EnsembleConfig e = small_pde_ensemble();
  e.n_paths = 4;
  e.bound_comparison = se::GbmParams{};
  const auto s = se::run_ensemble(e);
  const fs::path dir = scratch("persist");
  se::ensure_directory(dir.string());
  const std::string path = (dir / "summary.json").string();
  se::save_summary(s, path);
  EXPECT_TRUE(se::load_summary(path) == s);

  nlohmann::json j = nlohmann::json::parse(read_file(path));
  j["schema_version"] = 99;
  std::ofstream(path) << j.dump();
  try {
    se::load_summary(path);
    FAIL() << "expected VersionError";
  } catch (const se::Error& err) {
    EXPECT_EQ(err.kind(), se::ErrorKind::VersionError);
  }
  EXPECT_THROW(se::load_summary((dir / "missing.json").string()), se::Error);
  fs::remove_all(dir);
}

TEST(Persist, LargeTrajectoryCsv) {
  se::TrajectoryDiagnostics d;
  d.trajectory_id = 17;
  for (int i = 0; i < 10000; ++i) {
    const double t = i * 1e-3;
    d.time.push_back(t);
    d.l2.push_back(1.0 + t);
    d.wmp.push_back(2.0 + t);
    d.w1inf.push_back(3.0 + t);
    d.curl_sup.push_back(std::exp(-t));
    d.gamma.push_back(1.0);
    d.brownian.push_back(std::sin(t));
    d.rho_gbm.push_back(std::cos(t));
  }
  d.hits.push_back({0, 4.5, 3.3});
  d.termination = se::Termination::StoppingRule;
  d.final_time = 9.999;
  const fs::path dir = scratch("csv");
  se::ensure_directory(dir.string());
  const std::string path = (dir / "t.csv").string();
  se::write_trajectory_csv(d, path);
  const auto back = se::read_trajectory_csv(path);
  ASSERT_EQ(back.samples(), 10000u);
  EXPECT_EQ(back.time, d.time);
  EXPECT_EQ(back.brownian, d.brownian);
  EXPECT_TRUE(back.transform_residual.empty());
  for (const auto* col : {&back.l2, &back.wmp, &back.w1inf, &back.curl_sup, &back.gamma, &back.rho_gbm}) {
    ASSERT_EQ(col->size(), 10000u);
    for (double x : *col) EXPECT_TRUE(std::isfinite(x));
  }
  EXPECT_EQ(back.termination, se::Termination::StoppingRule);
  ASSERT_EQ(back.hits.size(), 1u);
  EXPECT_EQ(back.hits[0].time, 4.5);
  EXPECT_EQ(back.final_time, 9.999);
  fs::remove_all(dir);
}
