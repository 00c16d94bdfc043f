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
#include <optional>
#include <string>
#include <vector>

#include "stocheuler/gbm.hpp"
#include "stocheuler/trajectory.hpp"
#include "stocheuler/wilson.hpp"

namespace stocheuler {

struct EnsembleConfig {
  TrajectoryConfig trajectory;
  std::uint64_t n_paths = 1;
  std::uint64_t master_seed = 0;
  /// Worker count; never affects results.
  int parallel_width = 1;
  /// When nonempty, paths/<id>.csv is written here as each path completes.
  std::string output_dir;
  bool write_paths = true;
  /// Skip the PDE and follow rho_alpha(t) = exp(alpha W_t - alpha^2 t / 8)
  /// with alpha = noise.alpha; only GBMLevel rules are meaningful.
  bool gbm_surrogate = false;
  /// Analytic survival bound to report next to the estimate. In surrogate
  /// mode it defaults to mu = 3 alpha^2 / 8, x0 = 1, R = first GBM level.
  std::optional<GbmParams> bound_comparison;
  /// Times at which mean / max of the monitored norms are reported; empty
  /// means T/4, T/2, 3T/4, T.
  std::vector<double> checkpoints;
  int histogram_bins = 20;
};

struct RuleHistogram {
  std::string rule;
  std::uint64_t hits = 0;
  /// bins + 1 edges spanning [0, T].
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;

  friend bool operator==(const RuleHistogram&, const RuleHistogram&) = default;
};

struct CheckpointStat {
  double time = 0.0;
  /// Paths still running (and sampled) at this time.
  std::uint64_t count = 0;
  double mean_wmp = 0.0;
  double max_wmp = 0.0;
  double mean_w1inf = 0.0;
  double max_w1inf = 0.0;

  friend bool operator==(const CheckpointStat&, const CheckpointStat&) = default;
};

struct EnsembleSummary {
  static constexpr int kSchemaVersion = 1;

  int schema_version = kSchemaVersion;
  std::string mode;
  std::uint64_t master_seed = 0;
  std::uint64_t n_paths = 0;
  /// Paths that ended in a configuration or I/O failure; excluded from the
  /// statistics below.
  std::uint64_t n_failed = 0;
  /// No stopping-rule hit and no blow-up before T.
  std::uint64_t n_survived = 0;
  std::uint64_t n_blowup = 0;
  double survival_fraction = 0.0;
  Interval wilson_99;
  std::vector<RuleHistogram> histograms;
  std::optional<double> analytic_bound;
  std::vector<CheckpointStat> checkpoints;
  /// More than 1% of paths failed for non-statistical reasons.
  bool partial = false;
  /// First failure messages, ordered by trajectory id.
  std::vector<std::string> failures;

  // Discretization knobs, echoed so estimates can be judged for bias.
  int dim = 0;
  int n = 0;
  double T = 0.0;
  double dt = 0.0;
  std::string integrator;
  std::string noise;
  double alpha = 0.0;

  friend bool operator==(const EnsembleSummary&, const EnsembleSummary&) = default;
};

/// Runs n_paths trajectories (Brownian stream = trajectory id) over a
/// bounded worker pool and folds the per-path records in id order, so the
/// summary depends only on the config and master_seed. Step failures count
/// as blow-up; other per-path errors are recorded and never abort the batch.
EnsembleSummary run_ensemble(const EnsembleConfig& cfg);

struct SweepRow {
  double alpha = 0.0;
  double kappa = 0.0;
  double log_kappa = 0.0;
  double threshold = 0.0;
  double initial_norm = 0.0;
  double exceed_fraction = 0.0;
  Interval interval;
  std::uint64_t n_paths = 0;
  /// kappa underflowed (or alpha = 0 in kappa-scaled mode); no run.
  bool flagged = false;
};

enum class DataScaling { Fixed, KappaScaled };
DataScaling data_scaling_from_string(const std::string& name);
std::string to_string(DataScaling s);

/// For each alpha, runs the linear multiplicative ensemble of `base` and
/// reports how often ||u||_{W^{m,p}} (monitor norm) reaches alpha^2 / (4 Cbar)
/// before T. Fixed mode starts every alpha from `fixed_norm` (or the base
/// initial data if fixed_norm <= 0); kappa-scaled mode uses
/// min(fixed_norm, kappa(R, alpha)).
std::vector<SweepRow> survival_vs_alpha_sweep(const EnsembleConfig& base, const std::vector<double>& alphas, double R,
                                              DataScaling scaling, double fixed_norm, double Cbar = 1.0,
                                              double dr_factor = 4.0);

}  // namespace stocheuler
