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

#include "stocheuler/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

#include <boost/random/normal_distribution.hpp>

#include "stocheuler/error.hpp"
#include "stocheuler/ode_lemma.hpp"
#include "stocheuler/parallel.hpp"
#include "stocheuler/persist.hpp"

namespace stocheuler {
namespace {

constexpr std::size_t kMaxFailureMessages = 10;

// What the fold needs from one path.
struct PathRecord {
  bool failed = false;
  bool blow_up = false;
  std::string failure;
  std::vector<StoppingHit> hits;
  std::vector<bool> alive_at;
  std::vector<double> wmp_at;
  std::vector<double> w1inf_at;
};

TrajectoryDiagnostics surrogate_path(const EnsembleConfig& cfg, const BrownianDriver& driver, std::uint64_t id) {
  const auto& tc = cfg.trajectory;
  const double alpha = tc.noise.alpha;
  const double dt = tc.integrator.dt;
  const double T = tc.integrator.T;
  TrajectoryDiagnostics d;
  d.trajectory_id = id;
  if (T == 0.0) return d;

  std::vector<bool> fired(tc.rules.size(), false);
  double w = 0.0;
  double t = 0.0;
  const auto record = [&]() {
    const double rho = gbm_rho(alpha, w, t);
    d.time.push_back(t);
    d.brownian.push_back(w);
    d.gamma.push_back(std::exp(-alpha * w));
    d.rho_gbm.push_back(rho);
    bool stop = false;
    for (std::size_t r = 0; r < tc.rules.size(); ++r) {
      if (fired[r] || tc.rules[r].kind != StoppingRule::Kind::GBMLevel) continue;
      if (rho >= tc.rules[r].level) {
        fired[r] = true;
        d.hits.push_back({r, t, rho});
        if (tc.rules[r].stop_on_hit) {
          d.termination = Termination::StoppingRule;
          stop = true;
        }
      }
    }
    return stop;
  };

  PhiloxStream bits = driver.stream(id, 0);
  boost::random::normal_distribution<double> normal;
  bool stop = record();
  const auto n_steps = static_cast<std::int64_t>(std::ceil(T / dt - 1e-9));
  for (std::int64_t step = 0; step < n_steps && !stop; ++step) {
    const double h = step + 1 == n_steps ? T - t : dt;
    w += std::sqrt(h) * normal(bits);
    t += h;
    if ((step + 1) % tc.sample_every == 0 || step + 1 == n_steps) stop = record();
  }
  d.final_time = t;
  return d;
}

PathRecord summarize_path(const TrajectoryDiagnostics& d, const std::vector<double>& checkpoints) {
  PathRecord rec;
  rec.blow_up = d.blow_up_flag;
  rec.hits = d.hits;
  for (double tc : checkpoints) {
    // Last sample at or before the checkpoint, if the path got that far.
    const auto it = std::upper_bound(d.time.begin(), d.time.end(), tc + 1e-9 * std::max(1.0, tc));
    const bool alive = it != d.time.begin() && d.final_time >= tc - 1e-9 * std::max(1.0, tc) && !d.wmp.empty();
    rec.alive_at.push_back(alive);
    const auto idx = static_cast<std::size_t>(std::distance(d.time.begin(), it)) - (alive ? 1 : 0);
    rec.wmp_at.push_back(alive ? d.wmp[idx] : 0.0);
    rec.w1inf_at.push_back(alive ? d.w1inf[idx] : 0.0);
  }
  return rec;
}

std::string mode_name(const EnsembleConfig& cfg) { return cfg.gbm_surrogate ? "gbm_surrogate" : "dynamics"; }

}  // namespace

EnsembleSummary run_ensemble(const EnsembleConfig& cfg) {
  const auto& tc = cfg.trajectory;
  if (cfg.n_paths < 1) throw Error(ErrorKind::ConfigError, "ensemble.n_paths must be >= 1");
  if (cfg.parallel_width < 1) throw Error(ErrorKind::ConfigError, "ensemble.parallel_width must be >= 1");
  if (cfg.histogram_bins < 1) throw Error(ErrorKind::ConfigError, "ensemble.histogram_bins must be >= 1");
  if (!(tc.integrator.dt > 0.0)) throw Error(ErrorKind::ConfigError, "integrator.dt must be > 0");
  if (!(tc.integrator.T >= 0.0)) throw Error(ErrorKind::ConfigError, "integrator.T must be >= 0");
  if (cfg.gbm_surrogate && tc.sample_every < 1) throw Error(ErrorKind::ConfigError, "output.sample_every must be >= 1");
  const double T = tc.integrator.T;

  std::vector<double> checkpoints = cfg.checkpoints;
  if (checkpoints.empty()) checkpoints = {0.25 * T, 0.5 * T, 0.75 * T, T};
  std::sort(checkpoints.begin(), checkpoints.end());

  const int n_modes = cfg.gbm_surrogate ? 1 : make_noise_model(tc.grid, tc.noise).n_modes();
  const BrownianDriver driver(cfg.master_seed, n_modes);

  const bool write = !cfg.output_dir.empty() && cfg.write_paths;
  const std::string paths_dir = (std::filesystem::path(cfg.output_dir) / "paths").string();
  if (write) ensure_directory(paths_dir);

  std::vector<PathRecord> records(cfg.n_paths);
  parallel_for(cfg.n_paths, effective_threads(cfg.parallel_width), [&](std::size_t id) {
    PathRecord& rec = records[id];
    try {
      const TrajectoryDiagnostics d =
          cfg.gbm_surrogate ? surrogate_path(cfg, driver, id) : integrate_trajectory(tc, driver, id);
      rec = summarize_path(d, checkpoints);
      if (write) {
        write_trajectory_csv(d, (std::filesystem::path(paths_dir) / (std::to_string(id) + ".csv")).string());
      }
    } catch (const std::exception& e) {
      rec = PathRecord{};
      rec.failed = true;
      rec.failure = "path " + std::to_string(id) + ": " + e.what();
    }
  });

  // Sequential fold in id order.
  EnsembleSummary s;
  s.mode = mode_name(cfg);
  s.master_seed = cfg.master_seed;
  s.n_paths = cfg.n_paths;
  s.dim = tc.grid.dim();
  s.n = tc.grid.n();
  s.T = T;
  s.dt = tc.integrator.dt;
  s.integrator = cfg.gbm_surrogate ? "exact_gbm" : to_string(tc.integrator.kind);
  s.noise = to_string(tc.noise.kind);
  s.alpha = tc.noise.alpha;

  for (const auto& rule : tc.rules) {
    RuleHistogram h;
    h.rule = rule.name();
    for (int b = 0; b <= cfg.histogram_bins; ++b) h.edges.push_back(T * b / cfg.histogram_bins);
    h.counts.assign(static_cast<std::size_t>(cfg.histogram_bins), 0);
    s.histograms.push_back(std::move(h));
  }
  std::vector<double> sum_wmp(checkpoints.size(), 0.0), sum_w1(checkpoints.size(), 0.0);
  for (double t : checkpoints) s.checkpoints.push_back({t, 0, 0.0, 0.0, 0.0, 0.0});

  for (const PathRecord& rec : records) {
    if (rec.failed) {
      ++s.n_failed;
      if (s.failures.size() < kMaxFailureMessages) s.failures.push_back(rec.failure);
      continue;
    }
    if (rec.blow_up) ++s.n_blowup;
    if (rec.hits.empty() && !rec.blow_up) ++s.n_survived;
    for (const StoppingHit& hit : rec.hits) {
      RuleHistogram& h = s.histograms[hit.rule_index];
      ++h.hits;
      const double frac = T > 0.0 ? hit.time / T : 0.0;
      auto bin = static_cast<std::size_t>(std::floor(frac * cfg.histogram_bins));
      h.counts[std::min(bin, h.counts.size() - 1)]++;
    }
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      if (!rec.alive_at[c]) continue;
      CheckpointStat& cp = s.checkpoints[c];
      ++cp.count;
      sum_wmp[c] += rec.wmp_at[c];
      sum_w1[c] += rec.w1inf_at[c];
      cp.max_wmp = std::max(cp.max_wmp, rec.wmp_at[c]);
      cp.max_w1inf = std::max(cp.max_w1inf, rec.w1inf_at[c]);
    }
  }
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    CheckpointStat& cp = s.checkpoints[c];
    if (cp.count > 0) {
      cp.mean_wmp = sum_wmp[c] / static_cast<double>(cp.count);
      cp.mean_w1inf = sum_w1[c] / static_cast<double>(cp.count);
    }
  }

  const std::uint64_t evaluated = s.n_paths - s.n_failed;
  if (evaluated > 0) {
    s.survival_fraction = static_cast<double>(s.n_survived) / static_cast<double>(evaluated);
    s.wilson_99 = wilson_interval(s.n_survived, evaluated, 0.99);
  } else {
    s.wilson_99 = {0.0, 1.0};
  }
  s.partial = static_cast<double>(s.n_failed) > 0.01 * static_cast<double>(s.n_paths);

  std::optional<GbmParams> bound = cfg.bound_comparison;
  if (!bound && cfg.gbm_surrogate) {
    for (const auto& rule : tc.rules) {
      if (rule.kind == StoppingRule::Kind::GBMLevel) {
        const double a = tc.noise.alpha;
        bound = GbmParams{3.0 * a * a / 8.0, a, 1.0, rule.level};
        break;
      }
    }
  }
  if (bound) s.analytic_bound = gbm_survival_bound(*bound);
  return s;
}

DataScaling data_scaling_from_string(const std::string& name) {
  if (name == "fixed") return DataScaling::Fixed;
  if (name == "kappa-scaled") return DataScaling::KappaScaled;
  throw Error(ErrorKind::ConfigError, "sweep.data_scaling must be 'fixed' or 'kappa-scaled', got '" + name + "'");
}

std::string to_string(DataScaling s) { return s == DataScaling::Fixed ? "fixed" : "kappa-scaled"; }

std::vector<SweepRow> survival_vs_alpha_sweep(const EnsembleConfig& base, const std::vector<double>& alphas, double R,
                                              DataScaling scaling, double fixed_norm, double Cbar,
                                              double dr_factor) {
  if (alphas.empty()) throw Error(ErrorKind::ConfigError, "sweep.alphas must not be empty");
  std::vector<SweepRow> rows;
  for (double alpha : alphas) {
    SweepRow row;
    row.alpha = alpha;
    row.threshold = alpha * alpha / (4.0 * Cbar);
    if (alpha != 0.0) {
      const KappaK kk = kappa_K(R, alpha, Cbar, dr_factor);
      row.kappa = kk.kappa;
      row.log_kappa = kk.log_kappa;
      row.flagged = scaling == DataScaling::KappaScaled && kk.kappa_underflow;
    } else {
      row.kappa = 0.0;
      row.log_kappa = -std::numeric_limits<double>::infinity();
      row.flagged = scaling == DataScaling::KappaScaled;
    }
    if (row.flagged) {
      rows.push_back(row);
      continue;
    }

    EnsembleConfig cfg = base;
    cfg.gbm_surrogate = false;
    cfg.output_dir.clear();
    auto& tc = cfg.trajectory;
    tc.noise.kind = NoiseKind::LinearMultiplicative;
    tc.noise.alpha = alpha;
    if (scaling == DataScaling::KappaScaled) {
      tc.initial.target_norm = fixed_norm > 0.0 ? std::min(fixed_norm, row.kappa) : row.kappa;
    } else if (fixed_norm > 0.0) {
      tc.initial.target_norm = fixed_norm;
    }
    row.initial_norm = sobolev_norm(make_initial_condition(tc.grid, tc.initial, tc.monitor_norm), tc.monitor_norm);
    StoppingRule rule;
    rule.kind = StoppingRule::Kind::SobolevThreshold;
    rule.norm = tc.monitor_norm;
    // alpha = 0 gives threshold 0; the smallest positive level stands in.
    rule.level = std::max(row.threshold, std::numeric_limits<double>::min());
    tc.rules = {rule};

    const EnsembleSummary s = run_ensemble(cfg);
    const std::uint64_t evaluated = s.n_paths - s.n_failed;
    row.n_paths = evaluated;
    if (evaluated > 0) {
      const std::uint64_t exceeded = evaluated - s.n_survived;
      row.exceed_fraction = static_cast<double>(exceeded) / static_cast<double>(evaluated);
      row.interval = wilson_interval(exceeded, evaluated, 0.99);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace stocheuler
