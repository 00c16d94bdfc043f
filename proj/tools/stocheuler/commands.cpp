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

#include "commands.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "config.hpp"
#include "stocheuler/error.hpp"
#include "stocheuler/fields.hpp"
#include "stocheuler/gbm.hpp"
#include "stocheuler/mollifier_check.hpp"
#include "stocheuler/ode_lemma.hpp"
#include "stocheuler/persist.hpp"
#include "stocheuler/transform_study.hpp"
#include "stocheuler/wilson.hpp"

namespace stocheuler::cli {

namespace {

using json = nlohmann::json;

struct Context {
  const Command& cmd;
  Config cfg;
  std::ostream& out;

  std::string path(const std::string& name) const { return (std::filesystem::path(cmd.out_dir) / name).string(); }
  std::uint64_t seed(const std::string& key, std::uint64_t fallback) const {
    return cmd.seed ? *cmd.seed : cfg.get_uint(key, fallback);
  }
};

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

// Non-finite doubles are not valid JSON numbers.
json num(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw Error(ErrorKind::IoError, "cannot write " + path);
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

int cmd_run(Context& c) {
  const TrajectoryConfig tc = trajectory_from(c.cfg);
  // Same stream as path 0 of an ensemble with this master seed.
  const BrownianDriver driver(c.seed("ensemble.master_seed", 0), make_noise_model(tc.grid, tc.noise).n_modes());
  const TrajectoryDiagnostics d = integrate_trajectory(tc, driver, 0);
  write_trajectory_csv(d, c.path("trajectory.csv"));

  c.out << "termination   " << to_string(d.termination) << (d.blow_up_flag ? " (blow-up)" : "") << "\n"
        << "final time    " << fmt("%.6g", d.final_time) << "\n"
        << "samples       " << d.samples() << "\n";
  if (d.samples() > 0) {
    c.out << "final L2      " << fmt("%.6e", d.l2.back()) << "\n"
          << "final W1,inf  " << fmt("%.6e", d.w1inf.back()) << "\n";
  }
  for (const auto& h : d.hits) {
    c.out << "hit           " << tc.rules[h.rule_index].name() << " at t = " << fmt("%.6g", h.time)
          << " (value " << fmt("%.6e", h.value) << ")\n";
  }
  if (!d.message.empty()) c.out << "note          " << d.message << "\n";
  c.out << "wrote " << c.path("trajectory.csv") << "\n";
  return kExitOk;
}

int cmd_ensemble(Context& c) {
  EnsembleConfig ec = ensemble_from(c.cfg);
  ec.master_seed = c.seed("ensemble.master_seed", 0);
  ec.output_dir = c.cmd.out_dir;
  const EnsembleSummary s = run_ensemble(ec);
  save_summary(s, c.path("summary.json"));

  c.out << "mode          " << s.mode << "\n"
        << "paths         " << s.n_paths << " (failed " << s.n_failed << ", blow-up " << s.n_blowup << ")\n"
        << "survival      " << fmt("%.6f", s.survival_fraction) << "  99% Wilson [" << fmt("%.6f", s.wilson_99.lower)
        << ", " << fmt("%.6f", s.wilson_99.upper) << "]\n";
  if (s.analytic_bound) c.out << "bound         " << fmt("%.6f", *s.analytic_bound) << "\n";
  for (const auto& h : s.histograms) c.out << "rule          " << h.rule << ": " << h.hits << " hits\n";
  if (s.partial) c.out << "partial       more than 1% of paths failed; first: " << s.failures.front() << "\n";
  c.out << "wrote " << c.path("summary.json") << "\n";
  if (s.n_paths > 0 && s.n_failed == s.n_paths) {
    throw Error(ErrorKind::ConfigError, "every path failed: " + s.failures.front());
  }

  if (c.cfg.has("sweep.alphas")) {
    EnsembleConfig base = ec;
    base.output_dir.clear();
    const std::string scaling = c.cfg.get_string("sweep.data_scaling", "fixed");
    const auto rows = survival_vs_alpha_sweep(
        base, c.cfg.get_doubles("sweep.alphas", {}), c.cfg.get_double("sweep.R", 1.0),
        data_scaling_from_string(scaling), c.cfg.get_double("sweep.fixed_norm", 0.0), c.cfg.get_double("sweep.Cbar", 1.0),
        c.cfg.get_double("sweep.dr_factor", kDefaultDrFactor));
    write_sweep_csv(rows, c.path("sweep.csv"));
    c.out << "sweep         " << rows.size() << " rows (" << scaling << ")\n";
    for (const auto& r : rows) {
      c.out << "  alpha " << fmt("%-8g", r.alpha) << (r.flagged ? " flagged (kappa underflow)" : "")
            << " exceed " << fmt("%.4f", r.exceed_fraction) << "\n";
    }
    c.out << "wrote " << c.path("sweep.csv") << "\n";
  }
  return kExitOk;
}

int cmd_gbm_exit(Context& c) {
  GbmParams p;
  p.mu = c.cfg.get_double("gbm.mu", 0.375);
  p.alpha = c.cfg.get_double("gbm.alpha", 1.0);
  p.x0 = c.cfg.get_double("gbm.x0", 1.0);
  p.R = c.cfg.get_double("gbm.R", 16.0);
  const double T = c.cfg.get_double("gbm.T", 200.0);
  const double dt = c.cfg.get_double("gbm.dt", 1e-2);
  const std::uint64_t n = c.cfg.get_uint("gbm.n_paths", 100000);
  const std::uint64_t seed = c.seed("gbm.seed", 0);
  const int threads = static_cast<int>(c.cfg.get_int("gbm.threads", 1));

  json analytic = nullptr;
  std::optional<double> hit_bound;
  try {
    const double survival = gbm_survival_bound(p);
    hit_bound = 1.0 - survival;
    analytic = {{"lambda_c", gbm_critical_exponent(p)}, {"survival_lower_bound", survival},
                {"hit_upper_bound", *hit_bound}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvalidParams) throw;
    c.out << "no analytic bound: " << e.what() << "\n";
  }

  const GbmExitEstimate est = gbm_exit_mc(p, T, dt, n, seed, threads);
  // Discrete monitoring can only miss crossings, so only an excess is a violation.
  const bool violated = hit_bound && est.interval.lower > *hit_bound;

  const json j = {{"params",
                   {{"mu", p.mu}, {"alpha", p.alpha}, {"x0", p.x0}, {"R", p.R}, {"T", T}, {"dt", dt}, {"n_paths", n},
                    {"seed", seed}}},
                  {"analytic", analytic},
                  {"estimate", {{"p_hit", est.p_hit}, {"n_hit", est.n_hit}, {"n_paths", est.n_paths}}},
                  {"interval", {{"confidence", 0.99}, {"lower", est.interval.lower}, {"upper", est.interval.upper}}},
                  {"bound_violated", violated}};
  write_json(c.path("gbm_exit.json"), j);

  c.out << "P(hit R before T)  " << fmt("%.6f", est.p_hit) << "  99% Wilson [" << fmt("%.6f", est.interval.lower)
        << ", " << fmt("%.6f", est.interval.upper) << "]  (" << est.n_hit << "/" << est.n_paths << ")\n";
  if (hit_bound) c.out << "analytic bound     " << fmt("%.6f", *hit_bound) << (violated ? "  VIOLATED" : "") << "\n";
  c.out << "wrote " << c.path("gbm_exit.json") << "\n";
  return violated ? kExitViolation : kExitOk;
}

int cmd_ode_bound(Context& c) {
  const auto Rs = c.cfg.get_doubles("ode.R", {1, 2, 4});
  const auto a2s = c.cfg.get_doubles("ode.alpha2", {1, 4, 16});
  const double Cbar = c.cfg.get_double("ode.Cbar", 1.0);
  const std::string y0 = c.cfg.get_string("ode.y0", "kappa");
  const std::string profile = c.cfg.get_string("ode.z_profile", "extremal");
  const double dt = c.cfg.get_double("ode.dt", 0.05);
  const double dr = c.cfg.get_double("ode.dr_factor", kDefaultDrFactor);

  json cells = json::array();
  std::ostringstream csv;
  csv << "cell,R,alpha2,t,log_y\n";
  bool violated = false;
  int cell = 0;
  c.out << "     R   alpha2     log y0     log bound    log sup y     margin   status\n";
  for (double R : Rs) {
    for (double a2 : a2s) {
      if (!(a2 > 0.0)) throw Error(ErrorKind::ConfigError, "config key 'ode.alpha2': values must be positive");
      OdeLemmaParams p;
      p.R = R;
      p.alpha = std::sqrt(a2);
      p.Cbar = Cbar;
      p.z_profile = profile;
      p.dr_factor = dr;
      if (y0 == "kappa") {
        p.log_y0 = kappa_K(R, p.alpha, Cbar, dr).log_kappa;
      } else {
        p.with_y0(c.cfg.get_double("ode.y0", 0.0));
      }
      const OdeBoundResult r = ode_bound_check(p, dt);
      const bool fail = r.admissible && !r.bound_satisfied;
      violated = violated || fail;

      double lo = r.log_y.front(), hi = r.log_y.front();
      for (std::size_t i = 0; i < r.t.size(); ++i) {
        lo = std::min(lo, r.log_y[i]);
        hi = std::max(hi, r.log_y[i]);
        csv << cell << ',' << fmt("%.17g", R) << ',' << fmt("%.17g", a2) << ',' << fmt("%.17g", r.t[i]) << ','
            << fmt("%.17g", r.log_y[i]) << '\n';
      }
      cells.push_back({{"params", {{"R", R}, {"alpha2", a2}, {"Cbar", Cbar}, {"log_y0", p.log_y0}, {"z_profile", profile}}},
                       {"analytic",
                        {{"log_bound", r.log_bound},
                         {"log_kappa", num(r.kappa.log_kappa)},
                         {"log_K", num(r.kappa.log_K)},
                         {"admissible", r.admissible}}},
                       {"estimate",
                        {{"log_y_sup", r.log_y_sup},
                         {"margin", r.margin},
                         {"T_end", r.T_end},
                         {"tail_allowance", r.tail_allowance},
                         {"steps", r.t.size()}}},
                       {"interval", {{"log_y_min", lo}, {"log_y_max", hi}}},
                       {"bound_satisfied", r.bound_satisfied}});
      c.out << fmt("%6g", R) << fmt("%9g", a2) << fmt("%11.4g", p.log_y0) << fmt("%14.6g", r.log_bound)
            << fmt("%13.6g", r.log_y_sup) << fmt("%11.4g", r.margin) << "   "
            << (r.bound_satisfied ? "ok" : (r.admissible ? "VIOLATED" : "exceeded (y0 > kappa)")) << "\n";
      ++cell;
    }
  }
  const json j = {{"params", {{"Cbar", Cbar}, {"y0", y0}, {"z_profile", profile}, {"dt", dt}, {"dr_factor", dr}}},
                  {"cells", cells},
                  {"all_satisfied", !violated}};
  write_json(c.path("ode_bound.json"), j);
  write_text(c.path("ode_bound_paths.csv"), csv.str());
  c.out << "wrote " << c.path("ode_bound.json") << " and " << c.path("ode_bound_paths.csv") << "\n";
  return violated ? kExitViolation : kExitOk;
}

int cmd_kappa_table(Context& c) {
  const auto Rs = c.cfg.get_doubles("kappa_table.R", {1, 2, 4});
  const auto a2s = c.cfg.get_doubles("kappa_table.alpha2", {1, 4, 16, 64});
  const double Cbar = c.cfg.get_double("kappa_table.Cbar", 1.0);
  const double dr = c.cfg.get_double("kappa_table.dr_factor", kDefaultDrFactor);

  std::ostringstream csv;
  csv << "R,alpha2,Cbar,log_K,K,log_kappa,kappa,K_overflow,kappa_underflow,K_ge_2\n";
  bool violated = false;
  c.out << "     R   alpha2        log K    log kappa   K >= 2\n";
  for (double R : Rs) {
    for (double a2 : a2s) {
      if (!(a2 > 0.0)) throw Error(ErrorKind::ConfigError, "config key 'kappa_table.alpha2': values must be positive");
      const KappaK k = kappa_K(R, std::sqrt(a2), Cbar, dr);
      const bool ge2 = k.log_K >= std::log(2.0);
      violated = violated || !ge2;
      csv << fmt("%.17g", R) << ',' << fmt("%.17g", a2) << ',' << fmt("%.17g", Cbar) << ',' << fmt("%.17g", k.log_K)
          << ',' << fmt("%.17g", k.K) << ',' << fmt("%.17g", k.log_kappa) << ',' << fmt("%.17g", k.kappa) << ','
          << k.K_overflow << ',' << k.kappa_underflow << ',' << ge2 << '\n';
      c.out << fmt("%6g", R) << fmt("%9g", a2) << fmt("%13.6g", k.log_K) << fmt("%13.6g", k.log_kappa) << "   "
            << (ge2 ? "yes" : "NO") << "\n";
    }
  }
  write_text(c.path("kappa_table.csv"), csv.str());
  c.out << "wrote " << c.path("kappa_table.csv") << "\n";
  return violated ? kExitViolation : kExitOk;
}

int cmd_transform_check(Context& c) {
  const Grid grid = grid_from(c.cfg);
  const TrajectoryConfig tc = trajectory_from(c.cfg);
  const SpectralField u0 = make_initial_condition(grid, tc.initial, tc.monitor_norm);
  const double alpha = c.cfg.get_double("transform_check.alpha", 1.0);
  const double T = c.cfg.get_double("transform_check.T", 0.5);
  const auto dts = c.cfg.get_doubles("transform_check.dts", {1e-2, 5e-3, 2.5e-3});
  const long long n_paths = c.cfg.get_int("transform_check.n_paths", 192);
  const std::uint64_t seed = c.seed("transform_check.seed", 0);
  const double lo = c.cfg.get_double("transform_check.ratio_min", 1.4);
  const double hi = c.cfg.get_double("transform_check.ratio_max", 2.6);
  if (n_paths < 1) throw Error(ErrorKind::ConfigError, "config key 'transform_check.n_paths' must be >= 1");

  const TransformStudy s = transform_equivalence_study(u0, alpha, T, dts, static_cast<int>(n_paths), seed);
  bool violated = false;
  for (double r : s.ratios) violated = violated || !(r >= lo && r <= hi);

  const json j = {{"params",
                   {{"alpha", alpha}, {"T", T}, {"dts", dts}, {"n_paths", n_paths}, {"seed", seed}, {"n", grid.n()},
                    {"dim", grid.dim()}}},
                  {"analytic", {{"expected_ratio", 2.0}}},
                  {"estimate", {{"errors", s.errors}, {"rms_errors", s.rms_errors}, {"ratios", s.ratios}}},
                  {"interval", {{"lower", lo}, {"upper", hi}}},
                  {"ratios_in_interval", !violated}};
  write_json(c.path("transform_check.json"), j);

  c.out << "        dt     mean rel. error     rms error\n";
  for (std::size_t i = 0; i < s.dts.size(); ++i) {
    c.out << fmt("%10.4g", s.dts[i]) << fmt("%20.6e", s.errors[i]) << fmt("%14.6e", s.rms_errors[i]) << "\n";
  }
  for (double r : s.ratios) {
    c.out << "ratio " << fmt("%.4f", r) << (r >= lo && r <= hi ? "" : "  outside [" + fmt("%g", lo) + ", " + fmt("%g", hi) + "]")
          << "\n";
  }
  c.out << "wrote " << c.path("transform_check.json") << "\n";
  return violated ? kExitViolation : kExitOk;
}

int cmd_mollifier_check(Context& c) {
  const Grid grid = grid_from(c.cfg);
  std::vector<double> default_eps;
  for (int j = 0; j <= 13; ++j) default_eps.push_back(std::ldexp(1.0, -j));
  const auto eps = c.cfg.get_doubles("mollifier_check.eps", default_eps);
  const NormRequest norm{static_cast<int>(c.cfg.get_int("mollifier_check.m", 2)), c.cfg.get_double("mollifier_check.p", 2.0)};
  const long long n_cal = c.cfg.get_int("mollifier_check.n_calibration", 4);
  const long long n_val = c.cfg.get_int("mollifier_check.n_validation", 4);
  const std::uint64_t seed = c.seed("mollifier_check.seed", 11);
  const int kmax = static_cast<int>(c.cfg.get_int("mollifier_check.kmax", 6));
  const double slope = c.cfg.get_double("mollifier_check.slope", 1.0);
  const double slack = c.cfg.get_double("mollifier_check.slack", 2.0);
  if (kmax < 1 || kmax > grid.dealias_cutoff()) {
    throw Error(ErrorKind::ConfigError, "config key 'mollifier_check.kmax' must lie in [1, " +
                                            std::to_string(grid.dealias_cutoff()) + "] for this grid");
  }
  if (n_cal < 1 || n_val < 1) throw Error(ErrorKind::ConfigError, "mollifier_check.n_calibration and n_validation must be >= 1");

  std::vector<SpectralField> cal, val;
  for (long long i = 0; i < n_cal + n_val; ++i) {
    (i < n_cal ? cal : val).push_back(random_divergence_free(grid, seed + static_cast<std::uint64_t>(i), kmax, slope));
  }
  const MollifierReport r = mollifier_check(cal, val, eps, norm, slack);

  std::ostringstream csv;
  csv << "eps,uniform_ratio,smoothing_ratio,convergence_error\n";
  c.out << "        eps   ||F u||/||u||   eps||F u||_m/||u||_{m-1}   ||F u - u||/||u||\n";
  for (std::size_t i = 0; i < r.eps.size(); ++i) {
    csv << fmt("%.17g", r.eps[i]) << ',' << fmt("%.17g", r.uniform_ratio[i]) << ','
        << fmt("%.17g", r.smoothing_ratio[i]) << ',' << fmt("%.17g", r.convergence_error[i]) << '\n';
    c.out << fmt("%11.4g", r.eps[i]) << fmt("%16.10f", r.uniform_ratio[i]) << fmt("%27.6e", r.smoothing_ratio[i])
          << fmt("%20.6e", r.convergence_error[i]) << "\n";
  }
  write_text(c.path("mollifier_check.csv"), csv.str());
  const json j = {{"params", {{"m", norm.m}, {"p", num(norm.p)}, {"n_calibration", n_cal}, {"n_validation", n_val},
                              {"seed", seed}, {"n", grid.n()}, {"dim", grid.dim()}}},
                  {"analytic", {{"uniform_constant_bound", 1.0}}},
                  {"estimate", {{"uniform_constant", r.uniform_constant}, {"calibrated_C2", r.calibrated_C2}}},
                  {"interval", {{"smoothing_upper", slack * r.calibrated_C2}}},
                  {"uniform_ok", r.uniform_ok},
                  {"smoothing_ok", r.smoothing_ok},
                  {"convergence_monotone", r.convergence_monotone}};
  write_json(c.path("mollifier_check.json"), j);

  c.out << "uniform bound      " << (r.uniform_ok ? "ok" : "FAILED") << " (C = " << fmt("%.12f", r.uniform_constant) << ")\n"
        << "smoothing bound    " << (r.smoothing_ok ? "ok" : "FAILED") << " (calibrated C = " << fmt("%.6f", r.calibrated_C2)
        << ")\n"
        << "convergence        " << (r.convergence_monotone ? "monotone" : "NOT monotone") << "\n"
        << "wrote " << c.path("mollifier_check.csv") << " and " << c.path("mollifier_check.json") << "\n";
  return r.ok() ? kExitOk : kExitViolation;
}

using Handler = int (*)(Context&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"run", cmd_run},
      {"ensemble", cmd_ensemble},
      {"gbm-exit", cmd_gbm_exit},
      {"ode-bound", cmd_ode_bound},
      {"kappa-table", cmd_kappa_table},
      {"transform-check", cmd_transform_check},
      {"mollifier-check", cmd_mollifier_check},
  };
  return h;
}

class NullBuffer : public std::streambuf {
 protected:
  int overflow(int c) override { return c; }
};

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"run",         "ensemble",        "gbm-exit",       "ode-bound",
                                                 "kappa-table", "transform-check", "mollifier-check"};
  return names;
}

int dispatch(const Command& cmd, std::ostream& out, std::ostream& err) {
  const auto it = handlers().find(cmd.subcommand);
  if (it == handlers().end()) {
    err << "error: unknown subcommand '" << cmd.subcommand << "'\n";
    return kExitInvalid;
  }
  NullBuffer null_buf;
  std::ostream null_out(&null_buf);
  try {
    Context ctx{cmd, cmd.config_path.empty() ? Config{} : Config::from_file(cmd.config_path),
                cmd.quiet ? null_out : out};
    for (const auto& o : cmd.overrides) ctx.cfg.set(o);
    ensure_directory(cmd.out_dir);
    return it->second(ctx);
  } catch (const Error& e) {
    err << "error in " << cmd.subcommand << ": " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error in " << cmd.subcommand << ": " << e.what() << "\n";
    return kExitInvalid;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic Euler spectral laboratory"};
  app.require_subcommand(1);
  Command cmd;
  std::uint64_t seed = 0;
  static const std::map<std::string, std::string> about = {
      {"run", "Integrate one trajectory and write its diagnostics"},
      {"ensemble", "Monte Carlo ensemble (and optional alpha sweep) with summary statistics"},
      {"gbm-exit", "Exit probability of geometric Brownian motion versus the analytic bound"},
      {"ode-bound", "Check the comparison ODE bound over an (R, alpha^2) grid"},
      {"kappa-table", "Tabulate K(R, alpha) and kappa(R, alpha)"},
      {"transform-check", "Strong convergence of the stochastic run to the transformed run"},
      {"mollifier-check", "Uniform, smoothing and convergence checks of the mollifier"},
  };
  for (const auto& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("--config", cmd.config_path, "INI configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", cmd.out_dir, "Output directory (created if missing)");
    sub->add_option("--seed", seed, "Master seed; overrides the config");
    sub->add_option("--set", cmd.overrides, "Override section.key=value (repeatable)");
    sub->add_flag("--quiet", cmd.quiet, "Suppress the report on stdout");
  }
  if (argc > 1 && argv[1][0] != '-' && handlers().count(argv[1]) == 0) {
    err << "error: unknown subcommand '" << argv[1] << "'\n\n" << app.help();
    return kExitInvalid;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInvalid;
  }
  for (const auto* sub : app.get_subcommands()) {
    cmd.subcommand = sub->get_name();
    if (sub->count("--seed") > 0) cmd.seed = seed;
  }
  return dispatch(cmd, out, err);
}

}  // namespace stocheuler::cli
