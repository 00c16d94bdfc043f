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
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "stocheuler/error.hpp"

namespace cli = stocheuler::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("stocheuler_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const cli::Command& c, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::dispatch(c, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const stocheuler::Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, ParsesSectionsCommentsAndLists) {
  const auto c = cli::Config::from_string(
      "; leading comment\n[grid]\nn = 48   ; trailing comment\ndim=3 # other style\n"
      "[sweep]\nalphas = 0.5 1 2\n[stopping]\nrules = w1inf:5 gbm:16:record\n");
  EXPECT_EQ(c.get_int("grid.n", 0), 48);
  EXPECT_EQ(c.get_int("grid.dim", 0), 3);
  EXPECT_EQ(c.get_doubles("sweep.alphas", {}), (std::vector<double>{0.5, 1, 2}));
  EXPECT_EQ(c.get_words("stopping.rules").size(), 2u);
  EXPECT_EQ(c.get_double("grid.length", 7.0), 7.0);
  EXPECT_TRUE(c.has_section("grid"));
  EXPECT_FALSE(c.has_section("ode"));
}

TEST(Config, ErrorsNameTheKey) {
  EXPECT_NE(error_of([] { cli::Config::from_string("[grid]\nsize = 3\n"); }).find("grid.size"), std::string::npos);
  EXPECT_NE(error_of([] { cli::Config::from_string("[gird]\nn = 3\n"); }).find("gird.n"), std::string::npos);
  const auto c = cli::Config::from_string("[grid]\nn = many\n");
  EXPECT_NE(error_of([&] { c.get_int("grid.n", 0); }).find("grid.n"), std::string::npos);
  auto d = cli::Config::from_string("");
  EXPECT_NE(error_of([&] { d.set("noise.sigma=1"); }).find("noise.sigma"), std::string::npos);
  EXPECT_NE(error_of([&] { d.set("noise.alpha"); }).find("noise.alpha"), std::string::npos);
  d.set("integrator.kind", "leapfrog");
  EXPECT_NE(error_of([&] { cli::trajectory_from(d); }).find("integrator"), std::string::npos);
  auto g = cli::Config::from_string("[grid]\nn = 7\n");
  EXPECT_NE(error_of([&] { cli::grid_from(g); }).find("[grid]"), std::string::npos);
}

TEST(Config, OverridesWin) {
  auto c = cli::Config::from_string("[noise]\nalpha = 1\nkind = linear_multiplicative\n");
  c.set("noise.alpha=2.5");
  const auto t = cli::trajectory_from(c);
  EXPECT_EQ(t.noise.alpha, 2.5);
  EXPECT_EQ(t.noise.kind, stocheuler::NoiseKind::LinearMultiplicative);
}

TEST(Cli, UnknownSubcommandAndBadFlags) {
  std::ostringstream out, err;
  const char* argv[] = {"stocheuler", "frobnicate"};
  EXPECT_EQ(cli::run_cli(2, argv, out, err), cli::kExitInvalid);
  EXPECT_NE(err.str().find("frobnicate"), std::string::npos);
  EXPECT_NE(err.str().find("Usage"), std::string::npos);

  std::ostringstream out2, err2;
  const char* argv2[] = {"stocheuler", "kappa-table", "--bogus"};
  EXPECT_EQ(cli::run_cli(3, argv2, out2, err2), cli::kExitInvalid);

  cli::Command c;
  c.subcommand = "kappa-table";
  c.out_dir = scratch("badset").string();
  c.overrides = {"kappa_table.colour=red"};
  std::string err_text;
  EXPECT_EQ(run(c, nullptr, &err_text), cli::kExitInvalid);
  EXPECT_NE(err_text.find("kappa_table.colour"), std::string::npos);
}

TEST(Cli, KappaTableHasTwelveRows) {
  cli::Command c;
  c.subcommand = "kappa-table";
  c.out_dir = scratch("kappa").string();
  c.quiet = true;
  std::string out;
  EXPECT_EQ(run(c, &out), cli::kExitOk);
  EXPECT_TRUE(out.empty());
  std::istringstream csv(read_file(fs::path(c.out_dir) / "kappa_table.csv"));
  std::string line;
  std::getline(csv, line);
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    EXPECT_EQ(line.back(), '1') << line;
  }
  EXPECT_EQ(rows, 12);
  fs::remove_all(c.out_dir);
}

TEST(Cli, OdeBoundExitCodes) {
  cli::Command c;
  c.subcommand = "ode-bound";
  c.out_dir = scratch("ode").string();
  EXPECT_EQ(run(c), cli::kExitOk);
  EXPECT_TRUE(fs::exists(fs::path(c.out_dir) / "ode_bound.json"));
  // y0 above kappa is outside the lemma; the check reports but does not fail.
  c.overrides = {"ode.y0=1", "ode.R=1", "ode.alpha2=1"};
  std::string out;
  EXPECT_EQ(run(c, &out), cli::kExitOk);
  EXPECT_NE(out.find("exceeded"), std::string::npos);
  fs::remove_all(c.out_dir);
}

TEST(Cli, GbmExitIsByteReproducible) {
  cli::Command c;
  c.subcommand = "gbm-exit";
  c.overrides = {"gbm.n_paths=2000", "gbm.T=20"};
  c.quiet = true;
  const fs::path first = scratch("gbm_a");
  c.out_dir = first.string();
  EXPECT_EQ(run(c), cli::kExitOk);
  c.out_dir = scratch("gbm_b").string();
  EXPECT_EQ(run(c), cli::kExitOk);
  const std::string a = read_file(first / "gbm_exit.json");
  const std::string b = read_file(fs::path(c.out_dir) / "gbm_exit.json");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, b);
  c.seed = 99;
  EXPECT_EQ(run(c), cli::kExitOk);
  EXPECT_NE(read_file(fs::path(c.out_dir) / "gbm_exit.json"), a);
  fs::remove_all(first);
  fs::remove_all(c.out_dir);
}

TEST(Cli, EnsembleWritesSummaryAndSweep) {
  const fs::path dir = scratch("ensemble");
  fs::create_directories(dir);
  std::ofstream(dir / "cfg.ini") << "[grid]\ndim = 3\nn = 8\n[noise]\nkind = linear_multiplicative\nalpha = 1\n"
                                    "[integrator]\ndt = 0.01\nT = 0.05\n[stopping]\nrules = w1inf:100\n"
                                    "[ensemble]\nn_paths = 4\nmaster_seed = 3\n[sweep]\nalphas = 0.5 2\nfixed_norm = 0.2\n";
  cli::Command c;
  c.subcommand = "ensemble";
  c.config_path = (dir / "cfg.ini").string();
  c.out_dir = (dir / "out").string();
  c.quiet = true;
  EXPECT_EQ(run(c), cli::kExitOk);
  EXPECT_TRUE(fs::exists(dir / "out" / "summary.json"));
  EXPECT_TRUE(fs::exists(dir / "out" / "sweep.csv"));
  EXPECT_TRUE(fs::exists(dir / "out" / "paths" / "3.csv"));
  const std::string first = read_file(dir / "out" / "summary.json");
  c.overrides = {"ensemble.parallel_width=3"};
  EXPECT_EQ(run(c), cli::kExitOk);
  EXPECT_EQ(read_file(dir / "out" / "summary.json"), first);
  fs::remove_all(dir);
}

TEST(Cli, RunAndChecksSucceed) {
  cli::Command c;
  c.quiet = true;
  c.out_dir = scratch("checks").string();
  c.subcommand = "run";
  c.overrides = {"integrator.T=0.05", "grid.n=16"};
  EXPECT_EQ(run(c), cli::kExitOk);
  EXPECT_TRUE(fs::exists(fs::path(c.out_dir) / "trajectory.csv"));

  c.subcommand = "mollifier-check";
  c.overrides = {"grid.n=32"};
  EXPECT_EQ(run(c), cli::kExitOk);
  c.overrides = {"grid.n=16"};
  std::string err;
  EXPECT_EQ(run(c, nullptr, &err), cli::kExitInvalid);
  EXPECT_NE(err.find("mollifier_check.kmax"), std::string::npos);

  c.subcommand = "transform-check";
  c.overrides = {"grid.n=16", "transform_check.n_paths=4", "transform_check.T=0.1", "transform_check.ratio_min=0.5",
                 "transform_check.ratio_max=8"};
  EXPECT_EQ(run(c), cli::kExitOk);
  // An impossible acceptance window turns the same run into a failed check.
  c.overrides.push_back("transform_check.ratio_min=7.9");
  EXPECT_EQ(run(c), cli::kExitViolation);
  fs::remove_all(c.out_dir);
}
