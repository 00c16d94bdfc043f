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

#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "stocheuler/error.hpp"

namespace stocheuler::cli {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"grid", {"dim", "n", "length", "dealias_fraction"}},
      {"initial", {"kind", "amplitude", "seed", "kmax", "slope", "target_norm"}},
      {"noise", {"kind", "alpha", "K", "amplitude", "decay", "g", "seed"}},
      {"integrator", {"kind", "dt", "cfl", "T", "cutoff_R", "scheme"}},
      {"stopping", {"rules", "blowup_level"}},
      {"monitor", {"m", "p"}},
      {"output", {"sample_every", "track_transform", "write_paths"}},
      {"ensemble",
       {"n_paths", "master_seed", "parallel_width", "gbm_surrogate", "checkpoints", "histogram_bins", "bound_mu",
        "bound_x0", "bound_R"}},
      {"sweep", {"alphas", "R", "data_scaling", "fixed_norm", "Cbar", "dr_factor"}},
      {"gbm", {"mu", "alpha", "x0", "R", "T", "dt", "n_paths", "seed", "threads"}},
      {"ode", {"R", "alpha2", "Cbar", "y0", "z_profile", "dt", "dr_factor"}},
      {"kappa_table", {"R", "alpha2", "Cbar", "dr_factor"}},
      {"transform_check", {"alpha", "T", "dts", "n_paths", "seed", "ratio_min", "ratio_max"}},
      {"mollifier_check", {"eps", "m", "p", "n_calibration", "n_validation", "seed", "kmax", "slope", "slack"}},
  };
  return s;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& what, const std::string& value) {
  throw Error(ErrorKind::ConfigError, "config key '" + key + "': expected " + what + ", got '" + value + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// The INI reader only knows whole-line comments.
std::string strip_inline_comments(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    for (std::size_t i = 1; i < line.size(); ++i) {
      if ((line[i] == ';' || line[i] == '#') && (line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line.resize(i);
        break;
      }
    }
    out << line << '\n';
  }
  return out.str();
}

double parse_double(const std::string& key, const std::string& v) {
  if (v == "inf") return std::numeric_limits<double>::infinity();
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad_value(key, "a number", v);
  return x;
}

}  // namespace

void validate_key(const std::string& key) {
  const auto dot = key.find('.');
  if (dot == std::string::npos) {
    throw Error(ErrorKind::ConfigError, "config key '" + key + "' must have the form section.key");
  }
  const auto it = schema().find(key.substr(0, dot));
  if (it == schema().end()) throw Error(ErrorKind::ConfigError, "unknown config section in '" + key + "'");
  if (it->second.count(key.substr(dot + 1)) == 0) {
    throw Error(ErrorKind::ConfigError, "unknown config key '" + key + "'");
  }
}

Config Config::from_string(const std::string& text, const std::string& origin) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(strip_inline_comments(text));
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::ConfigError, origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  Config c;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw Error(ErrorKind::ConfigError, origin + ": key '" + section + "' outside of any section");
    }
    for (const auto& [key, value] : body) c.set(section + "." + key, value.data());
  }
  return c;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str(), path);
}

void Config::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw Error(ErrorKind::ConfigError, "override '" + assignment + "' must have the form section.key=value");
  }
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string& key, const std::string& value) {
  validate_key(key);
  values_[key] = trim(value);
}

bool Config::has_section(const std::string& section) const {
  const auto it = values_.lower_bound(section + ".");
  return it != values_.end() && it->first.compare(0, section.size() + 1, section + ".") == 0;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_double(key, it->second);
}

long long Config::get_int(const std::string& key, long long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad_value(key, "an integer", v);
  return x;
}

std::uint64_t Config::get_uint(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad_value(key, "a nonnegative integer", v);
  return x;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
  if (it->second == "false" || it->second == "0" || it->second == "no") return false;
  bad_value(key, "true or false", it->second);
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<double> out;
  for (const auto& w : get_words(key)) out.push_back(parse_double(key, w));
  return out;
}

std::vector<std::string> Config::get_words(const std::string& key) const {
  std::istringstream in(get_string(key, ""));
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

namespace {

int as_int(const Config& c, const std::string& key, int fallback) {
  const long long v = c.get_int(key, fallback);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    bad_value(key, "an int", std::to_string(v));
  }
  return static_cast<int>(v);
}

InitialCondition::Kind initial_kind(const std::string& name) {
  if (name == "taylor_green") return InitialCondition::Kind::TaylorGreen;
  if (name == "shear") return InitialCondition::Kind::Shear;
  if (name == "abc") return InitialCondition::Kind::Abc;
  if (name == "random") return InitialCondition::Kind::Random;
  bad_value("initial.kind", "taylor_green, shear, abc or random", name);
}

TransformedScheme scheme_from(const std::string& name) {
  if (name == "rk4") return TransformedScheme::RK4;
  if (name == "heun") return TransformedScheme::Heun;
  bad_value("integrator.scheme", "rk4 or heun", name);
}

// Library errors raised while building a section get the section name.
template <class F>
auto in_section(const std::string& section, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigError) throw;
    throw Error(ErrorKind::ConfigError, "[" + section + "] " + e.what());
  }
}

}  // namespace

Grid grid_from(const Config& c) {
  return in_section("grid", [&] {
    return Grid(as_int(c, "grid.dim", 2), as_int(c, "grid.n", 32), c.get_double("grid.length", 2.0 * std::numbers::pi),
                c.get_double("grid.dealias_fraction", 2.0 / 3.0));
  });
}

TrajectoryConfig trajectory_from(const Config& c) {
  TrajectoryConfig t;
  t.grid = grid_from(c);

  t.initial.kind = initial_kind(c.get_string("initial.kind", "taylor_green"));
  t.initial.amplitude = c.get_double("initial.amplitude", 1.0);
  t.initial.seed = c.get_uint("initial.seed", 1);
  t.initial.kmax = as_int(c, "initial.kmax", 4);
  t.initial.slope = c.get_double("initial.slope", 1.5);
  if (c.has("initial.target_norm")) t.initial.target_norm = c.get_double("initial.target_norm", 0.0);

  in_section("noise", [&] {
    t.noise.kind = noise_kind_from_string(c.get_string("noise.kind", "none"));
    return 0;
  });
  t.noise.alpha = c.get_double("noise.alpha", 0.0);
  t.noise.K = as_int(c, "noise.K", 0);
  t.noise.amplitude = c.get_double("noise.amplitude", 0.1);
  t.noise.decay = c.get_double("noise.decay", 1.0);
  t.noise.g = c.get_string("noise.g", "identity");
  t.noise.seed = c.get_uint("noise.seed", 7);

  in_section("integrator", [&] {
    t.integrator.kind = integrator_kind_from_string(c.get_string("integrator.kind", "euler_maruyama"));
    return 0;
  });
  t.integrator.dt = c.get_double("integrator.dt", 1e-2);
  t.integrator.cfl = c.get_double("integrator.cfl", 0.5);
  t.integrator.T = c.get_double("integrator.T", 1.0);
  t.integrator.cutoff_R = c.get_double("integrator.cutoff_R", 10.0);
  t.integrator.transformed_scheme = scheme_from(c.get_string("integrator.scheme", "rk4"));
  if (!(t.integrator.dt > 0.0)) bad_value("integrator.dt", "a positive number", c.get_string("integrator.dt", ""));
  if (!(t.integrator.T >= 0.0)) bad_value("integrator.T", "a nonnegative number", c.get_string("integrator.T", ""));

  in_section("stopping", [&] {
    for (const auto& w : c.get_words("stopping.rules")) t.rules.push_back(StoppingRule::parse(w));
    return 0;
  });
  t.blowup_level = c.get_double("stopping.blowup_level", 1e6);

  t.monitor_norm = {as_int(c, "monitor.m", 2), c.get_double("monitor.p", 2.0)};
  t.sample_every = as_int(c, "output.sample_every", 1);
  if (t.sample_every < 1) bad_value("output.sample_every", "an integer >= 1", c.get_string("output.sample_every", ""));
  t.track_transform = c.get_bool("output.track_transform", false);
  return t;
}

EnsembleConfig ensemble_from(const Config& c) {
  EnsembleConfig e;
  e.trajectory = trajectory_from(c);
  e.n_paths = c.get_uint("ensemble.n_paths", 16);
  e.master_seed = c.get_uint("ensemble.master_seed", 0);
  e.parallel_width = as_int(c, "ensemble.parallel_width", 1);
  if (e.parallel_width < 1) bad_value("ensemble.parallel_width", "an integer >= 1", std::to_string(e.parallel_width));
  e.write_paths = c.get_bool("output.write_paths", true);
  e.gbm_surrogate = c.get_bool("ensemble.gbm_surrogate", false);
  e.checkpoints = c.get_doubles("ensemble.checkpoints", {});
  e.histogram_bins = as_int(c, "ensemble.histogram_bins", 20);
  if (e.histogram_bins < 1) bad_value("ensemble.histogram_bins", "an integer >= 1", std::to_string(e.histogram_bins));
  if (c.has("ensemble.bound_mu") || c.has("ensemble.bound_R")) {
    GbmParams g;
    g.alpha = e.trajectory.noise.alpha;
    g.mu = c.get_double("ensemble.bound_mu", 3.0 * g.alpha * g.alpha / 8.0);
    g.x0 = c.get_double("ensemble.bound_x0", 1.0);
    g.R = c.get_double("ensemble.bound_R", 16.0);
    e.bound_comparison = g;
  }
  return e;
}

}  // namespace stocheuler::cli
