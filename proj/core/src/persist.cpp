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

#include "stocheuler/persist.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stocheuler/error.hpp"

namespace stocheuler {
namespace {

using nlohmann::json;

// JSON has no infinities or NaN; store them as strings.
json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw Error(ErrorKind::IoError, "unexpected string '" + s + "' in numeric field");
  }
  return j.get<double>();
}

std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& path) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::IoError, path + ": cannot parse number '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

Termination termination_from_string(const std::string& s, const std::string& path) {
  for (auto t : {Termination::Completed, Termination::StoppingRule, Termination::BlowUpLevel, Termination::NonFinite,
                 Termination::CflViolation}) {
    if (to_string(t) == s) return t;
  }
  throw Error(ErrorKind::IoError, path + ": unknown termination '" + s + "'");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

// Column name -> series member, in file order.
using Series = std::vector<double> TrajectoryDiagnostics::*;
const std::vector<std::pair<std::string, Series>>& columns() {
  static const std::vector<std::pair<std::string, Series>> cols = {
      {"time", &TrajectoryDiagnostics::time},
      {"l2", &TrajectoryDiagnostics::l2},
      {"wmp", &TrajectoryDiagnostics::wmp},
      {"w1inf", &TrajectoryDiagnostics::w1inf},
      {"curl_sup", &TrajectoryDiagnostics::curl_sup},
      {"gamma", &TrajectoryDiagnostics::gamma},
      {"brownian", &TrajectoryDiagnostics::brownian},
      {"rho_gbm", &TrajectoryDiagnostics::rho_gbm},
      {"transform_residual", &TrajectoryDiagnostics::transform_residual},
  };
  return cols;
}

}  // namespace

json summary_to_json(const EnsembleSummary& s) {
  json j;
  j["schema_version"] = s.schema_version;
  j["mode"] = s.mode;
  j["master_seed"] = s.master_seed;
  j["n_paths"] = s.n_paths;
  j["n_failed"] = s.n_failed;
  j["n_survived"] = s.n_survived;
  j["n_blowup"] = s.n_blowup;
  j["survival_fraction"] = number(s.survival_fraction);
  j["wilson_99"] = {number(s.wilson_99.lower), number(s.wilson_99.upper)};
  j["histograms"] = json::array();
  for (const auto& h : s.histograms) {
    json e;
    e["rule"] = h.rule;
    e["hits"] = h.hits;
    e["edges"] = json::array();
    for (double x : h.edges) e["edges"].push_back(number(x));
    e["counts"] = h.counts;
    j["histograms"].push_back(e);
  }
  j["analytic_bound"] = s.analytic_bound ? number(*s.analytic_bound) : json(nullptr);
  j["checkpoints"] = json::array();
  for (const auto& c : s.checkpoints) {
    j["checkpoints"].push_back({{"time", number(c.time)},
                                {"count", c.count},
                                {"mean_wmp", number(c.mean_wmp)},
                                {"max_wmp", number(c.max_wmp)},
                                {"mean_w1inf", number(c.mean_w1inf)},
                                {"max_w1inf", number(c.max_w1inf)}});
  }
  j["partial"] = s.partial;
  j["failures"] = s.failures;
  j["discretization"] = {{"dim", s.dim},          {"n", s.n},          {"T", number(s.T)},
                         {"dt", number(s.dt)},    {"integrator", s.integrator},
                         {"noise", s.noise},      {"alpha", number(s.alpha)}};
  return j;
}

EnsembleSummary summary_from_json(const json& j) {
  EnsembleSummary s;
  try {
    s.schema_version = j.at("schema_version").get<int>();
    if (s.schema_version != EnsembleSummary::kSchemaVersion) {
      throw Error(ErrorKind::VersionError, "summary schema_version " + std::to_string(s.schema_version) +
                                               " is not the supported version " +
                                               std::to_string(EnsembleSummary::kSchemaVersion));
    }
    s.mode = j.at("mode").get<std::string>();
    s.master_seed = j.at("master_seed").get<std::uint64_t>();
    s.n_paths = j.at("n_paths").get<std::uint64_t>();
    s.n_failed = j.at("n_failed").get<std::uint64_t>();
    s.n_survived = j.at("n_survived").get<std::uint64_t>();
    s.n_blowup = j.at("n_blowup").get<std::uint64_t>();
    s.survival_fraction = number_from(j.at("survival_fraction"));
    s.wilson_99 = {number_from(j.at("wilson_99").at(0)), number_from(j.at("wilson_99").at(1))};
    for (const auto& e : j.at("histograms")) {
      RuleHistogram h;
      h.rule = e.at("rule").get<std::string>();
      h.hits = e.at("hits").get<std::uint64_t>();
      for (const auto& x : e.at("edges")) h.edges.push_back(number_from(x));
      h.counts = e.at("counts").get<std::vector<std::uint64_t>>();
      s.histograms.push_back(std::move(h));
    }
    if (!j.at("analytic_bound").is_null()) s.analytic_bound = number_from(j.at("analytic_bound"));
    for (const auto& c : j.at("checkpoints")) {
      s.checkpoints.push_back({number_from(c.at("time")), c.at("count").get<std::uint64_t>(),
                               number_from(c.at("mean_wmp")), number_from(c.at("max_wmp")),
                               number_from(c.at("mean_w1inf")), number_from(c.at("max_w1inf"))});
    }
    s.partial = j.at("partial").get<bool>();
    s.failures = j.at("failures").get<std::vector<std::string>>();
    const auto& d = j.at("discretization");
    s.dim = d.at("dim").get<int>();
    s.n = d.at("n").get<int>();
    s.T = number_from(d.at("T"));
    s.dt = number_from(d.at("dt"));
    s.integrator = d.at("integrator").get<std::string>();
    s.noise = d.at("noise").get<std::string>();
    s.alpha = number_from(d.at("alpha"));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::IoError, std::string("malformed summary: ") + e.what());
  }
  return s;
}

void save_summary(const EnsembleSummary& s, const std::string& path) {
  auto out = open_out(path);
  out << summary_to_json(s).dump(2) << '\n';
  finish(out, path);
}

EnsembleSummary load_summary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::IoError, path + ": " + e.what());
  }
  try {
    return summary_from_json(j);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

void write_trajectory_csv(const TrajectoryDiagnostics& d, const std::string& path) {
  auto out = open_out(path);
  out << "# trajectory_id=" << d.trajectory_id << '\n';
  out << "# termination=" << to_string(d.termination) << '\n';
  out << "# blow_up=" << (d.blow_up_flag ? 1 : 0) << '\n';
  out << "# final_time=" << format(d.final_time) << '\n';
  for (const auto& h : d.hits) {
    out << "# hit=" << h.rule_index << ',' << format(h.time) << ',' << format(h.value) << '\n';
  }
  std::vector<Series> present;
  bool first = true;
  for (const auto& [name, member] : columns()) {
    if ((d.*member).empty()) continue;
    if ((d.*member).size() != d.time.size()) {
      throw Error(ErrorKind::ShapeMismatch, "series '" + name + "' length differs from time");
    }
    out << (first ? "" : ",") << name;
    first = false;
    present.push_back(member);
  }
  out << '\n';
  for (std::size_t i = 0; i < d.time.size(); ++i) {
    for (std::size_t c = 0; c < present.size(); ++c) out << (c ? "," : "") << format((d.*present[c])[i]);
    out << '\n';
  }
  finish(out, path);
}

TrajectoryDiagnostics read_trajectory_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  TrajectoryDiagnostics d;
  std::string line;
  std::vector<Series> present;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "trajectory_id") {
        d.trajectory_id = std::stoull(value);
      } else if (key == "termination") {
        d.termination = termination_from_string(value, path);
      } else if (key == "blow_up") {
        d.blow_up_flag = value == "1";
      } else if (key == "final_time") {
        d.final_time = parse_double(value, path);
      } else if (key == "hit") {
        const auto f = split(value, ',');
        if (f.size() != 3) throw Error(ErrorKind::IoError, path + ": malformed hit line");
        d.hits.push_back({static_cast<std::size_t>(std::stoull(f[0])), parse_double(f[1], path),
                          parse_double(f[2], path)});
      }
      continue;
    }
    const auto cells = split(line, ',');
    if (!header_seen) {
      for (const auto& name : cells) {
        bool known = false;
        for (const auto& [col, member] : columns()) {
          if (col == name) {
            present.push_back(member);
            known = true;
          }
        }
        if (!known) throw Error(ErrorKind::IoError, path + ": unknown column '" + name + "'");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != present.size()) throw Error(ErrorKind::IoError, path + ": ragged row");
    for (std::size_t c = 0; c < cells.size(); ++c) (d.*present[c]).push_back(parse_double(cells[c], path));
  }
  if (!header_seen) throw Error(ErrorKind::IoError, path + ": missing column header");
  return d;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  auto out = open_out(path);
  out << "alpha,kappa,log_kappa,threshold,initial_norm,exceed_fraction,ci_lower,ci_upper,n_paths,flagged\n";
  for (const auto& r : rows) {
    out << format(r.alpha) << ',' << format(r.kappa) << ',' << format(r.log_kappa) << ',' << format(r.threshold)
        << ',' << format(r.initial_norm) << ',' << format(r.exceed_fraction) << ',' << format(r.interval.lower)
        << ',' << format(r.interval.upper) << ',' << r.n_paths << ',' << (r.flagged ? 1 : 0) << '\n';
  }
  finish(out, path);
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create directory '" + path + "': " + ec.message());
}

}  // namespace stocheuler
