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

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "stocheuler/ensemble.hpp"
#include "stocheuler/trajectory.hpp"

namespace stocheuler {

nlohmann::json summary_to_json(const EnsembleSummary& s);
/// Throws VersionError when schema_version differs from the current one.
EnsembleSummary summary_from_json(const nlohmann::json& j);

/// Pretty-printed JSON with sorted keys; identical summaries give identical
/// bytes. Throws IoError naming the path.
void save_summary(const EnsembleSummary& s, const std::string& path);
EnsembleSummary load_summary(const std::string& path);

/// One row per sample. '#'-prefixed header lines carry the scalar fields
/// (id, termination, blow-up flag, final time, hits) and a column header
/// names each series; series that were not recorded are omitted.
void write_trajectory_csv(const TrajectoryDiagnostics& d, const std::string& path);
TrajectoryDiagnostics read_trajectory_csv(const std::string& path);

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

/// Creates the directory (and parents); throws IoError on failure.
void ensure_directory(const std::string& path);

}  // namespace stocheuler
