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

#include <filesystem>
#include <string>

#include "stocheuler/spectral_field.hpp"

namespace stocheuler::snapshot {

// Binary layout (little-endian):
//   char[4]  magic "SEFS"
//   u32      format version (1)
//   u32      dim, n, components
//   u32      flags (bit 0: divergence_free)
//   f64      length, dealias_fraction
//   u64      record count (= n^dim, flat row-major order)
//   records: i32 k[dim], then per component f64 re, f64 im
// Reading back a written file reproduces the field bit for bit.
inline constexpr std::uint32_t kBinaryVersion = 1;

void write_binary(const SpectralField& field, const std::filesystem::path& path);
SpectralField read_binary(const std::filesystem::path& path);

// JSON form: {"format": "stocheuler-field", "version": 1, "dim", "n", "length",
// "dealias_fraction", "components", "divergence_free",
// "modes": [{"k": [k1, k2(, k3)], "c": [[re, im], ...]}, ...]}
// Only nonzero modes are listed.
std::string to_json(const SpectralField& field);
SpectralField from_json(const std::string& text);

}  // namespace stocheuler::snapshot
