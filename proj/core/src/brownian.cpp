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

#include "stocheuler/brownian.hpp"

#include <cmath>

#include "stocheuler/error.hpp"

namespace stocheuler {
namespace {

Philox4x32::Counter block_counter(std::uint64_t pair_index, std::uint32_t mode) noexcept {
  return {static_cast<std::uint32_t>(pair_index), static_cast<std::uint32_t>(pair_index >> 32), mode, 0u};
}

}  // namespace

BrownianDriver::BrownianDriver(std::uint64_t master_seed, int n_modes)
    : master_seed_(master_seed), n_modes_(n_modes) {
  if (n_modes < 0) throw Error(ErrorKind::InvalidParams, "noise.K must be >= 0");
}

std::uint64_t BrownianDriver::stream_key(std::uint64_t trajectory_id) const noexcept {
  return splitmix64(splitmix64(master_seed_) ^ splitmix64(trajectory_id + 0x632BE59BD9B4E019ull));
}

Philox4x32::Key BrownianDriver::key_for(std::uint64_t trajectory_id) const noexcept {
  const std::uint64_t k = stream_key(trajectory_id);
  return {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
}

double BrownianDriver::standard_normal(std::uint64_t trajectory_id, std::uint64_t step,
                                       std::uint32_t mode) const noexcept {
  const auto pair = normal_pair(Philox4x32::generate(block_counter(step / 2, mode), key_for(trajectory_id)));
  return pair[step % 2];
}

std::vector<double> BrownianDriver::sample_increments(std::uint64_t trajectory_id, std::uint64_t step,
                                                      double dt) const {
  if (!(dt >= 0.0)) throw Error(ErrorKind::InvalidParams, "time step must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(n_modes_));
  const double scale = std::sqrt(dt);
  const auto key = key_for(trajectory_id);
  for (int k = 0; k < n_modes_; ++k) {
    const auto pair = normal_pair(Philox4x32::generate(block_counter(step / 2, static_cast<std::uint32_t>(k)), key));
    out[static_cast<std::size_t>(k)] = scale * pair[step % 2];
  }
  return out;
}

void BrownianDriver::fill_standard_normals(std::uint64_t trajectory_id, std::uint64_t first_step,
                                           std::uint32_t mode, std::span<double> out) const noexcept {
  const auto key = key_for(trajectory_id);
  std::size_t i = 0;
  std::uint64_t step = first_step;
  if (step % 2 == 1 && i < out.size()) {
    out[i++] = normal_pair(Philox4x32::generate(block_counter(step / 2, mode), key))[1];
    ++step;
  }
  for (; i + 1 < out.size(); i += 2, step += 2) {
    const auto pair = normal_pair(Philox4x32::generate(block_counter(step / 2, mode), key));
    out[i] = pair[0];
    out[i + 1] = pair[1];
  }
  if (i < out.size()) out[i] = normal_pair(Philox4x32::generate(block_counter(step / 2, mode), key))[0];
}

PhiloxStream BrownianDriver::stream(std::uint64_t trajectory_id, std::uint32_t mode) const noexcept {
  return {key_for(trajectory_id), mode, 1u};
}

}  // namespace stocheuler
