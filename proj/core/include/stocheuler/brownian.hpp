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
#include <span>
#include <vector>

#include "stocheuler/philox.hpp"

namespace stocheuler {

/// Source of Wiener increments for K independent scalar Brownian motions.
///
/// The driver holds no mutable state. The standard normal behind the
/// increment of (trajectory, step, mode) is a pure function of
/// (master_seed, trajectory, step, mode): the trajectory picks a Philox key
/// derived from the master seed, and the counter encodes (step / 2, mode).
/// Workers can therefore draw increments for any path in any order.
class BrownianDriver {
 public:
  BrownianDriver(std::uint64_t master_seed, int n_modes);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  int n_modes() const noexcept { return n_modes_; }

  /// Key lineage: master seed -> per-trajectory 64-bit stream key.
  std::uint64_t stream_key(std::uint64_t trajectory_id) const noexcept;

  double standard_normal(std::uint64_t trajectory_id, std::uint64_t step, std::uint32_t mode) const noexcept;

  /// K increments for one step, each N(0, dt). dt = 0 yields zeros.
  std::vector<double> sample_increments(std::uint64_t trajectory_id, std::uint64_t step, double dt) const;

  /// Standard normals for consecutive steps of one mode; identical to
  /// calling standard_normal step by step but twice as cheap.
  void fill_standard_normals(std::uint64_t trajectory_id, std::uint64_t first_step, std::uint32_t mode,
                             std::span<double> out) const noexcept;

  /// Sequential uniform bits for (trajectory, mode), disjoint from the
  /// indexed draws above. For consumers that only ever walk a path forward
  /// and want a faster normal sampler than Box-Muller.
  PhiloxStream stream(std::uint64_t trajectory_id, std::uint32_t mode) const noexcept;

 private:
  Philox4x32::Key key_for(std::uint64_t trajectory_id) const noexcept;

  std::uint64_t master_seed_;
  int n_modes_;
};

}  // namespace stocheuler
