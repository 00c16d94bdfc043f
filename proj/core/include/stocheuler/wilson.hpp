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

namespace stocheuler {

struct Interval {
  double lower = 0.0;
  double upper = 1.0;

  bool contains(double x) const noexcept { return lower <= x && x <= upper; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Two-sided standard normal quantile for the given confidence level.
double normal_quantile_two_sided(double confidence);

/// Wilson score interval for `successes` out of `trials` at `confidence`
/// (default 99%). Endpoints are clamped to [0, 1].
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence = 0.99);

}  // namespace stocheuler
