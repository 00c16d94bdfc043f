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

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace stocheuler {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// Stateless: the output is a pure function of (counter, key).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter generate(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Sequential 32-bit stream over consecutive Philox blocks of one key, as a
/// UniformRandomBitGenerator. Word 3 of the counter is fixed by the caller
/// so that streams never share blocks with the indexed draws.
class PhiloxStream {
 public:
  using result_type = std::uint32_t;

  PhiloxStream(Philox4x32::Key key, std::uint32_t lane, std::uint32_t tag) noexcept
      : key_(key), lane_(lane), tag_(tag) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return 0xFFFFFFFFu; }

  result_type operator()() noexcept {
    if (used_ == 4) {
      block_ = Philox4x32::generate(
          {static_cast<std::uint32_t>(next_), static_cast<std::uint32_t>(next_ >> 32), lane_, tag_}, key_);
      ++next_;
      used_ = 0;
    }
    return block_[used_++];
  }

 private:
  Philox4x32::Key key_;
  std::uint32_t lane_;
  std::uint32_t tag_;
  std::uint64_t next_ = 0;
  Philox4x32::Counter block_{};
  int used_ = 4;
};

/// SplitMix64 finalizer, used to derive independent stream keys.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Two independent N(0,1) variates from one Philox block (Box-Muller on two
/// 53-bit uniforms in (0, 1]).
inline std::array<double, 2> normal_pair(const Philox4x32::Counter& block) noexcept {
  constexpr double kTwo53 = 9007199254740992.0;
  const std::uint64_t a = (static_cast<std::uint64_t>(block[0]) << 32 | block[1]) >> 11;
  const std::uint64_t b = (static_cast<std::uint64_t>(block[2]) << 32 | block[3]) >> 11;
  const double u1 = (static_cast<double>(a) + 1.0) / kTwo53;
  const double u2 = static_cast<double>(b) / kTwo53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace stocheuler
