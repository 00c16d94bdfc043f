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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stocheuler::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
/// A checked inequality failed at the configured parameters.
inline constexpr int kExitViolation = 2;

struct Command {
  std::string subcommand;
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  /// "section.key=value", applied after the config file in order.
  std::vector<std::string> overrides;
  bool quiet = false;
};

const std::vector<std::string>& subcommands();

/// Runs one subcommand. The report goes to `out`, errors to `err`; files go
/// under cmd.out_dir.
int dispatch(const Command& cmd, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. Usage problems exit 1 with usage text.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stocheuler::cli
