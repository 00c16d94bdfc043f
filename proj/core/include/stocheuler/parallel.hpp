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

#include <cstddef>
#include <functional>

namespace stocheuler {

/// Worker count from STOCHEULER_THREADS (if set and positive) capped by
/// `requested`; at least 1.
int effective_threads(int requested);

/// Calls body(i) for every i in [0, n) on up to `threads` workers pulling
/// indices from a shared counter. The first exception thrown by a body is
/// rethrown after all workers have joined.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace stocheuler
