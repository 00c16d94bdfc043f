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

#include "stocheuler/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <new>
#include <mutex>
#include <tuple>
#include <vector>

#include "stocheuler/error.hpp"

namespace stocheuler::fft {
namespace {

// FFTW's planner is not thread-safe but executing an existing plan on new
// arrays is. Plans are created once per (dim, n, sign) and kept for the
// lifetime of the process.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int dim, int n, int sign) {
    const std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(dim, n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::size_t size = 1;
    int dims[3] = {n, n, n};
    for (int d = 0; d < dim; ++d) size *= static_cast<std::size_t>(n);
    // Planned on fftw_malloc storage; every execution below uses buffers
    // from the same allocator, so the alignment assumption holds.
    auto* in = fftw_alloc_complex(size);
    auto* out = fftw_alloc_complex(size);
    fftw_plan plan = fftw_plan_dft(dim, dims, in, out, sign, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw Error(ErrorKind::InvalidGrid, "FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

// Per-thread aligned work arrays, grown on demand.
class Scratch {
 public:
  static Scratch& local() {
    thread_local Scratch s;
    return s;
  }

  void reserve(std::size_t size) {
    if (size <= size_) return;
    release();
    in_ = fftw_alloc_complex(size);
    out_ = fftw_alloc_complex(size);
    if (in_ == nullptr || out_ == nullptr) throw std::bad_alloc();
    size_ = size;
  }

  Complex* in() noexcept { return reinterpret_cast<Complex*>(in_); }
  const Complex* out() const noexcept { return reinterpret_cast<const Complex*>(out_); }
  void execute(fftw_plan plan) { fftw_execute_dft(plan, in_, out_); }

  Scratch() = default;
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  ~Scratch() { release(); }

 private:
  void release() noexcept {
    fftw_free(in_);
    fftw_free(out_);
    in_ = out_ = nullptr;
    size_ = 0;
  }

  fftw_complex* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  std::size_t size_ = 0;
};

}  // namespace

void forward(const Grid& grid, std::span<const double> physical, std::span<Complex> spectral) {
  const std::size_t size = grid.size();
  const fftw_plan plan = PlanCache::instance().get(grid.dim(), grid.n(), FFTW_FORWARD);
  Scratch& s = Scratch::local();
  s.reserve(size);
  Complex* in = s.in();
  for (std::size_t i = 0; i < size; ++i) in[i] = physical[i];
  s.execute(plan);
  const double scale = 1.0 / static_cast<double>(size);
  const Complex* out = s.out();
  for (std::size_t i = 0; i < size; ++i) spectral[i] = out[i] * scale;
}

void inverse(const Grid& grid, std::span<const Complex> spectral, std::span<double> physical) {
  const std::size_t size = grid.size();
  const fftw_plan plan = PlanCache::instance().get(grid.dim(), grid.n(), FFTW_BACKWARD);
  Scratch& s = Scratch::local();
  s.reserve(size);
  std::copy(spectral.begin(), spectral.end(), s.in());
  s.execute(plan);
  const Complex* out = s.out();
  for (std::size_t i = 0; i < size; ++i) physical[i] = out[i].real();
}

}  // namespace stocheuler::fft
