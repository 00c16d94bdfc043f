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

#include "stocheuler/gbm.hpp"

#include <atomic>
#include <cmath>

#include <boost/random/normal_distribution.hpp>

#include "stocheuler/brownian.hpp"
#include "stocheuler/error.hpp"
#include "stocheuler/parallel.hpp"

namespace stocheuler {

double gbm_critical_exponent(const GbmParams& p) {
  if (p.alpha == 0.0 || !std::isfinite(p.alpha)) throw Error(ErrorKind::InvalidParams, "gbm.alpha must be nonzero");
  return 1.0 - 2.0 * p.mu / (p.alpha * p.alpha);
}

double gbm_survival_bound(const GbmParams& p) {
  const double lambda = gbm_critical_exponent(p);
  if (!(p.x0 > 0.0)) throw Error(ErrorKind::InvalidParams, "gbm.x0 must be > 0");
  if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidParams, "gbm.mu must be below alpha^2 / 2");
  if (!(p.R > p.x0)) throw Error(ErrorKind::InvalidParams, "gbm.R must exceed gbm.x0");
  return -std::expm1(lambda * std::log(p.x0 / p.R));
}

GbmExitEstimate gbm_exit_mc(const GbmParams& p, double T, double dt, std::uint64_t n_paths, std::uint64_t seed,
                            int threads) {
  if (!(T > 0.0) || !(dt > 0.0) || n_paths == 0) {
    throw Error(ErrorKind::InvalidParams, "gbm-exit needs T > 0, dt > 0 and n_paths >= 1");
  }
  if (!(p.x0 > 0.0)) throw Error(ErrorKind::InvalidParams, "gbm.x0 must be > 0");

  GbmExitEstimate out;
  out.n_paths = n_paths;
  if (p.R <= p.x0) {
    out.n_hit = n_paths;
  } else {
    const auto steps = static_cast<std::uint64_t>(std::floor(T / dt + 1e-9));
    const double drift = (p.mu - 0.5 * p.alpha * p.alpha) * dt;
    const double vol = p.alpha * std::sqrt(dt);
    const double barrier = std::log(p.R / p.x0);
    const BrownianDriver driver(seed, 1);
    std::atomic<std::uint64_t> hits{0};
    parallel_for(n_paths, effective_threads(threads), [&](std::size_t path) {
      PhiloxStream bits = driver.stream(path, 0);
      boost::random::normal_distribution<double> normal;
      double y = 0.0;
      for (std::uint64_t i = 0; i < steps; ++i) {
        y += drift + vol * normal(bits);
        if (y >= barrier) {
          ++hits;
          return;
        }
      }
    });
    out.n_hit = hits.load();
  }
  out.p_hit = static_cast<double>(out.n_hit) / static_cast<double>(n_paths);
  out.interval = wilson_interval(out.n_hit, n_paths);
  return out;
}

}  // namespace stocheuler
