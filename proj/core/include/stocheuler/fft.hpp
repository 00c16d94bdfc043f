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

#include <span>

#include "stocheuler/spectral_field.hpp"

namespace stocheuler::fft {

/// Physical samples -> Fourier-series coefficients (scaled by 1/N).
void forward(const Grid& grid, std::span<const double> physical, std::span<Complex> spectral);

/// Fourier-series coefficients -> physical samples (real part of the
/// unnormalized backward transform).
void inverse(const Grid& grid, std::span<const Complex> spectral, std::span<double> physical);

}  // namespace stocheuler::fft
