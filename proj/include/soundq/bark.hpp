// Copyright 2026 The SoundQ Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>

namespace soundq {

inline constexpr double kBarkMax = 24.0;

/// Critical-band rate z for a frequency, Traunmueller's approximation of the
/// Zwicker critical-band scale with the published endpoint corrections,
/// clamped to [0, 24] Bark. Strictly increasing below the clamp region.
/// Throws Error{InvalidArgument} for non-positive frequencies.
double hz_to_bark(double frequency_hz);

/// Inverse of hz_to_bark on [0, 24].
double bark_to_hz(double z);

/// Uniform grid over [0, 24] Bark; values are attached to bin midpoints so
/// midpoint-rule integrals are exact for piecewise-linear patterns.
struct BarkScale {
  double dz = 0.1;

  std::size_t bins() const { return static_cast<std::size_t>(kBarkMax / dz + 0.5); }
  double midpoint(std::size_t bin) const { return (static_cast<double>(bin) + 0.5) * dz; }
};

}  // namespace soundq
