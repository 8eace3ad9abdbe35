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

#include "soundq/bark.hpp"

#include <algorithm>

#include "soundq/error.hpp"

namespace soundq {

// Traunmueller's rational approximation of the Zwicker critical-band scale,
// with his corrections below 2 Bark and above 20.1 Bark.

double hz_to_bark(double frequency_hz) {
  if (!(frequency_hz > 0.0)) {
    throw Error(Errc::InvalidArgument, "frequency must be positive");
  }
  double z = 26.81 * frequency_hz / (1960.0 + frequency_hz) - 0.53;
  if (z < 2.0) {
    z = 0.3 + 0.85 * z;
  } else if (z > 20.1) {
    z = 1.22 * z - 4.422;
  }
  return std::clamp(z, 0.0, kBarkMax);
}

double bark_to_hz(double z) {
  if (z < 0.0 || z > kBarkMax) {
    throw Error(Errc::InvalidArgument, "critical-band rate must lie in [0, 24]");
  }
  double raw = z;
  if (z < 2.0) {
    raw = (z - 0.3) / 0.85;
  } else if (z > 20.1) {
    raw = (z + 4.422) / 1.22;
  }
  return 1960.0 * (raw + 0.53) / (26.28 - raw);
}

}  // namespace soundq
