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

#include <cstdint>

#include "soundq/audio.hpp"

namespace soundq {

/// Raised-cosine fade applied to both ends of every generated signal to
/// avoid clicks. The fade region is excluded from RMS level accounting.
inline constexpr double kSynthFadeSeconds = 0.010;

struct ToneSpec {
  double carrier_frequency_hz = 1000.0;
  double level_db_spl = 40.0;
  double duration_s = 2.0;
  double sample_rate_hz = 48000.0;
};

struct AmToneSpec {
  ToneSpec tone;
  double modulation_frequency_hz = 4.0;
  double modulation_depth = 1.0;  // fraction in [0, 1]
};

struct NarrowbandNoiseSpec {
  double center_frequency_hz = 1000.0;
  double bandwidth_hz = 140.0;
  double level_db_spl = 60.0;
  double duration_s = 2.0;
  double sample_rate_hz = 48000.0;
  std::uint64_t seed = 1;
};

/// Sinusoid whose steady-state RMS pressure sits at the requested dB SPL.
AudioBuffer pure_tone(const ToneSpec& spec);

/// p(t) = A * (1 + depth * sin(2 pi f_mod t)) * sin(2 pi f_c t), with A
/// chosen so the overall RMS matches the requested level. depth = 0 is
/// sample-identical to pure_tone of the same spec.
AudioBuffer am_tone(const AmToneSpec& spec);

/// Gaussian noise band-limited to [fc - bw/2, fc + bw/2] by masking a white
/// draw in the frequency domain. Deterministic for a given seed.
AudioBuffer narrowband_noise(const NarrowbandNoiseSpec& spec);

}  // namespace soundq
