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

#include <optional>
#include <string>
#include <vector>

#include "soundq/audio.hpp"
#include "soundq/loudness.hpp"

namespace soundq {

struct SharpnessConfig {
  double scale = 0.11;
  /// g(z) boundary: 1 below z(3 kHz), high_weight from there to 24 Bark.
  double boundary_bark;  // defaults to hz_to_bark(3000)
  double high_weight = 4.0;

  SharpnessConfig();
};

/// SH = scale * integral(N' g(z) z dz) / integral(N' dz), both over
/// [0, 24] Bark on the pattern grid. Throws Error{ZeroLoudness} when the
/// total loudness is zero.
double sharpness_acum(const SpecificLoudnessPattern& pattern,
                      const SharpnessConfig& config = {});

/// Per-critical-band amplitude modulation: dominant envelope frequency and
/// perceived masking depth.
struct ModulationBand {
  double z_lo = 0.0;
  double z_hi = 0.0;
  double f_mod_hz = 0.0;     // 0 = no modulation detected
  double delta_l_db = 0.0;   // 20*log10(envelope p95 / p5)
  double weight = 0.0;       // band mean-square pressure, Pa^2
};

struct ModulationPattern {
  std::vector<ModulationBand> bands;
};

struct ModulationParams {
  /// Number of 1-Bark analysis bands over [0, 24].
  int band_count = 24;
  /// Envelope peaks are searched in [max(lowest_fmod_hz, 2/duration), highest_fmod_hz].
  double lowest_fmod_hz = 0.5;
  double highest_fmod_hz = 400.0;
  /// When set, inputs shorter than two periods of this modulation frequency
  /// raise Error{BufferTooShort} instead of silently restricting the band.
  std::optional<double> required_min_fmod_hz;
  /// Bands more than this far below the strongest band are treated as silent.
  double relative_gate_db = 70.0;
  /// Envelope excursions below this are reported as unmodulated.
  double min_delta_l_db = 0.1;
  /// Raised-cosine taper applied to each end of the segment before the band
  /// transform. Edge transients otherwise ring across the brick-wall bands
  /// and register as spurious low-frequency modulation. Envelope statistics
  /// and the envelope spectrum are taken over the untapered interior.
  double edge_taper_fraction = 0.05;
};

/// Band-passes the signal per critical band, takes the analytic-signal
/// magnitude envelope, and reads the dominant envelope spectral peak
/// (f_mod) and the 95th/5th percentile excursion (delta L).
ModulationPattern extract_modulation(const AudioBuffer& buffer, std::size_t channel,
                                     const ModulationParams& params = {});

struct RoughnessConfig {
  double cal;  // defaults to the asper-reference anchor constant
  double band_lo_hz = 20.0;
  double band_hi_hz = 300.0;

  RoughnessConfig();
};

/// R = cal * integral(f_mod * delta_L dz) over bands whose f_mod lies in
/// [20, 300] Hz; bands outside contribute zero.
double roughness_asper(const ModulationPattern& pattern,
                       const RoughnessConfig& config = {});

enum class FluctuationMode { Standard, Literal };

struct FluctuationConfig {
  double scale = 0.008;
  FluctuationMode mode = FluctuationMode::Standard;
  double cal;  // defaults to the vacil-reference anchor constant for the mode
  double band_lo_hz = 0.5;
  double band_hi_hz = 20.0;

  FluctuationConfig();
  static FluctuationConfig for_mode(FluctuationMode mode);
};

/// Standard mode: F = cal * sum 0.008 * delta_L * dz / ((f/4) + (4/f)).
/// Literal mode keeps the extra f_mod factor in the numerator. Only bands
/// with f_mod in [0.5, 20] Hz contribute; each band uses its own f_mod in
/// the denominator.
double fluctuation_vacil(const ModulationPattern& pattern,
                         const FluctuationConfig& config = {});

/// CSV rows "z_bark,f_mod_hz,delta_l_db" (z at band centers).
std::string modulation_to_csv(const ModulationPattern& pattern);

const char* to_string(FluctuationMode mode);
std::optional<FluctuationMode> parse_fluctuation_mode(const std::string& text);

}  // namespace soundq
