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

#include "soundq/bark.hpp"
#include "soundq/spectral.hpp"

namespace soundq {

/// Specific loudness N'(z) in sone/Bark on a uniform Bark grid.
struct SpecificLoudnessPattern {
  BarkScale scale;
  std::vector<double> values;  // one per grid bin, >= 0
};

enum class SoundField { Free, Diffuse };

struct LoudnessOptions {
  SoundField field = SoundField::Free;
  /// When false, a spectrum that does not cover 45 Hz - 10 kHz raises
  /// Error{MissingBandCoverage}; when true, missing bands count as silent.
  bool zero_fill_missing = false;
};

/// Stationary loudness per DIN 45631 / ISO 532 B: unweighted third-octave
/// levels to excitation per critical band (with the standard low-frequency
/// grouping), threshold in quiet, and upper-slope spreading, sampled on the
/// 0.1 Bark grid. Requires a Z-weighted spectrum.
SpecificLoudnessPattern specific_loudness(const ThirdOctaveSpectrum& spectrum,
                                          const LoudnessOptions& options = {});

/// Midpoint-rule integral of N' over [0, 24] Bark, in sone.
double total_loudness_sone(const SpecificLoudnessPattern& pattern);

/// Critical-band level at the absolute hearing threshold (threshold in
/// quiet) for the band containing critical-band rate z, per the stationary
/// loudness tables.
double threshold_in_quiet_db(double z);

/// s = 2^((P - 40) / 10)
double sone_from_phon(double phon);

/// P = 40 + 10 * log2(S). Throws Error{InvalidArgument} for S <= 0.
double phon_from_sone(double sone);

struct LoudnessValue {
  double sone = 0.0;
  std::optional<double> phon;  // defined only for sone > 0
};

LoudnessValue make_loudness_value(double sone);

struct LoudnessSeries {
  double hop_s = 0.0;
  double window_s = 0.0;
  std::vector<double> sone;
};

/// Windowed stationary loudness: one value per hop over 0.5 s segments.
LoudnessSeries loudness_series(const AudioBuffer& buffer, std::size_t channel,
                               double hop_s, const LoudnessOptions& options = {});

struct SeriesStats {
  double mean = 0.0;
  double max = 0.0;
  double std_pop = 0.0;
};

SeriesStats series_stats(const std::vector<double>& values);

/// Level exceeded 5% of the time (the N5 statistic).
double percentile_exceeded_5(const std::vector<double>& values);

/// CSV rows "z_bark,n_prime".
std::string pattern_to_csv(const SpecificLoudnessPattern& pattern);

}  // namespace soundq
