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
#include <span>
#include <string>
#include <vector>

#include "soundq/audio.hpp"

namespace soundq {

enum class Weighting { Z, A };

/// IEC 61672 A-weighting correction in dB, normalized to exactly 0 dB at
/// 1000 Hz. Throws Error{InvalidArgument} for non-positive frequencies.
double a_weighting_db(double frequency_hz);

struct ThirdOctaveBand {
  double center_hz = 0.0;            // nominal IEC preferred value
  std::optional<double> level_db;    // nullopt = below floor (power < (20 uPa)^2)
};

struct ThirdOctaveSpectrum {
  Weighting weighting = Weighting::Z;
  std::vector<ThirdOctaveBand> bands;
};

/// Spectral estimation parameters: Hann-windowed averaged periodograms.
struct WelchParams {
  double window_s = 0.5;
  double overlap = 0.5;  // fraction of window_len
};

/// IEC preferred one-third-octave bands, 25 Hz - 10 kHz. Exact centers sit
/// on the base-2 ladder 1000*2^(n/3); edges at exact*2^(+-1/6) so adjacent
/// bands tile without gaps.
struct ThirdOctaveBandDef {
  double nominal_hz = 0.0;
  double exact_hz = 0.0;
  double lo_hz = 0.0;
  double hi_hz = 0.0;
};

/// Band definitions whose upper edge fits below `nyquist_hz`.
std::vector<ThirdOctaveBandDef> third_octave_band_defs(double nyquist_hz);

/// One-third-octave band levels, 10*log10(band power / (20 uPa)^2), band
/// edges at center*2^(+-1/6) on the exact base-2 ladder. Bands whose upper
/// edge exceeds Nyquist are omitted. A-weighting, when requested, is applied
/// at the exact band centers.
ThirdOctaveSpectrum third_octave(const AudioBuffer& buffer, std::size_t channel,
                                 Weighting weighting, const WelchParams& params = {});

/// Same analysis over a bare sample span; building block for windowed series.
ThirdOctaveSpectrum third_octave_of_span(std::span<const double> samples,
                                         double sample_rate_hz, Weighting weighting,
                                         const WelchParams& params = {});

struct SplSeries {
  double interval_s = 0.0;
  double start_s = 0.0;
  std::vector<std::optional<double>> levels_dba;  // nullopt = below floor
};

/// A-weighted level per consecutive interval, floor(duration/interval)
/// entries. Weighting is applied through the third-octave band powers.
SplSeries spl_time_series(const AudioBuffer& buffer, std::size_t channel,
                          double interval_s, const WelchParams& params = {});

struct LevelObservation {
  double level_db = 0.0;
  double time_fraction = 0.0;  // alpha_i in (0, 1]
};

struct LevelObservations {
  std::vector<LevelObservation> entries;
};

/// Equivalent level: 10*log10(sum_i alpha_i * 10^(L_i/10)).
/// Enforces the observation invariants (n >= 1, alpha_i in (0,1],
/// sum alpha_i <= 1 + 1e-9).
double la_eq(const LevelObservations& obs);

enum class LaEqMode {
  TimeFraction,  // per-reading weight alpha/n, so equal levels reproduce themselves
  LiteralSum,    // weight alpha per reading, no time normalization
};

/// Aggregates a level series into LA_eq(alpha*100). Below-floor readings
/// contribute zero power; returns nullopt when every reading is below floor.
std::optional<double> la_eq_from_series(const SplSeries& series, double alpha,
                                        LaEqMode mode = LaEqMode::TimeFraction);

/// "LA_eq(90)"-style label for report and plot captions.
std::string la_eq_label(double alpha);

/// CSV rows "center_hz,level_db"; below-floor levels render as empty fields.
std::string spectrum_to_csv(const ThirdOctaveSpectrum& spectrum);

}  // namespace soundq
