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

#include "soundq/loudness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "soundq/error.hpp"

namespace soundq {

namespace {

// Parameter tables of the DIN 45631 / ISO 532 B stationary loudness
// program (Zwicker et al., J. Acoust. Soc. Jpn. (E) 12, 1991). Indices
// follow the program: 28 third-octave inputs 25 Hz - 12.5 kHz, 20
// approximated critical bands.

// Input band centers.
constexpr std::array<double, 28> kDinCentersHz = {
    25.0,   31.5,   40.0,   50.0,   63.0,   80.0,   100.0,  125.0,  160.0,  200.0,
    250.0,  315.0,  400.0,  500.0,  630.0,  800.0,  1000.0, 1250.0, 1600.0, 2000.0,
    2500.0, 3150.0, 4000.0, 5000.0, 6300.0, 8000.0, 10000.0, 12500.0};

// Ranges of the low-frequency level corrections per equal-loudness contours.
constexpr std::array<double, 8> kRap = {45.0, 55.0, 65.0, 71.0, 80.0, 90.0, 100.0, 120.0};

// Level reductions for the lowest eleven third-octave bands within the
// ranges defined by kRap.
constexpr double kDll[8][11] = {
    {-32.0, -24.0, -16.0, -10.0, -5.0, 0.0, -7.0, -3.0, 0.0, -2.0, 0.0},
    {-29.0, -22.0, -15.0, -10.0, -4.0, 0.0, -7.0, -2.0, 0.0, -2.0, 0.0},
    {-27.0, -19.0, -14.0, -9.0, -4.0, 0.0, -6.0, -2.0, 0.0, -2.0, 0.0},
    {-25.0, -17.0, -12.0, -9.0, -3.0, 0.0, -5.0, -2.0, 0.0, -2.0, 0.0},
    {-23.0, -16.0, -11.0, -7.0, -3.0, 0.0, -4.0, -1.0, 0.0, -1.0, 0.0},
    {-20.0, -14.0, -10.0, -6.0, -3.0, 0.0, -4.0, -1.0, 0.0, -1.0, 0.0},
    {-18.0, -12.0, -9.0, -6.0, -2.0, 0.0, -3.0, -1.0, 0.0, -1.0, 0.0},
    {-15.0, -10.0, -8.0, -4.0, -2.0, 0.0, -3.0, -1.0, 0.0, -1.0, 0.0},
};

// Critical-band level at the threshold in quiet.
constexpr std::array<double, 20> kLtq = {30.0, 18.0, 12.0, 8.0, 7.0, 6.0, 5.0,
                                         4.0,  3.0,  3.0,  3.0, 3.0, 3.0, 3.0,
                                         3.0,  3.0,  3.0,  3.0, 3.0, 3.0};

// Transmission correction of the outer/middle ear.
constexpr std::array<double, 20> kA0 = {0.0, 0.0, 0.0,  0.0,  0.0,  0.0,  0.0,
                                        0.0, 0.0, 0.0,  -0.5, -1.6, -3.2, -5.4,
                                        -5.6, -4.0, -1.5, 2.0,  5.0,  12.0};

// Free-to-diffuse field level difference.
constexpr std::array<double, 20> kDdf = {0.0, 0.0,  0.5,  0.9,  1.2,  1.6, 2.3,
                                         2.8, 3.0,  2.0,  0.0,  -1.4, -2.0, -1.9,
                                         -1.0, 0.5, 3.0,  4.0,  4.3,  4.0};

// Adaptation of third-octave levels to critical-band levels.
constexpr std::array<double, 20> kDcb = {-0.25, -0.6, -0.8, -0.8, -0.5, 0.0, 0.5,
                                         1.1,   1.5,  1.7,  1.8,  1.8,  1.7, 1.6,
                                         1.4,   1.2,  0.8,  0.5,  0.0,  -0.5};

// Upper limits of the approximated critical bands, in Bark.
constexpr std::array<double, 21> kZup = {0.9,  1.8,  2.8,  3.5,  4.4,  5.4,  6.6,
                                         7.9,  9.2,  10.6, 12.3, 13.8, 15.2, 16.7,
                                         18.1, 19.3, 20.6, 21.8, 22.7, 23.6, 24.0};

// Specific-loudness ranges that select the upper-slope steepness.
constexpr std::array<double, 18> kRns = {21.5, 18.0, 15.1, 11.5, 9.0,  6.1,
                                         4.4,  3.1,  2.13, 1.36, 0.82, 0.42,
                                         0.30, 0.22, 0.15, 0.10, 0.035, 0.0};

// Upper-slope steepness per range and critical band, sone/(Bark*Bark).
constexpr double kUsl[18][8] = {
    {13.0, 8.2, 6.3, 5.5, 5.5, 5.5, 5.5, 5.5},
    {9.0, 7.5, 6.0, 5.1, 4.5, 4.5, 4.5, 4.5},
    {7.8, 6.7, 5.6, 4.9, 4.4, 3.9, 3.9, 3.9},
    {6.2, 5.4, 4.6, 4.0, 3.5, 3.2, 3.2, 3.2},
    {4.5, 3.8, 3.6, 3.2, 2.9, 2.7, 2.7, 2.7},
    {3.7, 3.0, 2.8, 2.35, 2.2, 2.2, 2.2, 2.2},
    {2.9, 2.3, 2.1, 1.9, 1.8, 1.7, 1.7, 1.7},
    {2.4, 1.7, 1.5, 1.35, 1.3, 1.3, 1.3, 1.3},
    {1.95, 1.45, 1.3, 1.15, 1.1, 1.1, 1.1, 1.1},
    {1.5, 1.2, 0.94, 0.86, 0.82, 0.82, 0.82, 0.82},
    {0.72, 0.67, 0.64, 0.63, 0.62, 0.62, 0.62, 0.62},
    {0.59, 0.53, 0.51, 0.5, 0.42, 0.42, 0.42, 0.42},
    {0.4, 0.33, 0.26, 0.24, 0.24, 0.22, 0.22, 0.22},
    {0.27, 0.21, 0.2, 0.18, 0.17, 0.17, 0.17, 0.17},
    {0.16, 0.15, 0.14, 0.12, 0.11, 0.11, 0.11, 0.11},
    {0.12, 0.11, 0.1, 0.08, 0.08, 0.08, 0.08, 0.08},
    {0.09, 0.08, 0.07, 0.06, 0.06, 0.06, 0.06, 0.05},
    {0.06, 0.05, 0.03, 0.02, 0.02, 0.02, 0.02, 0.02},
};

constexpr double kCoverageLoHz = 45.0;
constexpr double kCoverageHiHz = 10000.0;
constexpr double kLoudnessWindowS = 0.5;

// Matches a measured band to a canonical DIN center (nominal values differ
// from the exact base-2 ladder by < 1.5%).
std::optional<std::size_t> din_index(double center_hz) {
  for (std::size_t i = 0; i < kDinCentersHz.size(); ++i) {
    if (std::abs(std::log2(center_hz / kDinCentersHz[i])) < 0.05) return i;
  }
  return std::nullopt;
}

// Main (unspread) specific loudness per critical band, nm[21]; the last
// entry is the program's fictitious terminating band.
std::array<double, 21> main_loudness(const std::array<std::optional<double>, 28>& levels,
                                     SoundField field) {
  // Low-frequency bands: level correction per equal-loudness contours, then
  // intensity grouping into the first three critical bands.
  std::array<double, 11> ti{};
  for (std::size_t i = 0; i < 11; ++i) {
    if (!levels[i]) {
      ti[i] = 0.0;
      continue;
    }
    std::size_t j = 0;
    while (j < 7 && *levels[i] > kRap[j] - kDll[j][i]) ++j;
    ti[i] = std::pow(10.0, (*levels[i] + kDll[j][i]) / 10.0);
  }

  std::array<std::optional<double>, 20> le{};
  const auto group = [&](std::size_t lo, std::size_t hi) -> std::optional<double> {
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) sum += ti[i];
    if (sum <= 0.0) return std::nullopt;
    return 10.0 * std::log10(sum);
  };
  le[0] = group(0, 6);    // 25 - 80 Hz
  le[1] = group(6, 9);    // 100 - 160 Hz
  le[2] = group(9, 11);   // 200 - 250 Hz
  for (std::size_t i = 3; i < 20; ++i) le[i] = levels[i + 8];

  std::array<double, 21> nm{};
  constexpr double kS = 0.25;
  for (std::size_t i = 0; i < 20; ++i) {
    if (!le[i]) continue;
    double level = *le[i] - kA0[i];
    if (field == SoundField::Diffuse) level += kDdf[i];
    if (level <= kLtq[i]) continue;
    level -= kDcb[i];
    const double mp1 = 0.0635 * std::pow(10.0, 0.025 * kLtq[i]);
    const double mp2 =
        std::pow(1.0 - kS + kS * std::pow(10.0, 0.1 * (level - kLtq[i])), 0.25) - 1.0;
    nm[i] = std::max(0.0, mp1 * mp2);
  }
  nm[20] = 0.0;

  // Threshold dependence within the lowest critical band.
  const double korry = std::min(1.0, 0.4 + 0.32 * std::pow(nm[0], 0.2));
  nm[0] *= korry;
  return nm;
}

// Spreads the main loudness with the standard upper slopes, sampling the
// pattern at the midpoints of the 0.1 Bark grid.
std::vector<double> spread_slopes(const std::array<double, 21>& nm, const BarkScale& scale) {
  const std::size_t bins = scale.bins();
  std::vector<double> ns(bins, 0.0);

  std::size_t j = 0;
  std::size_t iz = 0;
  double z1 = 0.0;
  double n1 = 0.0;
  for (std::size_t i = 0; i < 21; ++i) {
    const double zup = kZup[i] + 0.0001;
    const auto ig = static_cast<std::size_t>(std::min<int>(std::max<int>(0, static_cast<int>(i) - 1), 7));
    while (z1 < zup) {
      double z2 = 0.0;
      double n2 = 0.0;
      if (n1 <= nm[i]) {
        if (n1 < nm[i]) {
          j = 0;
          while (j < 17 && kRns[j] >= nm[i]) ++j;
        }
        z2 = zup;
        n2 = nm[i];
        while (iz < bins && scale.midpoint(iz) < z2) ns[iz++] = n2;
      } else {
        // The band is partly or fully masked; decay along the upper slope
        // until the range floor, the next main loudness, or the band edge.
        n2 = std::max(kRns[j], nm[i]);
        const double slope = kUsl[j][ig];
        double dz = (n1 - n2) / slope;
        z2 = z1 + dz;
        if (z2 > zup) {
          z2 = zup;
          dz = z2 - z1;
          n2 = n1 - dz * slope;
        }
        while (iz < bins && scale.midpoint(iz) < z2) {
          ns[iz] = std::max(0.0, n1 - (scale.midpoint(iz) - z1) * slope);
          ++iz;
        }
        if (n2 == kRns[j] && j < 17) ++j;
      }
      z1 = z2;
      n1 = n2;
    }
  }
  return ns;
}

}  // namespace

SpecificLoudnessPattern specific_loudness(const ThirdOctaveSpectrum& spectrum,
                                          const LoudnessOptions& options) {
  if (spectrum.weighting != Weighting::Z) {
    throw Error(Errc::InvalidArgument, "loudness requires unweighted (Z) band levels");
  }

  std::array<std::optional<double>, 28> levels{};
  std::array<bool, 28> present{};
  for (const auto& band : spectrum.bands) {
    if (const auto idx = din_index(band.center_hz)) {
      present[*idx] = true;
      levels[*idx] = band.level_db;  // below-floor bands stay silent
    }
  }
  if (!options.zero_fill_missing) {
    for (std::size_t i = 0; i < kDinCentersHz.size(); ++i) {
      const double fc = kDinCentersHz[i];
      if (fc >= kCoverageLoHz && fc <= kCoverageHiHz && !present[i]) {
        throw Error(Errc::MissingBandCoverage,
                    "spectrum lacks the " + std::to_string(fc) + " Hz band");
      }
    }
  }

  SpecificLoudnessPattern pattern;
  pattern.scale = BarkScale{};
  pattern.values = spread_slopes(main_loudness(levels, options.field), pattern.scale);
  return pattern;
}

double total_loudness_sone(const SpecificLoudnessPattern& pattern) {
  if (pattern.values.size() != pattern.scale.bins()) {
    throw Error(Errc::InvalidArgument, "pattern does not match its grid");
  }
  double total = 0.0;
  for (double v : pattern.values) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw Error(Errc::InvalidArgument, "specific loudness must be finite and >= 0");
    }
    total += v;
  }
  return total * pattern.scale.dz;
}

double threshold_in_quiet_db(double z) {
  if (z < 0.0 || z > kBarkMax) {
    throw Error(Errc::InvalidArgument, "critical-band rate must lie in [0, 24]");
  }
  std::size_t i = 0;
  while (i + 1 < kZup.size() && kZup[i] < z) ++i;
  return kLtq[std::min(i, kLtq.size() - 1)];
}

double sone_from_phon(double phon) { return std::pow(2.0, (phon - 40.0) / 10.0); }

double phon_from_sone(double sone) {
  if (!(sone > 0.0)) {
    throw Error(Errc::InvalidArgument, "phon is defined only for positive loudness");
  }
  return 40.0 + 10.0 * std::log2(sone);
}

LoudnessValue make_loudness_value(double sone) {
  LoudnessValue value;
  value.sone = sone;
  if (sone > 0.0) value.phon = phon_from_sone(sone);
  return value;
}

LoudnessSeries loudness_series(const AudioBuffer& buffer, std::size_t channel,
                               double hop_s, const LoudnessOptions& options) {
  if (channel >= buffer.channels.size()) {
    throw Error(Errc::InvalidArgument, "channel index out of range");
  }
  if (!(hop_s > 0.0)) {
    throw Error(Errc::InvalidArgument, "hop must be positive");
  }
  const auto& samples = buffer.channels[channel];
  const auto window_len =
      static_cast<std::size_t>(std::llround(kLoudnessWindowS * buffer.sample_rate_hz));
  if (samples.size() < window_len || window_len == 0) {
    throw Error(Errc::BufferTooShort, "signal shorter than one loudness window");
  }
  const auto hop = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(hop_s * buffer.sample_rate_hz)));
  const std::size_t count = 1 + (samples.size() - window_len) / hop;

  LoudnessSeries series;
  series.hop_s = hop_s;
  series.window_s = kLoudnessWindowS;
  series.sone.assign(count, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const auto segment = std::span(samples).subspan(uk * hop, window_len);
    const auto spectrum = third_octave_of_span(segment, buffer.sample_rate_hz,
                                               Weighting::Z, {kLoudnessWindowS, 0.5});
    series.sone[uk] = total_loudness_sone(specific_loudness(spectrum, options));
  }
  return series;
}

SeriesStats series_stats(const std::vector<double>& values) {
  if (values.empty()) {
    throw Error(Errc::EmptyInput, "empty series");
  }
  SeriesStats stats;
  stats.max = values.front();
  double sum = 0.0;
  for (double v : values) {
    sum += v;
    stats.max = std::max(stats.max, v);
  }
  stats.mean = sum / static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - stats.mean) * (v - stats.mean);
  stats.std_pop = std::sqrt(var / static_cast<double>(values.size()));
  return stats;
}

double percentile_exceeded_5(const std::vector<double>& values) {
  if (values.empty()) {
    throw Error(Errc::EmptyInput, "empty series");
  }
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  const double rank = 0.95 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(rank);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

std::string pattern_to_csv(const SpecificLoudnessPattern& pattern) {
  std::ostringstream out;
  out << "z_bark,n_prime\n";
  char buf[64];
  for (std::size_t i = 0; i < pattern.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.2f,%.6f\n", pattern.scale.midpoint(i),
                  pattern.values[i]);
    out << buf;
  }
  return out.str();
}

}  // namespace soundq
