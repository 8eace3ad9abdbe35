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

#include "soundq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "soundq/dsp/kernels.hpp"
#include "soundq/error.hpp"

namespace soundq {

namespace {

constexpr double kFloorPowerPa2 = kReferencePressurePa * kReferencePressurePa;

constexpr double kNominalCenters[] = {25.0,   31.5,   40.0,   50.0,   63.0,  80.0,
                                      100.0,  125.0,  160.0,  200.0,  250.0, 315.0,
                                      400.0,  500.0,  630.0,  800.0,  1000.0, 1250.0,
                                      1600.0, 2000.0, 2500.0, 3150.0, 4000.0, 5000.0,
                                      6300.0, 8000.0, 10000.0};
constexpr int kBandOf1kHz = 16;

struct WelchGrid {
  std::size_t window_len = 0;
  std::size_t hop = 0;
};

WelchGrid welch_grid(const WelchParams& params, double sample_rate_hz,
                     std::size_t frames) {
  if (!(params.window_s > 0.0) || params.overlap < 0.0 || params.overlap >= 1.0) {
    throw Error(Errc::InvalidArgument, "bad spectral estimation parameters");
  }
  WelchGrid grid;
  grid.window_len = static_cast<std::size_t>(std::llround(params.window_s * sample_rate_hz));
  grid.window_len = std::min(grid.window_len, frames);
  if (grid.window_len == 0) {
    throw Error(Errc::BufferTooShort, "signal shorter than one analysis window");
  }
  const auto hop = static_cast<std::size_t>(
      std::llround(static_cast<double>(grid.window_len) * (1.0 - params.overlap)));
  grid.hop = std::max<std::size_t>(1, hop);
  return grid;
}

std::vector<dsp::BandEdges> to_edges(const std::vector<ThirdOctaveBandDef>& defs) {
  std::vector<dsp::BandEdges> edges;
  edges.reserve(defs.size());
  for (const auto& d : defs) edges.push_back({d.lo_hz, d.hi_hz});
  return edges;
}

std::optional<double> power_to_level(double power_pa2) {
  if (!(power_pa2 >= kFloorPowerPa2)) return std::nullopt;
  return 10.0 * std::log10(power_pa2 / kFloorPowerPa2);
}

const std::vector<double>& channel_or_throw(const AudioBuffer& buffer,
                                            std::size_t channel) {
  if (channel >= buffer.channels.size()) {
    throw Error(Errc::InvalidArgument, "channel index out of range");
  }
  return buffer.channels[channel];
}

}  // namespace

double a_weighting_db(double frequency_hz) {
  if (!(frequency_hz > 0.0)) {
    throw Error(Errc::InvalidArgument, "frequency must be positive");
  }
  // IEC 61672 pole frequencies.
  constexpr double f1 = 20.598997;
  constexpr double f2 = 107.65265;
  constexpr double f3 = 737.86223;
  constexpr double f4 = 12194.217;
  const auto response = [&](double f) {
    const double f2_ = f * f;
    return (f4 * f4 * f2_ * f2_) /
           ((f2_ + f1 * f1) * std::sqrt((f2_ + f2 * f2) * (f2_ + f3 * f3)) *
            (f2_ + f4 * f4));
  };
  if (frequency_hz == 1000.0) return 0.0;  // normalization anchor, exact
  return 20.0 * std::log10(response(frequency_hz) / response(1000.0));
}

std::vector<ThirdOctaveBandDef> third_octave_band_defs(double nyquist_hz) {
  std::vector<ThirdOctaveBandDef> defs;
  const double ratio = std::pow(2.0, 1.0 / 6.0);
  for (int i = 0; i < static_cast<int>(std::size(kNominalCenters)); ++i) {
    ThirdOctaveBandDef def;
    def.nominal_hz = kNominalCenters[i];
    def.exact_hz = 1000.0 * std::pow(2.0, (i - kBandOf1kHz) / 3.0);
    def.lo_hz = def.exact_hz / ratio;
    def.hi_hz = def.exact_hz * ratio;
    if (def.hi_hz > nyquist_hz) break;
    defs.push_back(def);
  }
  return defs;
}

ThirdOctaveSpectrum third_octave_of_span(std::span<const double> samples,
                                         double sample_rate_hz, Weighting weighting,
                                         const WelchParams& params) {
  const auto grid = welch_grid(params, sample_rate_hz, samples.size());
  const auto defs = third_octave_band_defs(sample_rate_hz / 2.0);
  const auto edges = to_edges(defs);
  const auto powers =
      dsp::welch_band_powers(samples, sample_rate_hz, edges, grid.window_len, grid.hop);

  ThirdOctaveSpectrum spectrum;
  spectrum.weighting = weighting;
  spectrum.bands.reserve(defs.size());
  for (std::size_t b = 0; b < defs.size(); ++b) {
    double power = powers[b];
    if (weighting == Weighting::A) {
      power *= std::pow(10.0, a_weighting_db(defs[b].exact_hz) / 10.0);
    }
    spectrum.bands.push_back({defs[b].nominal_hz, power_to_level(power)});
  }
  return spectrum;
}

ThirdOctaveSpectrum third_octave(const AudioBuffer& buffer, std::size_t channel,
                                 Weighting weighting, const WelchParams& params) {
  const auto& samples = channel_or_throw(buffer, channel);
  return third_octave_of_span(samples, buffer.sample_rate_hz, weighting, params);
}

SplSeries spl_time_series(const AudioBuffer& buffer, std::size_t channel,
                          double interval_s, const WelchParams& params) {
  const auto& samples = channel_or_throw(buffer, channel);
  if (!(interval_s > 0.0)) {
    throw Error(Errc::InvalidArgument, "interval must be positive");
  }
  const auto frames_per_interval =
      static_cast<std::size_t>(interval_s * buffer.sample_rate_hz);
  if (frames_per_interval == 0 || frames_per_interval > samples.size()) {
    throw Error(Errc::BufferTooShort, "interval longer than signal");
  }
  const std::size_t count = samples.size() / frames_per_interval;

  const auto defs = third_octave_band_defs(buffer.sample_rate_hz / 2.0);
  const auto edges = to_edges(defs);
  std::vector<double> a_gain(defs.size());
  for (std::size_t b = 0; b < defs.size(); ++b) {
    a_gain[b] = std::pow(10.0, a_weighting_db(defs[b].exact_hz) / 10.0);
  }

  SplSeries series;
  series.interval_s = interval_s;
  series.start_s = 0.0;
  series.levels_dba.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto segment =
        std::span(samples).subspan(i * frames_per_interval, frames_per_interval);
    const auto grid = welch_grid(params, buffer.sample_rate_hz, segment.size());
    const auto powers = dsp::welch_band_powers(segment, buffer.sample_rate_hz, edges,
                                               grid.window_len, grid.hop);
    double weighted = 0.0;
    for (std::size_t b = 0; b < powers.size(); ++b) weighted += powers[b] * a_gain[b];
    series.levels_dba.push_back(power_to_level(weighted));
  }
  return series;
}

double la_eq(const LevelObservations& obs) {
  if (obs.entries.empty()) {
    throw Error(Errc::EmptyInput, "no level observations");
  }
  double alpha_sum = 0.0;
  double acc = 0.0;
  for (const auto& entry : obs.entries) {
    if (!(entry.time_fraction > 0.0) || entry.time_fraction > 1.0) {
      throw Error(Errc::InvalidArgument, "time fraction must lie in (0, 1]");
    }
    if (!std::isfinite(entry.level_db)) {
      throw Error(Errc::InvalidArgument, "level must be finite");
    }
    alpha_sum += entry.time_fraction;
    acc += entry.time_fraction * std::pow(10.0, entry.level_db / 10.0);
  }
  if (alpha_sum > 1.0 + 1e-9) {
    throw Error(Errc::InvalidArgument, "time fractions sum beyond 1");
  }
  return 10.0 * std::log10(acc);
}

std::optional<double> la_eq_from_series(const SplSeries& series, double alpha,
                                        LaEqMode mode) {
  if (series.levels_dba.empty()) {
    throw Error(Errc::EmptyInput, "empty level series");
  }
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw Error(Errc::InvalidArgument, "alpha must lie in (0, 1]");
  }
  const auto n = static_cast<double>(series.levels_dba.size());
  const double weight = mode == LaEqMode::TimeFraction ? alpha / n : alpha;
  double acc = 0.0;
  bool any = false;
  for (const auto& level : series.levels_dba) {
    if (!level) continue;  // below floor contributes no power
    acc += weight * std::pow(10.0, *level / 10.0);
    any = true;
  }
  if (!any) return std::nullopt;
  return 10.0 * std::log10(acc);
}

std::string la_eq_label(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "LA_eq(%d)", static_cast<int>(std::lround(alpha * 100.0)));
  return buf;
}

std::string spectrum_to_csv(const ThirdOctaveSpectrum& spectrum) {
  std::ostringstream out;
  out << "center_hz,level_db\n";
  char buf[64];
  for (const auto& band : spectrum.bands) {
    if (band.level_db) {
      std::snprintf(buf, sizeof buf, "%g,%.4f\n", band.center_hz, *band.level_db);
    } else {
      std::snprintf(buf, sizeof buf, "%g,\n", band.center_hz);
    }
    out << buf;
  }
  return out.str();
}

}  // namespace soundq
