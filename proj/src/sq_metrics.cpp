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

#include "soundq/sq_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "soundq/bark.hpp"
#include "soundq/dsp/fft.hpp"
#include "soundq/dsp/kernels.hpp"
#include "soundq/error.hpp"

namespace soundq {

namespace {

// Calibration anchors, fixed once by running the reference stimuli through
// the full pipeline (`soundq calibrate` reproduces the procedure):
//   roughness:   1 kHz, 60 dB SPL, 100% AM at 70 Hz -> 1 asper
//   fluctuation: 1 kHz, 60 dB SPL, 100% AM at  4 Hz -> 1 vacil (per mode)
constexpr double kRoughnessCal = 1.0 / 3093.372778;
constexpr double kFluctuationCalStandard = 1.0 / 0.174597;
constexpr double kFluctuationCalLiteral = 1.0 / 0.687370;

double interpolated_quantile(std::vector<double>& scratch, double q) {
  std::sort(scratch.begin(), scratch.end());
  const double rank = q * static_cast<double>(scratch.size() - 1);
  const auto lo = static_cast<std::size_t>(rank);
  const std::size_t hi = std::min(lo + 1, scratch.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return scratch[lo] * (1.0 - frac) + scratch[hi] * frac;
}

// Dominant spectral peak of the mean-removed envelope within [f_lo, f_hi],
// refined by parabolic interpolation on the log magnitude.
double dominant_envelope_frequency(std::span<const double> envelope,
                                   double sample_rate_hz, double f_lo, double f_hi) {
  const std::size_t n = envelope.size();
  double mean = 0.0;
  for (double v : envelope) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = envelope[i] - mean;

  dsp::RealFft fft(n);
  std::vector<std::complex<double>> spectrum(fft.bins());
  fft.forward(centered, spectrum);

  const double bin_hz = sample_rate_hz / static_cast<double>(n);
  const auto k_lo = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(f_lo / bin_hz)));
  const auto k_hi = std::min<std::size_t>(spectrum.size() - 1,
                                          static_cast<std::size_t>(std::floor(f_hi / bin_hz)));
  if (k_lo > k_hi) return 0.0;

  std::size_t peak = k_lo;
  double peak_mag = std::norm(spectrum[k_lo]);
  for (std::size_t k = k_lo + 1; k <= k_hi; ++k) {
    const double mag = std::norm(spectrum[k]);
    if (mag > peak_mag) {
      peak = k;
      peak_mag = mag;
    }
  }
  if (peak_mag <= 0.0) return 0.0;

  double delta = 0.0;
  if (peak > 0 && peak + 1 < spectrum.size()) {
    const double eps = 1e-300;
    const double alpha = 0.5 * std::log(std::norm(spectrum[peak - 1]) + eps);
    const double beta = 0.5 * std::log(peak_mag + eps);
    const double gamma = 0.5 * std::log(std::norm(spectrum[peak + 1]) + eps);
    const double denom = alpha - 2.0 * beta + gamma;
    if (denom < 0.0) delta = std::clamp(0.5 * (alpha - gamma) / denom, -0.5, 0.5);
  }
  return (static_cast<double>(peak) + delta) * bin_hz;
}

double band_integral(const ModulationPattern& pattern, double f_lo, double f_hi,
                     bool with_fmod, bool with_denominator) {
  double total = 0.0;
  for (const auto& band : pattern.bands) {
    if (band.f_mod_hz < 0.0 || band.delta_l_db < 0.0) {
      throw Error(Errc::InvalidArgument, "modulation pattern entries must be >= 0");
    }
    if (band.f_mod_hz < f_lo || band.f_mod_hz > f_hi) continue;
    const double dz = band.z_hi - band.z_lo;
    double term = band.delta_l_db * dz;
    if (with_fmod) term *= band.f_mod_hz;
    if (with_denominator) {
      term /= band.f_mod_hz / 4.0 + 4.0 / band.f_mod_hz;
    }
    total += term;
  }
  return total;
}

}  // namespace

SharpnessConfig::SharpnessConfig() : boundary_bark(hz_to_bark(3000.0)) {}

double sharpness_acum(const SpecificLoudnessPattern& pattern, const SharpnessConfig& config) {
  if (pattern.values.size() != pattern.scale.bins()) {
    throw Error(Errc::InvalidArgument, "pattern does not match its grid");
  }
  const double dz = pattern.scale.dz;
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < pattern.values.size(); ++i) {
    const double z = pattern.scale.midpoint(i);
    const double g = z < config.boundary_bark ? 1.0 : config.high_weight;
    numerator += pattern.values[i] * g * z * dz;
    denominator += pattern.values[i] * dz;
  }
  if (!(denominator > 0.0)) {
    throw Error(Errc::ZeroLoudness, "sharpness is undefined for zero loudness");
  }
  return config.scale * numerator / denominator;
}

ModulationPattern extract_modulation(const AudioBuffer& buffer, std::size_t channel,
                                     const ModulationParams& params) {
  if (channel >= buffer.channels.size()) {
    throw Error(Errc::InvalidArgument, "channel index out of range");
  }
  if (params.band_count <= 0) {
    throw Error(Errc::InvalidArgument, "band count must be positive");
  }
  const auto& samples = buffer.channels[channel];
  if (samples.empty()) {
    throw Error(Errc::BufferTooShort, "empty signal");
  }
  const double duration_s = static_cast<double>(samples.size()) / buffer.sample_rate_hz;
  if (params.required_min_fmod_hz &&
      duration_s < 2.0 / *params.required_min_fmod_hz) {
    throw Error(Errc::BufferTooShort,
                "need two periods of " + std::to_string(*params.required_min_fmod_hz) +
                    " Hz modulation");
  }
  const double nyquist = buffer.sample_rate_hz / 2.0;

  // Taper the segment ends so edge discontinuities do not leak across bands.
  const auto taper_len = std::min(
      samples.size() / 4,
      std::max(static_cast<std::size_t>(static_cast<double>(samples.size()) *
                                        params.edge_taper_fraction),
               static_cast<std::size_t>(0.025 * buffer.sample_rate_hz)));
  std::vector<double> tapered(samples.begin(), samples.end());
  for (std::size_t i = 0; i < taper_len; ++i) {
    const double w = 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(i) /
                                           static_cast<double>(taper_len)));
    tapered[i] *= w;
    tapered[tapered.size() - 1 - i] *= w;
  }
  const std::size_t interior_len = samples.size() - 2 * taper_len;

  // Two envelope periods must fit in the analysis length.
  const double f_lo = std::max(params.lowest_fmod_hz, 2.0 / duration_s);
  const double f_hi = params.highest_fmod_hz;

  const double z_step = kBarkMax / static_cast<double>(params.band_count);
  std::vector<dsp::BandEdges> edges;
  std::vector<std::pair<double, double>> z_ranges;
  for (int b = 0; b < params.band_count; ++b) {
    const double z_lo = static_cast<double>(b) * z_step;
    const double z_hi = z_lo + z_step;
    const double lo_hz = bark_to_hz(z_lo);
    if (lo_hz >= nyquist) break;
    const double hi_hz = std::min(bark_to_hz(z_hi), nyquist);
    edges.push_back({lo_hz, hi_hz});
    z_ranges.emplace_back(z_lo, z_hi);
  }

  const auto weights = dsp::band_mean_square(tapered, buffer.sample_rate_hz, edges);
  double strongest = 0.0;
  for (double w : weights) strongest = std::max(strongest, w);
  const double relative_floor = strongest * std::pow(10.0, -params.relative_gate_db / 10.0);

  const auto envelopes = dsp::band_envelopes(tapered, buffer.sample_rate_hz, edges);

  ModulationPattern pattern;
  pattern.bands.resize(edges.size());
  for (std::size_t b = 0; b < edges.size(); ++b) {
    auto& band = pattern.bands[b];
    band.z_lo = z_ranges[b].first;
    band.z_hi = z_ranges[b].second;
    band.weight = weights[b];
    // Sub-threshold bands are inaudible and carry no perceivable modulation.
    const double quiet_pa = kReferencePressurePa *
        std::pow(10.0, threshold_in_quiet_db(0.5 * (band.z_lo + band.z_hi)) / 20.0);
    if (weights[b] < relative_floor || weights[b] < quiet_pa * quiet_pa) continue;

    const auto interior =
        std::span(envelopes[b]).subspan(taper_len, interior_len);
    std::vector<double> scratch(interior.begin(), interior.end());
    const double p95 = interpolated_quantile(scratch, 0.95);
    const double p05 = interpolated_quantile(scratch, 0.05);
    if (!(p95 > 0.0)) continue;
    const double floor_p05 = std::max(p05, p95 * 1e-6);
    band.delta_l_db = 20.0 * std::log10(p95 / floor_p05);

    if (band.delta_l_db >= params.min_delta_l_db) {
      band.f_mod_hz =
          dominant_envelope_frequency(interior, buffer.sample_rate_hz, f_lo, f_hi);
    }
  }
  return pattern;
}

RoughnessConfig::RoughnessConfig() : cal(kRoughnessCal) {}

double roughness_asper(const ModulationPattern& pattern, const RoughnessConfig& config) {
  return config.cal *
         band_integral(pattern, config.band_lo_hz, config.band_hi_hz, true, false);
}

FluctuationConfig::FluctuationConfig() : cal(kFluctuationCalStandard) {}

FluctuationConfig FluctuationConfig::for_mode(FluctuationMode mode) {
  FluctuationConfig config;
  config.mode = mode;
  config.cal = mode == FluctuationMode::Standard ? kFluctuationCalStandard
                                                 : kFluctuationCalLiteral;
  return config;
}

double fluctuation_vacil(const ModulationPattern& pattern, const FluctuationConfig& config) {
  const bool with_fmod = config.mode == FluctuationMode::Literal;
  return config.cal * config.scale *
         band_integral(pattern, config.band_lo_hz, config.band_hi_hz, with_fmod, true);
}

std::string modulation_to_csv(const ModulationPattern& pattern) {
  std::ostringstream out;
  out << "z_bark,f_mod_hz,delta_l_db\n";
  char buf[96];
  for (const auto& band : pattern.bands) {
    std::snprintf(buf, sizeof buf, "%.2f,%.4f,%.4f\n", 0.5 * (band.z_lo + band.z_hi),
                  band.f_mod_hz, band.delta_l_db);
    out << buf;
  }
  return out.str();
}

const char* to_string(FluctuationMode mode) {
  return mode == FluctuationMode::Standard ? "standard" : "literal";
}

std::optional<FluctuationMode> parse_fluctuation_mode(const std::string& text) {
  if (text == "standard") return FluctuationMode::Standard;
  if (text == "literal") return FluctuationMode::Literal;
  return std::nullopt;
}

}  // namespace soundq
