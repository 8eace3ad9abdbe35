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

#include "soundq/synth.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "soundq/calibration.hpp"
#include "soundq/dsp/fft.hpp"
#include "soundq/error.hpp"

namespace soundq {

namespace {

using std::numbers::pi;

std::size_t sample_count(double duration_s, double sample_rate_hz) {
  return static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
}

void check_tone_spec(const ToneSpec& spec) {
  if (!(spec.sample_rate_hz > 0.0)) {
    throw Error(Errc::InvalidArgument, "sample rate must be positive");
  }
  if (!(spec.carrier_frequency_hz > 0.0) ||
      spec.carrier_frequency_hz >= spec.sample_rate_hz / 2.0) {
    throw Error(Errc::InvalidArgument, "carrier must lie in (0, Nyquist)");
  }
  if (!(spec.duration_s > 0.0)) {
    throw Error(Errc::InvalidArgument, "duration must be positive");
  }
}

void apply_fades(std::vector<double>& samples, double sample_rate_hz) {
  const auto fade = std::min(sample_count(kSynthFadeSeconds, sample_rate_hz),
                             samples.size() / 2);
  for (std::size_t i = 0; i < fade; ++i) {
    const double w = 0.5 * (1.0 - std::cos(pi * static_cast<double>(i) /
                                           static_cast<double>(fade)));
    samples[i] *= w;
    samples[samples.size() - 1 - i] *= w;
  }
}

AudioBuffer mono_buffer(std::vector<double> samples, double sample_rate_hz) {
  AudioBuffer buffer;
  buffer.sample_rate_hz = sample_rate_hz;
  buffer.channels.push_back(std::move(samples));
  return buffer;
}

double target_rms_pa(double level_db_spl) {
  return kReferencePressurePa * std::pow(10.0, level_db_spl / 20.0);
}

/// Deterministic standard normal draw: Box-Muller over raw 64-bit words, so
/// streams do not depend on the standard library's distribution internals.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = to_unit(engine_()) + 1e-300;  // keep log() finite
    const double u2 = to_unit(engine_());
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  static double to_unit(std::uint64_t word) {
    return static_cast<double>(word >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

AudioBuffer pure_tone(const ToneSpec& spec) {
  check_tone_spec(spec);
  const std::size_t n = sample_count(spec.duration_s, spec.sample_rate_hz);
  const double amplitude = std::numbers::sqrt2 * target_rms_pa(spec.level_db_spl);
  const double omega = 2.0 * pi * spec.carrier_frequency_hz / spec.sample_rate_hz;
  std::vector<double> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    samples[i] = amplitude * std::sin(omega * static_cast<double>(i));
  }
  apply_fades(samples, spec.sample_rate_hz);
  return mono_buffer(std::move(samples), spec.sample_rate_hz);
}

AudioBuffer am_tone(const AmToneSpec& spec) {
  check_tone_spec(spec.tone);
  if (!(spec.modulation_frequency_hz > 0.0) ||
      spec.modulation_frequency_hz >= spec.tone.carrier_frequency_hz) {
    throw Error(Errc::InvalidArgument, "modulation frequency must lie in (0, carrier)");
  }
  if (spec.modulation_depth < 0.0 || spec.modulation_depth > 1.0) {
    throw Error(Errc::InvalidArgument, "modulation depth must lie in [0, 1]");
  }
  const std::size_t n = sample_count(spec.tone.duration_s, spec.tone.sample_rate_hz);
  const double depth = spec.modulation_depth;
  // Overall mean square of (1 + d sin) sin is (1 + d^2/2) / 2.
  const double amplitude = std::numbers::sqrt2 * target_rms_pa(spec.tone.level_db_spl) /
                           std::sqrt(1.0 + depth * depth / 2.0);
  const double omega_c = 2.0 * pi * spec.tone.carrier_frequency_hz / spec.tone.sample_rate_hz;
  const double omega_m = 2.0 * pi * spec.modulation_frequency_hz / spec.tone.sample_rate_hz;
  std::vector<double> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto t = static_cast<double>(i);
    samples[i] = amplitude * (1.0 + depth * std::sin(omega_m * t)) * std::sin(omega_c * t);
  }
  apply_fades(samples, spec.tone.sample_rate_hz);
  return mono_buffer(std::move(samples), spec.tone.sample_rate_hz);
}

AudioBuffer narrowband_noise(const NarrowbandNoiseSpec& spec) {
  if (!(spec.sample_rate_hz > 0.0)) {
    throw Error(Errc::InvalidArgument, "sample rate must be positive");
  }
  if (!(spec.bandwidth_hz > 0.0)) {
    throw Error(Errc::InvalidArgument, "bandwidth must be positive");
  }
  const double lo = spec.center_frequency_hz - spec.bandwidth_hz / 2.0;
  const double hi = spec.center_frequency_hz + spec.bandwidth_hz / 2.0;
  if (!(lo > 0.0) || !(hi < spec.sample_rate_hz / 2.0)) {
    throw Error(Errc::InvalidArgument, "noise band must lie inside (0, Nyquist)");
  }
  if (!(spec.duration_s > 0.0)) {
    throw Error(Errc::InvalidArgument, "duration must be positive");
  }

  const std::size_t n = sample_count(spec.duration_s, spec.sample_rate_hz);
  GaussianSource source(spec.seed);
  std::vector<double> samples(n);
  for (auto& v : samples) v = source.next();

  // Brick-wall band limiting in the frequency domain.
  dsp::RealFft fft(n);
  std::vector<std::complex<double>> spectrum(fft.bins());
  fft.forward(samples, spectrum);
  const double bin_hz = spec.sample_rate_hz / static_cast<double>(n);
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double f = static_cast<double>(k) * bin_hz;
    if (f < lo || f > hi) spectrum[k] = 0.0;
  }
  fft.inverse(spectrum, samples);

  // Scale so the steady-state (non-fade) RMS sits at the requested level.
  const auto fade = std::min(sample_count(kSynthFadeSeconds, spec.sample_rate_hz), n / 2);
  const auto interior = std::span(samples).subspan(fade, n - 2 * fade);
  const double measured = rms(interior);
  if (!(measured > 0.0)) {
    throw Error(Errc::InvalidArgument, "degenerate noise draw");
  }
  const double gain = target_rms_pa(spec.level_db_spl) / measured;
  for (auto& v : samples) v *= gain;
  apply_fades(samples, spec.sample_rate_hz);
  return mono_buffer(std::move(samples), spec.sample_rate_hz);
}

}  // namespace soundq
