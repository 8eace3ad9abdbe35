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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "soundq/calibration.hpp"
#include "soundq/dsp/fft.hpp"
#include "soundq/error.hpp"
#include "soundq/spectral.hpp"
#include "soundq/synth.hpp"

using namespace soundq;

namespace {

// Steady-state samples, clear of the fade regions, trimmed to whole carrier
// periods for exact RMS accounting.
std::span<const double> interior_whole_periods(const AudioBuffer& buffer,
                                               double carrier_hz) {
  const auto& samples = buffer.channels[0];
  const auto fade = static_cast<std::size_t>(kSynthFadeSeconds * buffer.sample_rate_hz);
  const std::size_t period = static_cast<std::size_t>(
      std::llround(buffer.sample_rate_hz / carrier_hz));
  const std::size_t available = samples.size() - 2 * fade;
  const std::size_t len = (available / period) * period;
  return std::span(samples).subspan(fade, len);
}

double db_of(double rms_pa) { return 20.0 * std::log10(rms_pa / kReferencePressurePa); }

}  // namespace

TEST_CASE("pure tone hits the requested level within 0.01 dB over whole periods") {
  for (double level : {40.0, 60.0, 80.0}) {
    const auto buffer = pure_tone({1000.0, level, 2.0, 48000.0});
    const double measured = db_of(rms(interior_whole_periods(buffer, 1000.0)));
    CHECK(std::abs(measured - level) < 0.01);
  }
}

TEST_CASE("40 dB tone has RMS pressure 2e-3 Pa") {
  const auto buffer = pure_tone({1000.0, 40.0, 2.0, 48000.0});
  CHECK(rms(interior_whole_periods(buffer, 1000.0)) ==
        doctest::Approx(2e-3).epsilon(1e-4));
}

TEST_CASE("60 dB tone peaks at 0.02 * sqrt(2) Pa") {
  const auto buffer = pure_tone({1000.0, 60.0, 2.0, 48000.0});
  double peak = 0.0;
  for (double v : interior_whole_periods(buffer, 1000.0)) peak = std::max(peak, std::abs(v));
  CHECK(peak == doctest::Approx(0.02 * std::numbers::sqrt2).epsilon(1e-4));
}

TEST_CASE("carrier at or above Nyquist is rejected") {
  CHECK_THROWS_AS(pure_tone({24000.0, 60.0, 1.0, 48000.0}), Error);
  CHECK_THROWS_AS(pure_tone({30000.0, 60.0, 1.0, 48000.0}), Error);
  CHECK_THROWS_AS(pure_tone({1000.0, 60.0, -1.0, 48000.0}), Error);
}

TEST_CASE("AM with depth 0 is sample-identical to the pure tone") {
  const ToneSpec tone{1000.0, 60.0, 1.0, 48000.0};
  const auto plain = pure_tone(tone);
  const auto modulated = am_tone({tone, 4.0, 0.0});
  REQUIRE(plain.frame_count() == modulated.frame_count());
  for (std::size_t i = 0; i < plain.frame_count(); ++i) {
    CHECK(plain.channels[0][i] == modulated.channels[0][i]);
  }
}

TEST_CASE("AM with depth 1 swings between 0 and 2A") {
  const auto buffer = am_tone({{1000.0, 60.0, 2.0, 48000.0}, 4.0, 1.0});
  const double amplitude = std::numbers::sqrt2 * 0.02 / std::sqrt(1.5);
  const auto interior = interior_whole_periods(buffer, 1000.0);
  double peak = 0.0;
  for (double v : interior) peak = std::max(peak, std::abs(v));
  CHECK(peak == doctest::Approx(2.0 * amplitude).epsilon(0.02));
  // Near an envelope trough (3/4 of a modulation period in), samples vanish.
  const auto fade = static_cast<std::size_t>(kSynthFadeSeconds * 48000.0);
  const std::size_t trough = static_cast<std::size_t>(0.75 * 48000.0 / 4.0) - fade;
  double local = 0.0;
  for (std::size_t i = trough - 50; i < trough + 50; ++i) {
    local = std::max(local, std::abs(interior[i]));
  }
  CHECK(local < 0.02 * amplitude);
}

TEST_CASE("AM overall RMS matches the requested level within 0.05 dB") {
  for (double depth : {0.25, 0.5, 1.0}) {
    const auto buffer = am_tone({{1000.0, 60.0, 2.0, 48000.0}, 4.0, depth});
    // Whole modulation periods: 2 s covers 8 cycles of 4 Hz.
    const double measured = db_of(rms(interior_whole_periods(buffer, 1000.0)));
    CHECK(std::abs(measured - 60.0) < 0.05);
  }
}

TEST_CASE("AM spectrum carries sidebands at fc +- fmod with magnitude depth/2") {
  const double depth = 0.6;
  const auto buffer = am_tone({{1000.0, 60.0, 2.0, 48000.0}, 70.0, depth});
  const auto& x = buffer.channels[0];
  dsp::RealFft fft(x.size());
  std::vector<std::complex<double>> spectrum(fft.bins());
  fft.forward(x, spectrum);
  const double bin_hz = 48000.0 / static_cast<double>(x.size());
  const auto mag_at = [&](double f) {
    return std::abs(spectrum[static_cast<std::size_t>(std::llround(f / bin_hz))]);
  };
  const double carrier = mag_at(1000.0);
  CHECK(mag_at(930.0) / carrier == doctest::Approx(depth / 2.0).epsilon(0.05));
  CHECK(mag_at(1070.0) / carrier == doctest::Approx(depth / 2.0).epsilon(0.05));
}

TEST_CASE("AM rejects invalid modulation parameters") {
  CHECK_THROWS_AS(am_tone({{1000.0, 60.0, 1.0, 48000.0}, 4.0, 1.5}), Error);
  CHECK_THROWS_AS(am_tone({{1000.0, 60.0, 1.0, 48000.0}, 4.0, -0.1}), Error);
  CHECK_THROWS_AS(am_tone({{1000.0, 60.0, 1.0, 48000.0}, 1000.0, 0.5}), Error);
  CHECK_THROWS_AS(am_tone({{1000.0, 60.0, 1.0, 48000.0}, 0.0, 0.5}), Error);
}

TEST_CASE("narrowband noise is deterministic per seed") {
  const NarrowbandNoiseSpec spec{1000.0, 140.0, 60.0, 0.5, 48000.0, 99};
  const auto a = narrowband_noise(spec);
  const auto b = narrowband_noise(spec);
  REQUIRE(a.frame_count() == b.frame_count());
  for (std::size_t i = 0; i < a.frame_count(); ++i) {
    CHECK(a.channels[0][i] == b.channels[0][i]);
  }
  auto other = spec;
  other.seed = 100;
  const auto c = narrowband_noise(other);
  bool differs = false;
  for (std::size_t i = 0; i < a.frame_count() && !differs; ++i) {
    differs = a.channels[0][i] != c.channels[0][i];
  }
  CHECK(differs);
}

TEST_CASE("narrowband noise level is within 0.1 dB") {
  const auto buffer = narrowband_noise({1000.0, 140.0, 60.0, 2.0, 48000.0, 5});
  const auto fade = static_cast<std::size_t>(kSynthFadeSeconds * 48000.0);
  const auto interior =
      std::span(buffer.channels[0]).subspan(fade, buffer.frame_count() - 2 * fade);
  CHECK(std::abs(db_of(rms(interior)) - 60.0) < 0.1);
}

TEST_CASE("narrowband noise keeps out-of-band energy at least 40 dB down") {
  // Oracle: one-third-octave analysis of the generated output.
  const auto buffer = narrowband_noise({1000.0, 140.0, 60.0, 2.0, 48000.0, 5});
  const auto spectrum = third_octave(buffer, 0, Weighting::Z);
  double in_band = 0.0;
  double out_band = 0.0;
  for (const auto& band : spectrum.bands) {
    if (!band.level_db) continue;
    const double power = std::pow(10.0, *band.level_db / 10.0);
    // The noise band 930-1070 Hz lies inside the 1 kHz third-octave band.
    if (band.center_hz == 1000.0) {
      in_band += power;
    } else {
      out_band += power;
    }
  }
  REQUIRE(in_band > 0.0);
  CHECK(10.0 * std::log10(in_band / (out_band > 0.0 ? out_band : 1e-30)) > 40.0);
}

TEST_CASE("narrowband noise rejects bands outside (0, Nyquist)") {
  CHECK_THROWS_AS(narrowband_noise({100.0, 300.0, 60.0, 1.0, 48000.0, 1}), Error);
  CHECK_THROWS_AS(narrowband_noise({23990.0, 140.0, 60.0, 1.0, 48000.0, 1}), Error);
  CHECK_THROWS_AS(narrowband_noise({1000.0, 0.0, 60.0, 1.0, 48000.0, 1}), Error);
}
