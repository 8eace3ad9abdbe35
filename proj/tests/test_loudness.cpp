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

#include <cmath>
#include <random>

#include "soundq/error.hpp"
#include "soundq/loudness.hpp"
#include "soundq/synth.hpp"

using namespace soundq;

namespace {

// A spectrum with a single active band; the rest measured silent.
ThirdOctaveSpectrum tone_spectrum(double center_hz, double level_db) {
  ThirdOctaveSpectrum spectrum;
  spectrum.weighting = Weighting::Z;
  const double centers[] = {25,   31.5, 40,   50,   63,   80,   100,  125,  160,
                            200,  250,  315,  400,  500,  630,  800,  1000, 1250,
                            1600, 2000, 2500, 3150, 4000, 5000, 6300, 8000, 10000};
  for (double c : centers) {
    spectrum.bands.push_back(
        {c, c == center_hz ? std::optional<double>(level_db) : std::nullopt});
  }
  return spectrum;
}

ThirdOctaveSpectrum silence_spectrum() {
  auto spectrum = tone_spectrum(1000.0, 0.0);
  spectrum.bands[16].level_db = std::nullopt;
  return spectrum;
}

}  // namespace

TEST_CASE("phon/sone conversions follow s = 2^((P-40)/10)") {
  CHECK(sone_from_phon(40.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sone_from_phon(50.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sone_from_phon(30.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(phon_from_sone(1.0) == doctest::Approx(40.0).epsilon(1e-12));
  CHECK(phon_from_sone(4.0) == doctest::Approx(60.0).epsilon(1e-12));
  CHECK_THROWS_AS(phon_from_sone(0.0), Error);
  CHECK_THROWS_AS(phon_from_sone(-1.0), Error);
}

TEST_CASE("phon and sone conversions are exact inverses") {
  for (double phon = 0.0; phon <= 120.0; phon += 7.3) {
    CHECK(phon_from_sone(sone_from_phon(phon)) == doctest::Approx(phon).epsilon(1e-12));
  }
}

TEST_CASE("a silent spectrum yields the all-zero pattern") {
  const auto pattern = specific_loudness(silence_spectrum());
  for (double v : pattern.values) CHECK(v == 0.0);
  CHECK(total_loudness_sone(pattern) == 0.0);
}

TEST_CASE("inputs below the threshold in quiet yield exactly zero sones") {
  // The effective free-field threshold dips below 0 dB SPL around 4-6 kHz
  // (outer-ear gain), so "silent" means below -5 dB in every band.
  ThirdOctaveSpectrum spectrum = tone_spectrum(1000.0, 0.0);
  for (auto& band : spectrum.bands) band.level_db = -5.0;
  CHECK(total_loudness_sone(specific_loudness(spectrum)) == 0.0);

  // At 1 kHz the critical-band threshold sits at 3 dB.
  CHECK(total_loudness_sone(specific_loudness(tone_spectrum(1000.0, 2.9))) == 0.0);
  CHECK(total_loudness_sone(specific_loudness(tone_spectrum(1000.0, 5.0))) > 0.0);
}

TEST_CASE("1 kHz at 40 dB lands at one sone within 10 percent") {
  const double sone = total_loudness_sone(specific_loudness(tone_spectrum(1000.0, 40.0)));
  CHECK(sone > 0.9);
  CHECK(sone < 1.1);
}

TEST_CASE("each 10 dB step at 1 kHz doubles the loudness within 10 percent") {
  double previous = total_loudness_sone(specific_loudness(tone_spectrum(1000.0, 40.0)));
  for (double level = 50.0; level <= 80.0; level += 10.0) {
    const double sone = total_loudness_sone(specific_loudness(tone_spectrum(1000.0, level)));
    const double ratio = sone / previous;
    CHECK(ratio > 1.8);
    CHECK(ratio < 2.2);
    previous = sone;
  }
}

TEST_CASE("loudness is strictly increasing in level at 1 kHz") {
  double previous = -1.0;
  for (double level = 20.0; level <= 90.0; level += 2.5) {
    const double sone = total_loudness_sone(specific_loudness(tone_spectrum(1000.0, level)));
    CHECK(sone > previous);
    previous = sone;
  }
}

TEST_CASE("specific loudness is non-negative for arbitrary spectra") {
  std::mt19937_64 engine(3);
  std::uniform_real_distribution<double> level_dist(-10.0, 95.0);
  for (int trial = 0; trial < 25; ++trial) {
    auto spectrum = tone_spectrum(1000.0, 0.0);
    for (auto& band : spectrum.bands) band.level_db = level_dist(engine);
    const auto pattern = specific_loudness(spectrum);
    for (double v : pattern.values) CHECK(v >= 0.0);
  }
}

TEST_CASE("loudness requires Z weighting and coverage") {
  auto weighted = tone_spectrum(1000.0, 40.0);
  weighted.weighting = Weighting::A;
  CHECK_THROWS_AS(specific_loudness(weighted), Error);

  ThirdOctaveSpectrum partial;
  partial.weighting = Weighting::Z;
  partial.bands = {{1000.0, 40.0}, {1250.0, 40.0}};
  try {
    specific_loudness(partial);
    FAIL("expected missing band coverage");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingBandCoverage);
  }
  // Zero fill turns the missing bands into silence instead.
  LoudnessOptions opts;
  opts.zero_fill_missing = true;
  CHECK(total_loudness_sone(specific_loudness(partial, opts)) > 0.0);
}

TEST_CASE("diffuse field correction shifts the excitation") {
  LoudnessOptions diffuse;
  diffuse.field = SoundField::Diffuse;
  const double free = total_loudness_sone(specific_loudness(tone_spectrum(1000.0, 60.0)));
  const double diff =
      total_loudness_sone(specific_loudness(tone_spectrum(1000.0, 60.0), diffuse));
  CHECK(diff != doctest::Approx(free).epsilon(1e-6));
}

TEST_CASE("total loudness integrates the grid by the midpoint rule") {
  SpecificLoudnessPattern zero;
  zero.values.assign(zero.scale.bins(), 0.0);
  CHECK(total_loudness_sone(zero) == 0.0);

  SpecificLoudnessPattern uniform;
  uniform.values.assign(uniform.scale.bins(), 1.0);
  CHECK(total_loudness_sone(uniform) == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("grid refinement changes a smooth integral by less than 0.1 percent") {
  const auto gaussian = [](double z) { return std::exp(-(z - 9.0) * (z - 9.0) / 4.0); };
  SpecificLoudnessPattern coarse;
  coarse.scale.dz = 0.1;
  coarse.values.resize(coarse.scale.bins());
  for (std::size_t i = 0; i < coarse.values.size(); ++i) {
    coarse.values[i] = gaussian(coarse.scale.midpoint(i));
  }
  SpecificLoudnessPattern fine;
  fine.scale.dz = 0.05;
  fine.values.resize(fine.scale.bins());
  for (std::size_t i = 0; i < fine.values.size(); ++i) {
    fine.values[i] = gaussian(fine.scale.midpoint(i));
  }
  const double a = total_loudness_sone(coarse);
  const double b = total_loudness_sone(fine);
  CHECK(std::abs(a - b) / b < 1e-3);
}

TEST_CASE("threshold in quiet follows the critical-band table") {
  CHECK(threshold_in_quiet_db(0.5) == doctest::Approx(30.0));
  CHECK(threshold_in_quiet_db(1.5) == doctest::Approx(18.0));
  CHECK(threshold_in_quiet_db(8.5) == doctest::Approx(3.0));
  CHECK(threshold_in_quiet_db(23.9) == doctest::Approx(3.0));
  CHECK_THROWS_AS(threshold_in_quiet_db(-1.0), Error);
}

TEST_CASE("loudness value carries phons only when audible") {
  const auto silent = make_loudness_value(0.0);
  CHECK_FALSE(silent.phon.has_value());
  const auto one = make_loudness_value(1.0);
  REQUIRE(one.phon.has_value());
  CHECK(*one.phon == doctest::Approx(40.0));
}

TEST_CASE("loudness series of a stationary tone is constant within 2 percent") {
  const auto buffer = pure_tone({1000.0, 60.0, 2.0, 48000.0});
  const auto series = loudness_series(buffer, 0, 0.25);
  REQUIRE(series.sone.size() >= 4);
  const double first = series.sone.front();
  for (double v : series.sone) CHECK(std::abs(v - first) / first < 0.02);
}

TEST_CASE("loudness series max tracks the louder segment of a stepped tone") {
  auto low = pure_tone({1000.0, 40.0, 1.0, 48000.0});
  const auto high = pure_tone({1000.0, 60.0, 1.0, 48000.0});
  auto samples = low.channels[0];
  samples.insert(samples.end(), high.channels[0].begin(), high.channels[0].end());
  AudioBuffer stepped;
  stepped.sample_rate_hz = 48000.0;
  stepped.channels.push_back(std::move(samples));

  const auto series = loudness_series(stepped, 0, 0.25);
  const auto stats = series_stats(series.sone);
  const double reference =
      loudness_series(high, 0, 0.25).sone.front();
  CHECK(stats.max == doctest::Approx(reference).epsilon(0.02));
}

TEST_CASE("series statistics and the N5 percentile") {
  const std::vector<double> values = {1.0, 3.0};
  const auto stats = series_stats(values);
  CHECK(stats.mean == doctest::Approx(2.0));
  CHECK(stats.max == doctest::Approx(3.0));
  CHECK(stats.std_pop == doctest::Approx(1.0));
  CHECK_THROWS_AS(series_stats({}), Error);

  std::vector<double> ramp;
  for (int i = 0; i <= 100; ++i) ramp.push_back(static_cast<double>(i));
  CHECK(percentile_exceeded_5(ramp) == doctest::Approx(95.0));
}

TEST_CASE("pattern CSV lists the full grid") {
  SpecificLoudnessPattern pattern;
  pattern.values.assign(pattern.scale.bins(), 0.5);
  const auto csv = pattern_to_csv(pattern);
  CHECK(csv.rfind("z_bark,n_prime\n", 0) == 0);
  std::size_t rows = 0;
  for (char c : csv) rows += c == '\n';
  CHECK(rows == pattern.scale.bins() + 1);
}
