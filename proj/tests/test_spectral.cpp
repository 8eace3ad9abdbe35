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
#include <complex>
#include <random>

#include "oracles.hpp"
#include "soundq/dsp/fft.hpp"
#include "soundq/error.hpp"
#include "soundq/spectral.hpp"
#include "soundq/synth.hpp"

using namespace soundq;

namespace {

AudioBuffer mono(std::vector<double> samples, double rate = 48000.0) {
  AudioBuffer buffer;
  buffer.sample_rate_hz = rate;
  buffer.channels.push_back(std::move(samples));
  return buffer;
}

}  // namespace

TEST_CASE("A-weighting hits the anchor and the tabulated corrections") {
  CHECK(a_weighting_db(1000.0) == 0.0);  // exact by construction
  // Hand-evaluated IEC 61672 rational formula.
  CHECK(std::abs(a_weighting_db(100.0) - (-19.1)) < 0.1);
  CHECK(std::abs(a_weighting_db(4000.0) - 1.0) < 0.1);
  CHECK_THROWS_AS(a_weighting_db(0.0), Error);
  CHECK_THROWS_AS(a_weighting_db(-10.0), Error);
}

TEST_CASE("third-octave band definitions tile without gaps below Nyquist") {
  const auto defs = third_octave_band_defs(24000.0);
  REQUIRE(defs.size() == 27);
  CHECK(defs.front().nominal_hz == doctest::Approx(25.0));
  CHECK(defs.back().nominal_hz == doctest::Approx(10000.0));
  for (std::size_t i = 1; i < defs.size(); ++i) {
    CHECK(defs[i].lo_hz == doctest::Approx(defs[i - 1].hi_hz).epsilon(1e-12));
  }
  // Low sample rates lose top bands.
  CHECK(third_octave_band_defs(6000.0).back().nominal_hz == doctest::Approx(5000.0));
}

TEST_CASE("pure tone concentrates into its band, neighbors 30 dB down") {
  const auto buffer = pure_tone({1000.0, 60.0, 2.0, 48000.0});
  const auto spectrum = third_octave(buffer, 0, Weighting::Z);
  double at_1k = -999.0;
  double neighbor = -999.0;
  for (std::size_t i = 0; i < spectrum.bands.size(); ++i) {
    const auto& band = spectrum.bands[i];
    if (band.center_hz == 1000.0) {
      REQUIRE(band.level_db.has_value());
      at_1k = *band.level_db;
      for (auto j : {i - 1, i + 1}) {
        if (spectrum.bands[j].level_db) {
          neighbor = std::max(neighbor, *spectrum.bands[j].level_db);
        }
      }
    }
  }
  CHECK(at_1k == doctest::Approx(60.0).epsilon(0.005));
  CHECK(at_1k - neighbor >= 30.0);
}

TEST_CASE("silence flags every band below floor") {
  const auto spectrum = third_octave(mono(std::vector<double>(48000, 0.0)), 0, Weighting::Z);
  for (const auto& band : spectrum.bands) CHECK_FALSE(band.level_db.has_value());
}

TEST_CASE("A-weighted spectrum applies the curve at band centers") {
  const auto buffer = pure_tone({1000.0, 60.0, 1.0, 48000.0});
  const auto z = third_octave(buffer, 0, Weighting::Z);
  const auto a = third_octave(buffer, 0, Weighting::A);
  for (std::size_t i = 0; i < z.bands.size(); ++i) {
    if (z.bands[i].center_hz == 1000.0) {
      REQUIRE(a.bands[i].level_db.has_value());
      CHECK(*a.bands[i].level_db == doctest::Approx(*z.bands[i].level_db).epsilon(1e-6));
    }
  }
}

TEST_CASE("white-noise band powers conserve energy within 0.5 dB") {
  // Oracle: direct full-length periodogram restricted to the covered range.
  const auto noise = oracles::white_noise(96000, 314, 0.05);
  const auto buffer = mono(noise);
  const auto spectrum = third_octave(buffer, 0, Weighting::Z);
  double band_sum = 0.0;
  for (const auto& band : spectrum.bands) {
    REQUIRE(band.level_db.has_value());
    band_sum += std::pow(10.0, *band.level_db / 10.0) * kReferencePressurePa *
                kReferencePressurePa;
  }
  const auto defs = third_octave_band_defs(24000.0);
  dsp::RealFft fft(noise.size());
  std::vector<std::complex<double>> full(fft.bins());
  fft.forward(noise, full);
  const double direct = oracles::direct_power_in_range(noise, 48000.0, defs.front().lo_hz,
                                                       defs.back().hi_hz, full);
  CHECK(std::abs(10.0 * std::log10(band_sum / direct)) < 0.5);
}

TEST_CASE("third_octave rejects empty windows") {
  CHECK_THROWS_AS(third_octave(mono({}), 0, Weighting::Z), Error);
  CHECK_THROWS_AS(third_octave(mono({0.1, 0.2}), 5, Weighting::Z), Error);
}

TEST_CASE("SPL series of a constant tone is flat within 0.05 dB") {
  const auto buffer = pure_tone({1000.0, 60.0, 2.0, 48000.0});
  const auto series = spl_time_series(buffer, 0, 0.25);
  REQUIRE(series.levels_dba.size() == 8);
  for (const auto& level : series.levels_dba) {
    REQUIRE(level.has_value());
    CHECK(std::abs(*level - *series.levels_dba[0]) < 0.05);
  }
}

TEST_CASE("a +10 dB step shows as two plateaus 10 dB apart") {
  auto low = pure_tone({1000.0, 60.0, 1.0, 48000.0});
  auto high = pure_tone({1000.0, 70.0, 1.0, 48000.0});
  auto samples = low.channels[0];
  samples.insert(samples.end(), high.channels[0].begin(), high.channels[0].end());
  const auto series = spl_time_series(mono(std::move(samples)), 0, 0.5);
  REQUIRE(series.levels_dba.size() == 4);
  CHECK(std::abs(*series.levels_dba[1] - *series.levels_dba[0]) < 0.1);
  CHECK(std::abs(*series.levels_dba[3] - *series.levels_dba[2]) < 0.1);
  CHECK(*series.levels_dba[2] - *series.levels_dba[1] == doctest::Approx(10.0).epsilon(0.01));
}

TEST_CASE("series length is floor(duration / interval)") {
  const auto buffer = pure_tone({1000.0, 60.0, 6.0, 48000.0});
  CHECK(spl_time_series(buffer, 0, 0.3).levels_dba.size() == 20);
  CHECK(spl_time_series(buffer, 0, 0.7).levels_dba.size() == 8);
  CHECK_THROWS_AS(spl_time_series(buffer, 0, 7.0), Error);
  CHECK_THROWS_AS(spl_time_series(buffer, 0, 0.0), Error);
}

TEST_CASE("la_eq evaluates the printed formula") {
  CHECK(la_eq({{{80.0, 1.0}}}) == doctest::Approx(80.0).epsilon(1e-12));
  // 10*log10(0.5*1e8 + 0.5*1e7) = 10*log10(5.5e7)
  CHECK(la_eq({{{80.0, 0.5}, {70.0, 0.5}}}) == doctest::Approx(77.4036).epsilon(1e-5));
  // Three equal readings with fractions totalling 0.9.
  CHECK(la_eq({{{70.0, 0.3}, {70.0, 0.3}, {70.0, 0.3}}}) ==
        doctest::Approx(69.5424).epsilon(1e-5));
}

TEST_CASE("la_eq enforces the observation invariants") {
  CHECK_THROWS_AS(la_eq({}), Error);
  CHECK_THROWS_AS(la_eq({{{80.0, 0.0}}}), Error);
  CHECK_THROWS_AS(la_eq({{{80.0, 1.2}}}), Error);
  CHECK_THROWS_AS(la_eq({{{80.0, 0.6}, {70.0, 0.6}}}), Error);
}

TEST_CASE("la_eq matches the brute-force oracle on random observation sets") {
  std::mt19937_64 engine(7);
  std::uniform_real_distribution<double> level_dist(30.0, 100.0);
  std::uniform_int_distribution<int> count_dist(1, 16);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = count_dist(engine);
    LevelObservations obs;
    std::vector<std::pair<double, double>> mirror;
    for (int i = 0; i < n; ++i) {
      const double level = level_dist(engine);
      const double alpha = 1.0 / n;
      obs.entries.push_back({level, alpha});
      mirror.push_back({level, alpha});
    }
    CHECK(std::abs(la_eq(obs) - oracles::direct_la_eq(mirror)) < 1e-9);
  }
}

TEST_CASE("la_eq gain shift, dominance and monotonicity") {
  std::mt19937_64 engine(11);
  std::uniform_real_distribution<double> level_dist(30.0, 100.0);
  for (int trial = 0; trial < 100; ++trial) {
    LevelObservations obs;
    const int n = 1 + static_cast<int>(engine() % 8);
    double max_level = -1e9;
    for (int i = 0; i < n; ++i) {
      const double level = level_dist(engine);
      obs.entries.push_back({level, 1.0 / n});
      max_level = std::max(max_level, level);
    }
    const double base = la_eq(obs);

    auto shifted = obs;
    const double k = 7.5;
    for (auto& e : shifted.entries) e.level_db += k;
    CHECK(std::abs(la_eq(shifted) - base - k) < 1e-9);

    CHECK(max_level >= base - 1e-12);

    auto bumped = obs;
    bumped.entries[0].level_db += 1.0;
    CHECK(la_eq(bumped) > base);
  }
}

TEST_CASE("la_eq_from_series distributes alpha across readings") {
  SplSeries series;
  series.interval_s = 30.0;
  series.levels_dba = {80.0};
  CHECK(*la_eq_from_series(series, 1.0) == doctest::Approx(80.0).epsilon(1e-9));

  series.levels_dba = {80.0, 80.0};
  CHECK(*la_eq_from_series(series, 1.0) == doctest::Approx(80.0).epsilon(1e-9));

  // 10*log10(0.9 * (1e8 + 1e7) / 2)
  series.levels_dba = {80.0, 70.0};
  CHECK(*la_eq_from_series(series, 0.9) == doctest::Approx(76.9461).epsilon(1e-5));

  // Literal mode keeps the unnormalized sum: grows with n.
  series.levels_dba = {80.0, 80.0};
  CHECK(*la_eq_from_series(series, 0.9, LaEqMode::LiteralSum) ==
        doctest::Approx(10.0 * std::log10(0.9 * 2e8)).epsilon(1e-9));
}

TEST_CASE("la_eq_from_series handles below-floor readings") {
  SplSeries series;
  series.interval_s = 1.0;
  series.levels_dba = {std::nullopt, std::nullopt};
  CHECK_FALSE(la_eq_from_series(series, 0.9).has_value());

  series.levels_dba = {std::nullopt, 70.0};
  // Silent reading contributes zero power but still counts toward n.
  CHECK(*la_eq_from_series(series, 1.0) ==
        doctest::Approx(10.0 * std::log10(0.5e7)).epsilon(1e-9));

  CHECK_THROWS_AS(la_eq_from_series(series, 0.0), Error);
  CHECK_THROWS_AS(la_eq_from_series(SplSeries{}, 0.9), Error);
}

TEST_CASE("LA_eq label renders the alpha percentage") {
  CHECK(la_eq_label(0.9) == "LA_eq(90)");
  CHECK(la_eq_label(1.0) == "LA_eq(100)");
}

TEST_CASE("spectrum CSV has one row per band and empty cells below floor") {
  const auto spectrum = third_octave(mono(std::vector<double>(48000, 0.0)), 0, Weighting::Z);
  const auto csv = spectrum_to_csv(spectrum);
  CHECK(csv.rfind("center_hz,level_db\n", 0) == 0);
  std::size_t rows = 0;
  for (char c : csv) rows += c == '\n';
  CHECK(rows == spectrum.bands.size() + 1);
  CHECK(csv.find("25,\n") != std::string::npos);
}
