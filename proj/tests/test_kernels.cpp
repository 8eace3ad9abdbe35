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
#include <numbers>

#include "oracles.hpp"
#include "soundq/dsp/fft.hpp"
#include "soundq/dsp/kernels.hpp"
#include "soundq/error.hpp"

using namespace soundq;

TEST_CASE("RealFft matches a naive DFT on even and odd sizes") {
  for (std::size_t n : {64u, 63u, 100u}) {
    const auto x = oracles::white_noise(n, 1000 + n);
    dsp::RealFft fft(n);
    std::vector<std::complex<double>> out(fft.bins());
    fft.forward(x, out);
    const auto expected = oracles::naive_dft(x);
    REQUIRE(out.size() == expected.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
      CHECK(std::abs(out[k] - expected[k]) < 1e-8 * static_cast<double>(n));
    }
  }
}

TEST_CASE("RealFft inverse round-trips and preserves its input") {
  const std::size_t n = 96;
  const auto x = oracles::white_noise(n, 5);
  dsp::RealFft fft(n);
  std::vector<std::complex<double>> spectrum(fft.bins());
  fft.forward(x, spectrum);
  const auto spectrum_copy = spectrum;
  std::vector<double> back(n);
  fft.inverse(spectrum, back);
  for (std::size_t i = 0; i < n; ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-12));
  for (std::size_t k = 0; k < spectrum.size(); ++k) CHECK(spectrum[k] == spectrum_copy[k]);
}

TEST_CASE("ComplexFft round-trips") {
  const std::size_t n = 75;
  std::vector<std::complex<double>> x(n);
  const auto re = oracles::white_noise(n, 6);
  const auto im = oracles::white_noise(n, 7);
  for (std::size_t i = 0; i < n; ++i) x[i] = {re[i], im[i]};
  dsp::ComplexFft fft(n);
  std::vector<std::complex<double>> spectrum(n);
  std::vector<std::complex<double>> back(n);
  fft.forward(x, spectrum);
  fft.inverse(spectrum, back);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-12);
}

TEST_CASE("FFT wrappers reject size mismatches") {
  dsp::RealFft fft(16);
  std::vector<double> x(8);
  std::vector<std::complex<double>> out(9);
  CHECK_THROWS_AS(fft.forward(x, out), Error);
}

TEST_CASE("Welch band power of a sinusoid equals its mean square") {
  const std::size_t n = 48000;
  std::vector<double> x(n);
  const double amplitude = 0.3;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = amplitude * std::sin(2.0 * std::numbers::pi * 997.0 * static_cast<double>(i) / 48000.0);
  }
  const dsp::BandEdges bands[] = {{900.0, 1100.0}, {2000.0, 3000.0}};
  const auto powers = dsp::welch_band_powers(x, 48000.0, bands, 24000, 12000);
  CHECK(powers[0] == doctest::Approx(amplitude * amplitude / 2.0).epsilon(1e-3));
  CHECK(powers[1] < 1e-12);
}

TEST_CASE("parallel Welch kernel is bit-identical to the serial reference") {
  const auto x = oracles::white_noise(50000, 12, 0.2);
  const dsp::BandEdges bands[] = {{50.0, 200.0}, {200.0, 1000.0}, {1000.0, 8000.0}};
  for (std::size_t hop : {4000u, 7919u}) {
    const auto parallel = dsp::welch_band_powers(x, 48000.0, bands, 8192, hop);
    const auto serial = dsp::ref::welch_band_powers(x, 48000.0, bands, 8192, hop);
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t b = 0; b < parallel.size(); ++b) CHECK(parallel[b] == serial[b]);
  }
}

TEST_CASE("parallel envelope kernel is bit-identical to the serial reference") {
  const auto x = oracles::white_noise(20000, 13, 0.1);
  const dsp::BandEdges bands[] = {{100.0, 500.0}, {500.0, 2000.0}, {2000.0, 9000.0}};
  const auto parallel = dsp::band_envelopes(x, 48000.0, bands);
  const auto serial = dsp::ref::band_envelopes(x, 48000.0, bands);
  REQUIRE(parallel.size() == serial.size());
  for (std::size_t b = 0; b < parallel.size(); ++b) {
    REQUIRE(parallel[b].size() == serial[b].size());
    for (std::size_t i = 0; i < parallel[b].size(); ++i) {
      CHECK(parallel[b][i] == serial[b][i]);
    }
  }
}

TEST_CASE("envelope of an AM tone follows the modulation law") {
  const std::size_t n = 48000;
  std::vector<double> x(n);
  const double depth = 0.5;
  for (std::size_t i = 0; i < n; ++i) {
    const auto t = static_cast<double>(i) / 48000.0;
    x[i] = (1.0 + depth * std::sin(2.0 * std::numbers::pi * 10.0 * t)) *
           std::sin(2.0 * std::numbers::pi * 1000.0 * t);
  }
  const dsp::BandEdges bands[] = {{800.0, 1300.0}};
  const auto envelopes = dsp::band_envelopes(x, 48000.0, bands);
  // Compare against the analytic envelope away from the edges.
  for (std::size_t i = n / 10; i < n - n / 10; i += 997) {
    const auto t = static_cast<double>(i) / 48000.0;
    const double expected = 1.0 + depth * std::sin(2.0 * std::numbers::pi * 10.0 * t);
    CHECK(envelopes[0][i] == doctest::Approx(expected).epsilon(0.01));
  }
}

TEST_CASE("band mean square splits energy by Parseval") {
  const auto x = oracles::white_noise(32768, 21, 0.1);
  // The upper edge is exclusive, so stretch past fs/2 to cover the Nyquist
  // bin and match the time-domain total.
  const dsp::BandEdges bands[] = {{0.0, 24001.0}};
  const auto total = dsp::band_mean_square(x, 48000.0, bands);
  double direct = 0.0;
  for (double v : x) direct += v * v;
  direct /= static_cast<double>(x.size());
  CHECK(total[0] == doctest::Approx(direct).epsilon(1e-9));

  // Splitting the range partitions the energy.
  const dsp::BandEdges split[] = {{0.0, 1000.0}, {1000.0, 24001.0}};
  const auto parts = dsp::band_mean_square(x, 48000.0, split);
  CHECK(parts[0] + parts[1] == doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("kernels reject degenerate inputs") {
  const dsp::BandEdges bands[] = {{100.0, 200.0}};
  std::vector<double> x(100, 0.0);
  CHECK_THROWS_AS(dsp::welch_band_powers(x, 48000.0, bands, 200, 100), Error);
  CHECK_THROWS_AS(dsp::welch_band_powers(x, 48000.0, bands, 0, 100), Error);
  CHECK_THROWS_AS(dsp::band_envelopes({}, 48000.0, bands), Error);
}

TEST_CASE("hann window is periodic and non-negative") {
  const auto w = dsp::hann_window(1024);
  CHECK(w[0] == doctest::Approx(0.0));
  CHECK(w[512] == doctest::Approx(1.0));
  for (double v : w) CHECK(v >= 0.0);
}
