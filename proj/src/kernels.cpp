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

#include "soundq/dsp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "soundq/dsp/fft.hpp"
#include "soundq/error.hpp"

namespace soundq::dsp {

namespace {

// Maps a band's [lo, hi) interval to FFT bin indices [k_lo, k_hi).
std::pair<std::size_t, std::size_t> band_bins(const BandEdges& band, double sample_rate_hz,
                                              std::size_t fft_len, std::size_t n_bins) {
  const double bin_hz = sample_rate_hz / static_cast<double>(fft_len);
  const auto clamp_bin = [n_bins](double k) {
    return static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(n_bins)));
  };
  const std::size_t k_lo = clamp_bin(std::ceil(band.lo_hz / bin_hz));
  const std::size_t k_hi = clamp_bin(std::ceil(band.hi_hz / bin_hz));
  return {k_lo, std::max(k_lo, k_hi)};
}

// One-sided doubling factor: DC and (for even lengths) Nyquist occur once.
double one_sided_scale(std::size_t k, std::size_t fft_len, std::size_t n_bins) {
  const bool at_dc = k == 0;
  const bool at_nyquist = (fft_len % 2 == 0) && (k == n_bins - 1);
  return (at_dc || at_nyquist) ? 1.0 : 2.0;
}

struct WelchLayout {
  std::size_t n_windows = 0;
  std::vector<double> window;
  double window_power = 0.0;           // sum of squared coefficients
  std::vector<int> bin_band;           // -1 = outside every band
};

WelchLayout welch_layout(std::size_t signal_len, double sample_rate_hz,
                         std::span<const BandEdges> bands, std::size_t window_len,
                         std::size_t hop, std::size_t n_bins) {
  if (window_len == 0 || hop == 0) {
    throw Error(Errc::InvalidArgument, "window and hop must be positive");
  }
  if (signal_len < window_len) {
    throw Error(Errc::BufferTooShort, "signal shorter than one analysis window");
  }
  WelchLayout layout;
  layout.n_windows = 1 + (signal_len - window_len) / hop;
  layout.window = hann_window(window_len);
  for (double w : layout.window) layout.window_power += w * w;
  layout.bin_band.assign(n_bins, -1);
  for (std::size_t b = 0; b < bands.size(); ++b) {
    const auto [k_lo, k_hi] = band_bins(bands[b], sample_rate_hz, window_len, n_bins);
    for (std::size_t k = k_lo; k < k_hi; ++k) layout.bin_band[k] = static_cast<int>(b);
  }
  return layout;
}

void window_band_powers(std::span<const double> source, const WelchLayout& layout,
                        const RealFft& fft, std::span<double> scratch_time,
                        std::span<std::complex<double>> scratch_spec,
                        std::span<double> row) {
  const std::size_t len = layout.window.size();
  for (std::size_t i = 0; i < len; ++i) scratch_time[i] = source[i] * layout.window[i];
  fft.forward(scratch_time, scratch_spec);
  std::fill(row.begin(), row.end(), 0.0);
  const std::size_t n_bins = scratch_spec.size();
  const double norm = 1.0 / (static_cast<double>(len) * layout.window_power);
  for (std::size_t k = 0; k < n_bins; ++k) {
    const int b = layout.bin_band[k];
    if (b < 0) continue;
    row[static_cast<std::size_t>(b)] +=
        one_sided_scale(k, len, n_bins) * std::norm(scratch_spec[k]) * norm;
  }
}

std::vector<double> reduce_rows(const std::vector<double>& rows, std::size_t n_windows,
                                std::size_t n_bands) {
  std::vector<double> result(n_bands, 0.0);
  for (std::size_t w = 0; w < n_windows; ++w) {
    for (std::size_t b = 0; b < n_bands; ++b) result[b] += rows[w * n_bands + b];
  }
  const double inv = 1.0 / static_cast<double>(n_windows);
  for (auto& v : result) v *= inv;
  return result;
}

void analytic_band_spectrum(std::span<const std::complex<double>> spectrum,
                            const BandEdges& band, double sample_rate_hz,
                            std::size_t fft_len,
                            std::span<std::complex<double>> analytic) {
  std::fill(analytic.begin(), analytic.end(), std::complex<double>(0.0, 0.0));
  const std::size_t n_bins = spectrum.size();
  const auto [k_lo, k_hi] = band_bins(band, sample_rate_hz, fft_len, n_bins);
  for (std::size_t k = k_lo; k < k_hi; ++k) {
    analytic[k] = spectrum[k] * one_sided_scale(k, fft_len, n_bins);
  }
}

}  // namespace

std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                 static_cast<double>(n)));
  }
  return w;
}

std::vector<double> welch_band_powers(std::span<const double> x, double sample_rate_hz,
                                      std::span<const BandEdges> bands,
                                      std::size_t window_len, std::size_t hop) {
  if (window_len == 0 || hop == 0) {
    throw Error(Errc::InvalidArgument, "window and hop must be positive");
  }
  RealFft fft(window_len);
  const auto layout =
      welch_layout(x.size(), sample_rate_hz, bands, window_len, hop, fft.bins());
  std::vector<double> rows(layout.n_windows * bands.size());

#pragma omp parallel
  {
    std::vector<double> time(window_len);
    std::vector<std::complex<double>> spec(fft.bins());
#pragma omp for schedule(static)
    for (std::ptrdiff_t w = 0; w < static_cast<std::ptrdiff_t>(layout.n_windows); ++w) {
      const auto uw = static_cast<std::size_t>(w);
      window_band_powers(x.subspan(uw * hop, window_len), layout, fft, time, spec,
                         std::span(rows).subspan(uw * bands.size(), bands.size()));
    }
  }
  return reduce_rows(rows, layout.n_windows, bands.size());
}

std::vector<std::vector<double>> band_envelopes(std::span<const double> x,
                                                double sample_rate_hz,
                                                std::span<const BandEdges> bands) {
  const std::size_t n = x.size();
  if (n == 0) throw Error(Errc::BufferTooShort, "empty signal");
  RealFft rfft(n);
  std::vector<std::complex<double>> spectrum(rfft.bins());
  rfft.forward(x, spectrum);
  ComplexFft cfft(n);

  std::vector<std::vector<double>> envelopes(bands.size());
#pragma omp parallel
  {
    std::vector<std::complex<double>> analytic_spec(n);
    std::vector<std::complex<double>> analytic(n);
#pragma omp for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(bands.size()); ++b) {
      analytic_band_spectrum(spectrum, bands[static_cast<std::size_t>(b)], sample_rate_hz,
                             n, analytic_spec);
      cfft.inverse(analytic_spec, analytic);
      auto& row = envelopes[static_cast<std::size_t>(b)];
      row.resize(n);
      for (std::size_t i = 0; i < n; ++i) row[i] = std::abs(analytic[i]);
    }
  }
  return envelopes;
}

std::vector<double> band_mean_square(std::span<const double> x, double sample_rate_hz,
                                     std::span<const BandEdges> bands) {
  const std::size_t n = x.size();
  if (n == 0) throw Error(Errc::BufferTooShort, "empty signal");
  RealFft fft(n);
  std::vector<std::complex<double>> spectrum(fft.bins());
  fft.forward(x, spectrum);
  const double norm = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  std::vector<double> result(bands.size(), 0.0);
  for (std::size_t b = 0; b < bands.size(); ++b) {
    const auto [k_lo, k_hi] = band_bins(bands[b], sample_rate_hz, n, spectrum.size());
    for (std::size_t k = k_lo; k < k_hi; ++k) {
      result[b] += one_sided_scale(k, n, spectrum.size()) * std::norm(spectrum[k]) * norm;
    }
  }
  return result;
}

namespace ref {

std::vector<double> welch_band_powers(std::span<const double> x, double sample_rate_hz,
                                      std::span<const BandEdges> bands,
                                      std::size_t window_len, std::size_t hop) {
  if (window_len == 0 || hop == 0) {
    throw Error(Errc::InvalidArgument, "window and hop must be positive");
  }
  RealFft fft(window_len);
  const auto layout =
      welch_layout(x.size(), sample_rate_hz, bands, window_len, hop, fft.bins());
  std::vector<double> rows(layout.n_windows * bands.size());
  std::vector<double> time(window_len);
  std::vector<std::complex<double>> spec(fft.bins());
  for (std::size_t w = 0; w < layout.n_windows; ++w) {
    window_band_powers(x.subspan(w * hop, window_len), layout, fft, time, spec,
                       std::span(rows).subspan(w * bands.size(), bands.size()));
  }
  return reduce_rows(rows, layout.n_windows, bands.size());
}

std::vector<std::vector<double>> band_envelopes(std::span<const double> x,
                                                double sample_rate_hz,
                                                std::span<const BandEdges> bands) {
  const std::size_t n = x.size();
  if (n == 0) throw Error(Errc::BufferTooShort, "empty signal");
  RealFft rfft(n);
  std::vector<std::complex<double>> spectrum(rfft.bins());
  rfft.forward(x, spectrum);
  ComplexFft cfft(n);

  std::vector<std::vector<double>> envelopes(bands.size());
  std::vector<std::complex<double>> analytic_spec(n);
  std::vector<std::complex<double>> analytic(n);
  for (std::size_t b = 0; b < bands.size(); ++b) {
    analytic_band_spectrum(spectrum, bands[b], sample_rate_hz, n, analytic_spec);
    cfft.inverse(analytic_spec, analytic);
    auto& row = envelopes[b];
    row.resize(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = std::abs(analytic[i]);
  }
  return envelopes;
}

}  // namespace ref

}  // namespace soundq::dsp
