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

#include <cstddef>
#include <span>
#include <vector>

namespace soundq::dsp {

/// Half-open frequency interval [lo_hz, hi_hz).
struct BandEdges {
  double lo_hz = 0.0;
  double hi_hz = 0.0;
};

/// Periodic Hann window of length n.
std::vector<double> hann_window(std::size_t n);

/// Welch-averaged band powers.
///
/// The signal is cut into Hann windows of `window_len` samples advanced by
/// `hop`; each window's one-sided periodogram is summed into the requested
/// bands and the per-window band powers are averaged. Powers are calibrated
/// so that the sum over all bins of one window equals the windowed mean
/// square of the signal; for stationary input the band powers therefore sum
/// to the signal power over the covered range.
///
/// Parallel over windows; results are identical to the serial reference for
/// any thread count (per-window rows are reduced in fixed order).
std::vector<double> welch_band_powers(std::span<const double> x, double sample_rate_hz,
                                      std::span<const BandEdges> bands,
                                      std::size_t window_len, std::size_t hop);

/// Magnitude envelopes of the band-limited analytic signal, one row per band.
/// Band limiting and the quadrature component come from masking the full
/// signal spectrum to [lo, hi) and zeroing negative frequencies.
///
/// Parallel over bands.
std::vector<std::vector<double>> band_envelopes(std::span<const double> x,
                                                double sample_rate_hz,
                                                std::span<const BandEdges> bands);

/// Mean square per band of the same masked spectra band_envelopes uses;
/// cheap side output used to gate silent bands.
std::vector<double> band_mean_square(std::span<const double> x, double sample_rate_hz,
                                     std::span<const BandEdges> bands);

namespace ref {

/// Serial reference implementations, kept for testing and as benchmark
/// baselines. Must produce bit-identical results to the parallel kernels.
std::vector<double> welch_band_powers(std::span<const double> x, double sample_rate_hz,
                                      std::span<const BandEdges> bands,
                                      std::size_t window_len, std::size_t hop);

std::vector<std::vector<double>> band_envelopes(std::span<const double> x,
                                                double sample_rate_hz,
                                                std::span<const BandEdges> bands);

}  // namespace ref

}  // namespace soundq::dsp
