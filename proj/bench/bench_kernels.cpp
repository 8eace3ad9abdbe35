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

// Parallel kernels against their serial references. Run with
//   ./bench/soundq_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "soundq/bark.hpp"
#include "soundq/dsp/kernels.hpp"
#include "soundq/spectral.hpp"
#include "soundq/synth.hpp"

namespace {

std::vector<double> bench_signal(std::size_t n) {
  std::mt19937_64 engine(12345);
  std::vector<double> x(n);
  for (auto& v : x) {
    v = 0.05 * (static_cast<double>(engine() >> 11) * 0x1.0p-52 - 1.0);
  }
  return x;
}

std::vector<soundq::dsp::BandEdges> spectrum_bands() {
  std::vector<soundq::dsp::BandEdges> bands;
  for (const auto& def : soundq::third_octave_band_defs(24000.0)) {
    bands.push_back({def.lo_hz, def.hi_hz});
  }
  return bands;
}

void bm_welch_parallel(benchmark::State& state) {
  const auto x = bench_signal(static_cast<std::size_t>(state.range(0)));
  const auto bands = spectrum_bands();
  for (auto _ : state) {
    auto powers = soundq::dsp::welch_band_powers(x, 48000.0, bands, 24000, 12000);
    benchmark::DoNotOptimize(powers);
  }
}

void bm_welch_serial(benchmark::State& state) {
  const auto x = bench_signal(static_cast<std::size_t>(state.range(0)));
  const auto bands = spectrum_bands();
  for (auto _ : state) {
    auto powers = soundq::dsp::ref::welch_band_powers(x, 48000.0, bands, 24000, 12000);
    benchmark::DoNotOptimize(powers);
  }
}

std::vector<soundq::dsp::BandEdges> bark_bands() {
  std::vector<soundq::dsp::BandEdges> bands;
  for (int z = 0; z < 24; ++z) {
    bands.push_back({soundq::bark_to_hz(z), soundq::bark_to_hz(z + 1.0)});
  }
  return bands;
}

void bm_envelopes_parallel(benchmark::State& state) {
  const auto x = bench_signal(static_cast<std::size_t>(state.range(0)));
  const auto bands = bark_bands();
  for (auto _ : state) {
    auto envelopes = soundq::dsp::band_envelopes(x, 48000.0, bands);
    benchmark::DoNotOptimize(envelopes);
  }
}

void bm_envelopes_serial(benchmark::State& state) {
  const auto x = bench_signal(static_cast<std::size_t>(state.range(0)));
  const auto bands = bark_bands();
  for (auto _ : state) {
    auto envelopes = soundq::dsp::ref::band_envelopes(x, 48000.0, bands);
    benchmark::DoNotOptimize(envelopes);
  }
}

}  // namespace

BENCHMARK(bm_welch_serial)->Arg(48000 * 4)->Arg(48000 * 30)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_welch_parallel)->Arg(48000 * 4)->Arg(48000 * 30)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_envelopes_serial)->Arg(48000 * 2)->Arg(48000 * 4)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_envelopes_parallel)->Arg(48000 * 2)->Arg(48000 * 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
