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

#include <optional>
#include <string>
#include <vector>

#include "soundq/annoyance.hpp"
#include "soundq/audio.hpp"
#include "soundq/loudness.hpp"
#include "soundq/spectral.hpp"
#include "soundq/sq_metrics.hpp"

namespace soundq {

/// Knobs of the analyze pipeline; defaults mirror the measurement protocol
/// (30 s level readings, alpha = 0.9, 0.5 s metric windows).
struct AnalysisConfig {
  double interval_s = 30.0;
  double alpha = 0.9;
  double hop_s = 0.5;
  FluctuationMode fluctuation_mode = FluctuationMode::Standard;
  LaEqMode la_eq_mode = LaEqMode::TimeFraction;
  /// Modulation metrics are evaluated on consecutive segments of at most
  /// this length (longer segments resolve lower modulation frequencies).
  double modulation_segment_s = 4.0;
};

struct ChannelAnalysis {
  std::string label;
  std::optional<double> la_eq_db;
  SplSeries spl_series;
  ThirdOctaveSpectrum spectrum_dba;
  PsychoMetricsSummary metrics;
  double loudness_n5 = 0.0;
  double annoyance_index = 0.0;
  double annoyance_index_max = 0.0;
};

struct AnalysisResult {
  DeviceSpec device;
  SpeedSetting setting = SpeedSetting::S1;
  std::string source_name;
  double sample_rate_hz = 0.0;
  double duration_s = 0.0;
  std::size_t channel_count = 0;
  AnalysisConfig config;
  std::vector<ChannelAnalysis> channels;
};

/// Runs the full metric chain on every channel of a calibrated buffer.
/// The SPL interval is clamped to the signal length so short reference
/// stimuli still produce a one-entry series.
AnalysisResult analyze_buffer(const AudioBuffer& buffer, const DeviceSpec& device,
                              SpeedSetting setting, const AnalysisConfig& config,
                              const std::string& source_name);

}  // namespace soundq
