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

#include "soundq/audio.hpp"

namespace soundq {

struct MetricStats {
  double mean = 0.0;
  double max = 0.0;
  double std_pop = 0.0;  // population standard deviation
};

struct PsychoMetricsSummary {
  MetricStats loudness_sone;
  MetricStats sharpness_acum;
  MetricStats roughness_asper;
  MetricStats fluctuation_vacil;
};

/// AI = outer * (w_l*L + w_sh*SH + w_r*R + w_f*F), a linear sound-quality
/// model whose published coefficients are scoped to dry-type vacuum cleaners.
struct AnnoyanceModel {
  double outer = 0.1;
  double w_loudness = 1.0;
  double w_sharpness = 1.0;
  double w_roughness = 15.0;
  double w_fluctuation = 5.0;
  std::string scope = "dry-type vacuum cleaners";
};

enum class HeadlineStat { Mean, Max };

double annoyance_index(const PsychoMetricsSummary& metrics,
                       const AnnoyanceModel& model = {},
                       HeadlineStat stat = HeadlineStat::Mean);

/// One run's (or one time window's) metric values.
struct MetricRun {
  double loudness_sone = 0.0;
  double sharpness_acum = 0.0;
  double roughness_asper = 0.0;
  double fluctuation_vacil = 0.0;
};

/// Mean, max and population standard deviation per metric.
/// Throws Error{EmptyInput} for an empty run list.
PsychoMetricsSummary summarize_runs(const std::vector<MetricRun>& runs);

struct ComparisonEntry {
  RecordingMeta meta;
  PsychoMetricsSummary metrics;
  std::optional<double> la_eq_db;
};

struct ComparisonRow {
  DeviceSpec device;
  ChannelLabel channel = ChannelLabel::C1;
  SpeedSetting setting = SpeedSetting::S1;
  std::optional<double> la_eq_db;
  PsychoMetricsSummary metrics;
  double annoyance_index = 0.0;
  double annoyance_index_max = 0.0;
};

struct ComparisonReport {
  AnnoyanceModel model;
  std::vector<ComparisonRow> rows;  // sorted by device, channel, setting
};

/// Assembles and sorts the comparison rows. Throws Error{EmptyInput} on an
/// empty entry list and Error{DuplicateKey} when two entries share the
/// (device, channel, setting) triple.
ComparisonReport build_comparison(const std::vector<ComparisonEntry>& entries,
                                  const AnnoyanceModel& model = {});

}  // namespace soundq
