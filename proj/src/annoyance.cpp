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

#include "soundq/annoyance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "soundq/error.hpp"

namespace soundq {

namespace {

double pick(const MetricStats& stats, HeadlineStat stat) {
  return stat == HeadlineStat::Mean ? stats.mean : stats.max;
}

MetricStats stats_of(const std::vector<double>& values) {
  MetricStats stats;
  stats.max = values.front();
  double sum = 0.0;
  for (double v : values) {
    sum += v;
    stats.max = std::max(stats.max, v);
  }
  stats.mean = sum / static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - stats.mean) * (v - stats.mean);
  stats.std_pop = std::sqrt(var / static_cast<double>(values.size()));
  return stats;
}

}  // namespace

double annoyance_index(const PsychoMetricsSummary& metrics, const AnnoyanceModel& model,
                       HeadlineStat stat) {
  return model.outer * (model.w_loudness * pick(metrics.loudness_sone, stat) +
                        model.w_sharpness * pick(metrics.sharpness_acum, stat) +
                        model.w_roughness * pick(metrics.roughness_asper, stat) +
                        model.w_fluctuation * pick(metrics.fluctuation_vacil, stat));
}

PsychoMetricsSummary summarize_runs(const std::vector<MetricRun>& runs) {
  if (runs.empty()) {
    throw Error(Errc::EmptyInput, "no runs to summarize");
  }
  std::vector<double> l, sh, r, f;
  l.reserve(runs.size());
  sh.reserve(runs.size());
  r.reserve(runs.size());
  f.reserve(runs.size());
  for (const auto& run : runs) {
    l.push_back(run.loudness_sone);
    sh.push_back(run.sharpness_acum);
    r.push_back(run.roughness_asper);
    f.push_back(run.fluctuation_vacil);
  }
  PsychoMetricsSummary summary;
  summary.loudness_sone = stats_of(l);
  summary.sharpness_acum = stats_of(sh);
  summary.roughness_asper = stats_of(r);
  summary.fluctuation_vacil = stats_of(f);
  return summary;
}

ComparisonReport build_comparison(const std::vector<ComparisonEntry>& entries,
                                  const AnnoyanceModel& model) {
  if (entries.empty()) {
    throw Error(Errc::EmptyInput, "no analysis entries");
  }
  ComparisonReport report;
  report.model = model;
  report.rows.reserve(entries.size());

  std::set<std::tuple<std::string, int, int>> keys;
  for (const auto& entry : entries) {
    const auto key = std::make_tuple(entry.meta.device.name,
                                     static_cast<int>(entry.meta.channel),
                                     static_cast<int>(entry.meta.setting));
    if (!keys.insert(key).second) {
      throw Error(Errc::DuplicateKey,
                  entry.meta.device.name + "/" + to_string(entry.meta.channel) + "/" +
                      to_string(entry.meta.setting) + " appears twice");
    }
    ComparisonRow row;
    row.device = entry.meta.device;
    row.channel = entry.meta.channel;
    row.setting = entry.meta.setting;
    row.la_eq_db = entry.la_eq_db;
    row.metrics = entry.metrics;
    row.annoyance_index = annoyance_index(entry.metrics, model, HeadlineStat::Mean);
    row.annoyance_index_max = annoyance_index(entry.metrics, model, HeadlineStat::Max);
    report.rows.push_back(std::move(row));
  }

  std::sort(report.rows.begin(), report.rows.end(), [](const auto& a, const auto& b) {
    return std::tuple(a.device.name, static_cast<int>(a.channel),
                      static_cast<int>(a.setting)) <
           std::tuple(b.device.name, static_cast<int>(b.channel),
                      static_cast<int>(b.setting));
  });
  return report;
}

}  // namespace soundq
