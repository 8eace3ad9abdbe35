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

#include "soundq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "soundq/error.hpp"

namespace soundq {

namespace {

constexpr double kMetricWindowS = 0.5;

struct WindowedMetrics {
  std::vector<double> loudness_sone;
  std::vector<double> sharpness_acum;
};

// Loudness and sharpness share the per-window specific loudness pattern.
WindowedMetrics windowed_loudness_sharpness(std::span<const double> samples,
                                            double sample_rate_hz, double hop_s) {
  const auto window_len =
      static_cast<std::size_t>(std::llround(kMetricWindowS * sample_rate_hz));
  if (window_len == 0 || samples.size() < window_len) {
    throw Error(Errc::BufferTooShort, "signal shorter than one metric window");
  }
  const auto hop = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(hop_s * sample_rate_hz)));
  const std::size_t count = 1 + (samples.size() - window_len) / hop;

  WindowedMetrics series;
  series.loudness_sone.assign(count, 0.0);
  series.sharpness_acum.assign(count, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const auto segment = samples.subspan(uk * hop, window_len);
    const auto spectrum = third_octave_of_span(segment, sample_rate_hz, Weighting::Z,
                                               {kMetricWindowS, 0.5});
    const auto pattern = specific_loudness(spectrum);
    const double sone = total_loudness_sone(pattern);
    series.loudness_sone[uk] = sone;
    // Silent windows carry no sharpness; report zero rather than undefined.
    series.sharpness_acum[uk] = sone > 0.0 ? sharpness_acum(pattern) : 0.0;
  }
  return series;
}

struct ModulationSeries {
  std::vector<double> roughness_asper;
  std::vector<double> fluctuation_vacil;
};

ModulationSeries segmented_modulation(const AudioBuffer& buffer, std::size_t channel,
                                      const AnalysisConfig& config) {
  const auto& samples = buffer.channels[channel];
  const auto segment_len = std::min(
      samples.size(), static_cast<std::size_t>(
                          std::llround(config.modulation_segment_s * buffer.sample_rate_hz)));
  if (segment_len == 0) {
    throw Error(Errc::BufferTooShort, "signal shorter than one modulation segment");
  }
  const std::size_t count = samples.size() / segment_len;

  const auto fluctuation_config = FluctuationConfig::for_mode(config.fluctuation_mode);
  ModulationSeries series;
  series.roughness_asper.reserve(count);
  series.fluctuation_vacil.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    AudioBuffer segment;
    segment.sample_rate_hz = buffer.sample_rate_hz;
    segment.channels.emplace_back(samples.begin() + k * segment_len,
                                  samples.begin() + (k + 1) * segment_len);
    const auto pattern = extract_modulation(segment, 0);
    series.roughness_asper.push_back(roughness_asper(pattern));
    series.fluctuation_vacil.push_back(fluctuation_vacil(pattern, fluctuation_config));
  }
  return series;
}

MetricStats to_metric_stats(const std::vector<double>& values) {
  const SeriesStats stats = series_stats(values);
  return MetricStats{stats.mean, stats.max, stats.std_pop};
}

}  // namespace

AnalysisResult analyze_buffer(const AudioBuffer& buffer, const DeviceSpec& device,
                              SpeedSetting setting, const AnalysisConfig& config,
                              const std::string& source_name) {
  validate(buffer);
  if (!(config.alpha > 0.0) || config.alpha > 1.0) {
    throw Error(Errc::InvalidArgument, "alpha must lie in (0, 1]");
  }
  if (!(config.interval_s > 0.0) || !(config.hop_s > 0.0) ||
      !(config.modulation_segment_s > 0.0)) {
    throw Error(Errc::InvalidArgument, "intervals and hops must be positive");
  }

  AnalysisResult result;
  result.device = device;
  result.setting = setting;
  result.source_name = source_name;
  result.sample_rate_hz = buffer.sample_rate_hz;
  result.duration_s = buffer.duration_s();
  result.channel_count = buffer.channel_count();
  result.config = config;

  const double interval_s = std::min(config.interval_s, result.duration_s);

  for (std::size_t c = 0; c < buffer.channel_count(); ++c) {
    ChannelAnalysis channel;
    channel.label = buffer.labels.empty() ? "ch" + std::to_string(c + 1) : buffer.labels[c];

    channel.spectrum_dba = third_octave(buffer, c, Weighting::A);
    channel.spl_series = spl_time_series(buffer, c, interval_s);
    channel.la_eq_db = la_eq_from_series(channel.spl_series, config.alpha, config.la_eq_mode);

    const auto windowed =
        windowed_loudness_sharpness(buffer.channels[c], buffer.sample_rate_hz, config.hop_s);
    const auto modulation = segmented_modulation(buffer, c, config);

    channel.metrics.loudness_sone = to_metric_stats(windowed.loudness_sone);
    channel.metrics.sharpness_acum = to_metric_stats(windowed.sharpness_acum);
    channel.metrics.roughness_asper = to_metric_stats(modulation.roughness_asper);
    channel.metrics.fluctuation_vacil = to_metric_stats(modulation.fluctuation_vacil);
    channel.loudness_n5 = percentile_exceeded_5(windowed.loudness_sone);
    channel.annoyance_index = annoyance_index(channel.metrics, {}, HeadlineStat::Mean);
    channel.annoyance_index_max = annoyance_index(channel.metrics, {}, HeadlineStat::Max);

    result.channels.push_back(std::move(channel));
  }
  return result;
}

}  // namespace soundq
