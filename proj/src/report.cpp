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

#include "soundq/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "soundq/error.hpp"

namespace soundq {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kAnalysisSchema = "soundq.analysis/1";
constexpr const char* kComparisonSchema = "soundq.comparison/1";
constexpr const char* kModelFormula = "AI = 0.1*(L + SH + 15*R + 5*F)";

double round4(double v) {
  double r = std::round(v * 1e4) / 1e4;
  if (r == 0.0) r = 0.0;  // normalize -0
  return r;
}

Json to_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return round4(*v);
}

Json to_json(const MetricStats& stats) {
  return Json{{"mean", round4(stats.mean)}, {"max", round4(stats.max)},
              {"std", round4(stats.std_pop)}};
}

Json to_json(const DeviceSpec& device) {
  return Json{{"name", device.name},
              {"power_rating_w", to_json(device.power_rating_w)},
              {"suction_pressure", device.suction_pressure},
              {"motor_speed_rpm", to_json(device.motor_speed_rpm)},
              {"weight_kg", to_json(device.weight_kg)}};
}

Json to_json(const ThirdOctaveSpectrum& spectrum) {
  Json centers = Json::array();
  Json levels = Json::array();
  for (const auto& band : spectrum.bands) {
    centers.push_back(band.center_hz);
    levels.push_back(to_json(band.level_db));
  }
  return Json{{"weighting", spectrum.weighting == Weighting::A ? "A" : "Z"},
              {"centers_hz", std::move(centers)},
              {"levels_db", std::move(levels)}};
}

Json to_json(const SplSeries& series) {
  Json levels = Json::array();
  for (const auto& level : series.levels_dba) levels.push_back(to_json(level));
  return Json{{"interval_s", round4(series.interval_s)},
              {"start_s", round4(series.start_s)},
              {"levels_dba", std::move(levels)}};
}

const char* la_eq_mode_name(LaEqMode mode) {
  return mode == LaEqMode::TimeFraction ? "time_fraction" : "literal_sum";
}

MetricStats stats_from_json(const Json& j) {
  return MetricStats{j.at("mean").get<double>(), j.at("max").get<double>(),
                     j.at("std").get<double>()};
}

std::optional<double> optional_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

void csv_row(std::ostringstream& out, const std::string& device, const std::string& channel,
             const std::string& setting, const std::optional<double>& la_eq,
             const PsychoMetricsSummary& metrics, double ai) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
  };
  out << device << ',' << channel << ',' << setting << ',';
  if (la_eq) out << num(*la_eq);
  out << ',';
  for (const MetricStats* stats :
       {&metrics.loudness_sone, &metrics.sharpness_acum, &metrics.roughness_asper,
        &metrics.fluctuation_vacil}) {
    out << num(stats->mean) << ',' << num(stats->max) << ',' << num(stats->std_pop) << ',';
  }
  out << num(ai) << '\n';
}

constexpr const char* kCsvHeader =
    "device,channel,setting,la_eq_db,"
    "loudness_sone_mean,loudness_sone_max,loudness_sone_std,"
    "sharpness_acum_mean,sharpness_acum_max,sharpness_acum_std,"
    "roughness_asper_mean,roughness_asper_max,roughness_asper_std,"
    "fluctuation_vacil_mean,fluctuation_vacil_max,fluctuation_vacil_std,"
    "annoyance_index\n";

}  // namespace

std::string analysis_to_json(const AnalysisResult& result) {
  Json doc;
  doc["schema"] = kAnalysisSchema;
  doc["device"] = to_json(result.device);
  doc["setting"] = to_string(result.setting);
  doc["source"] = Json{{"file", result.source_name},
                       {"sample_rate_hz", result.sample_rate_hz},
                       {"duration_s", round4(result.duration_s)},
                       {"channels", result.channel_count}};
  doc["config"] = Json{{"interval_s", round4(result.config.interval_s)},
                       {"alpha", round4(result.config.alpha)},
                       {"hop_s", round4(result.config.hop_s)},
                       {"modulation_segment_s", round4(result.config.modulation_segment_s)},
                       {"fluctuation_mode", to_string(result.config.fluctuation_mode)},
                       {"la_eq_mode", la_eq_mode_name(result.config.la_eq_mode)},
                       {"la_eq_label", la_eq_label(result.config.alpha)}};
  Json channels = Json::array();
  for (const auto& ch : result.channels) {
    Json entry;
    entry["channel"] = ch.label;
    entry["la_eq_db"] = to_json(ch.la_eq_db);
    entry["spl_series_dba"] = to_json(ch.spl_series);
    entry["spectrum_dba"] = to_json(ch.spectrum_dba);
    entry["loudness_sone"] = to_json(ch.metrics.loudness_sone);
    entry["loudness_n5"] = round4(ch.loudness_n5);
    entry["sharpness_acum"] = to_json(ch.metrics.sharpness_acum);
    entry["roughness_asper"] = to_json(ch.metrics.roughness_asper);
    entry["fluctuation_vacil"] = to_json(ch.metrics.fluctuation_vacil);
    entry["annoyance_index"] = round4(ch.annoyance_index);
    entry["annoyance_index_max"] = round4(ch.annoyance_index_max);
    channels.push_back(std::move(entry));
  }
  doc["channels"] = std::move(channels);
  return doc.dump(2) + "\n";
}

std::string analysis_to_csv(const AnalysisResult& result) {
  std::ostringstream out;
  out << kCsvHeader;
  for (const auto& ch : result.channels) {
    csv_row(out, result.device.name, ch.label, to_string(result.setting), ch.la_eq_db,
            ch.metrics, ch.annoyance_index);
  }
  return out.str();
}

AnalysisResult analysis_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(Errc::BadDocument, std::string("not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("schema").get<std::string>() != kAnalysisSchema) {
      throw Error(Errc::BadDocument, "unknown schema field");
    }
    AnalysisResult result;
    const auto& device = doc.at("device");
    result.device.name = device.at("name").get<std::string>();
    result.device.power_rating_w = optional_from_json(device.at("power_rating_w"));
    result.device.suction_pressure = device.at("suction_pressure").get<std::string>();
    result.device.motor_speed_rpm = optional_from_json(device.at("motor_speed_rpm"));
    result.device.weight_kg = optional_from_json(device.at("weight_kg"));

    const auto setting = parse_speed_setting(doc.at("setting").get<std::string>());
    if (!setting) throw Error(Errc::BadDocument, "bad setting");
    result.setting = *setting;

    const auto& source = doc.at("source");
    result.source_name = source.at("file").get<std::string>();
    result.sample_rate_hz = source.at("sample_rate_hz").get<double>();
    result.duration_s = source.at("duration_s").get<double>();
    result.channel_count = source.at("channels").get<std::size_t>();

    const auto& config = doc.at("config");
    result.config.interval_s = config.at("interval_s").get<double>();
    result.config.alpha = config.at("alpha").get<double>();
    result.config.hop_s = config.at("hop_s").get<double>();
    result.config.modulation_segment_s = config.at("modulation_segment_s").get<double>();
    const auto mode =
        parse_fluctuation_mode(config.at("fluctuation_mode").get<std::string>());
    if (!mode) throw Error(Errc::BadDocument, "bad fluctuation mode");
    result.config.fluctuation_mode = *mode;
    result.config.la_eq_mode = config.at("la_eq_mode").get<std::string>() == "literal_sum"
                                   ? LaEqMode::LiteralSum
                                   : LaEqMode::TimeFraction;

    for (const auto& entry : doc.at("channels")) {
      ChannelAnalysis ch;
      ch.label = entry.at("channel").get<std::string>();
      ch.la_eq_db = optional_from_json(entry.at("la_eq_db"));
      const auto& spl = entry.at("spl_series_dba");
      ch.spl_series.interval_s = spl.at("interval_s").get<double>();
      ch.spl_series.start_s = spl.at("start_s").get<double>();
      for (const auto& level : spl.at("levels_dba")) {
        ch.spl_series.levels_dba.push_back(optional_from_json(level));
      }
      const auto& spectrum = entry.at("spectrum_dba");
      ch.spectrum_dba.weighting =
          spectrum.at("weighting").get<std::string>() == "A" ? Weighting::A : Weighting::Z;
      const auto& centers = spectrum.at("centers_hz");
      const auto& levels = spectrum.at("levels_db");
      if (centers.size() != levels.size()) {
        throw Error(Errc::BadDocument, "spectrum arrays disagree");
      }
      for (std::size_t i = 0; i < centers.size(); ++i) {
        ch.spectrum_dba.bands.push_back(
            {centers[i].get<double>(), optional_from_json(levels[i])});
      }
      ch.metrics.loudness_sone = stats_from_json(entry.at("loudness_sone"));
      ch.metrics.sharpness_acum = stats_from_json(entry.at("sharpness_acum"));
      ch.metrics.roughness_asper = stats_from_json(entry.at("roughness_asper"));
      ch.metrics.fluctuation_vacil = stats_from_json(entry.at("fluctuation_vacil"));
      ch.loudness_n5 = entry.at("loudness_n5").get<double>();
      ch.annoyance_index = entry.at("annoyance_index").get<double>();
      ch.annoyance_index_max = entry.at("annoyance_index_max").get<double>();
      result.channels.push_back(std::move(ch));
    }
    return result;
  } catch (const Json::exception& e) {
    throw Error(Errc::BadDocument, std::string("analysis document: ") + e.what());
  }
}

std::vector<ComparisonEntry> comparison_entries(const AnalysisResult& result) {
  std::vector<ComparisonEntry> entries;
  for (const auto& ch : result.channels) {
    const auto label = parse_channel_label(ch.label);
    if (!label) continue;  // only C1/C2/C3 participate in comparisons
    ComparisonEntry entry;
    entry.meta.channel = *label;
    entry.meta.setting = result.setting;
    entry.meta.device = result.device;
    entry.metrics = ch.metrics;
    entry.la_eq_db = ch.la_eq_db;
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::string comparison_to_json(const ComparisonReport& report,
                               const std::vector<DeviceSpec>& devices) {
  Json doc;
  doc["schema"] = kComparisonSchema;
  doc["model"] = Json{{"formula", kModelFormula},
                      {"scope", report.model.scope},
                      {"outer", report.model.outer},
                      {"w_loudness", report.model.w_loudness},
                      {"w_sharpness", report.model.w_sharpness},
                      {"w_roughness", report.model.w_roughness},
                      {"w_fluctuation", report.model.w_fluctuation}};

  std::map<std::string, const DeviceSpec*> unique;
  for (const auto& device : devices) unique.emplace(device.name, &device);
  Json device_list = Json::array();
  for (const auto& [name, device] : unique) device_list.push_back(to_json(*device));
  doc["devices"] = std::move(device_list);

  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json entry;
    entry["device"] = row.device.name;
    entry["channel"] = to_string(row.channel);
    entry["setting"] = to_string(row.setting);
    entry["la_eq_db"] = to_json(row.la_eq_db);
    entry["loudness_sone"] = to_json(row.metrics.loudness_sone);
    entry["sharpness_acum"] = to_json(row.metrics.sharpness_acum);
    entry["roughness_asper"] = to_json(row.metrics.roughness_asper);
    entry["fluctuation_vacil"] = to_json(row.metrics.fluctuation_vacil);
    entry["annoyance_index"] = round4(row.annoyance_index);
    entry["annoyance_index_max"] = round4(row.annoyance_index_max);
    rows.push_back(std::move(entry));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string comparison_to_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << kCsvHeader;
  for (const auto& row : report.rows) {
    csv_row(out, row.device.name, to_string(row.channel), to_string(row.setting),
            row.la_eq_db, row.metrics, row.annoyance_index);
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error(Errc::IoError, "short write to " + path);
}

}  // namespace soundq
