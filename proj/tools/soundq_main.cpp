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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "soundq/analysis.hpp"
#include "soundq/annoyance.hpp"
#include "soundq/calibration.hpp"
#include "soundq/error.hpp"
#include "soundq/report.hpp"
#include "soundq/svg.hpp"
#include "soundq/synth.hpp"
#include "soundq/wav.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct SynthOptions {
  double fc = 1000.0;
  double level = 60.0;
  double duration = 2.0;
  double sample_rate = 48000.0;
  double fmod = 4.0;
  double depth = 1.0;
  double bandwidth = 140.0;
  std::uint64_t seed = 1;
  std::string out;
};

struct AnalyzeOptions {
  std::string wav_path;
  std::string device_name = "unknown device";
  std::optional<double> power_w;
  std::string suction;
  std::optional<double> rpm;
  std::optional<double> weight_kg;
  std::string setting = "S1";
  std::string channels;
  std::string calibration_path;
  soundq::AnalysisConfig config;
  std::string fluctuation_mode = "standard";
  bool laeq_literal = false;
  std::string format = "json";
  std::string out;
  bool plot = false;
  std::string spectrum_csv;
};

struct CompareOptions {
  std::vector<std::string> report_paths;
  std::string format = "json";
  std::string out;
  bool plot = false;
  std::string plot_dir = ".";
};

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    soundq::write_text_file(out_path, content);
  }
}

std::vector<std::string> channel_labels(const std::string& csv, std::size_t count) {
  std::vector<std::string> labels;
  if (!csv.empty()) {
    std::string current;
    for (char c : csv) {
      if (c == ',') {
        labels.push_back(current);
        current.clear();
      } else {
        current += c;
      }
    }
    labels.push_back(current);
    if (labels.size() != count) {
      throw soundq::Error(soundq::Errc::ChannelMismatch,
                          "--channels names " + std::to_string(labels.size()) +
                              " channels but the file has " + std::to_string(count));
    }
    return labels;
  }
  for (std::size_t i = 0; i < count; ++i) {
    labels.push_back(i < 3 ? "C" + std::to_string(i + 1) : "ch" + std::to_string(i + 1));
  }
  return labels;
}

std::string plot_base(const std::string& out_path) {
  if (out_path.empty()) return "analysis";
  auto path = std::filesystem::path(out_path);
  path.replace_extension();
  return path.string();
}

int run_synth(const std::string& kind, const SynthOptions& opt) {
  soundq::AudioBuffer buffer;
  if (kind == "tone") {
    buffer = soundq::pure_tone({opt.fc, opt.level, opt.duration, opt.sample_rate});
    std::printf("tone: fc=%g Hz level=%g dB SPL dur=%g s sr=%g Hz\n", opt.fc, opt.level,
                opt.duration, opt.sample_rate);
  } else if (kind == "am") {
    buffer = soundq::am_tone(
        {{opt.fc, opt.level, opt.duration, opt.sample_rate}, opt.fmod, opt.depth});
    std::printf("am: fc=%g Hz fmod=%g Hz depth=%g level=%g dB SPL dur=%g s sr=%g Hz\n",
                opt.fc, opt.fmod, opt.depth, opt.level, opt.duration, opt.sample_rate);
  } else {
    buffer = soundq::narrowband_noise(
        {opt.fc, opt.bandwidth, opt.level, opt.duration, opt.sample_rate, opt.seed});
    std::printf(
        "narrowband: fc=%g Hz bw=%g Hz level=%g dB SPL dur=%g s sr=%g Hz seed=%llu\n",
        opt.fc, opt.bandwidth, opt.level, opt.duration, opt.sample_rate,
        static_cast<unsigned long long>(opt.seed));
  }
  soundq::write_wav_float32(opt.out, buffer);
  std::printf("wrote %s\n", opt.out.c_str());
  return 0;
}

int run_analyze(const AnalyzeOptions& opt) {
  const auto raw = soundq::read_wav(opt.wav_path);
  const auto labels = channel_labels(opt.channels, raw.channel_count());
  const auto cal = opt.calibration_path.empty()
                       ? soundq::CalibrationSpec::unit()
                       : soundq::read_calibration_file(opt.calibration_path);
  const auto buffer = soundq::apply_calibration(raw, cal, labels);

  soundq::DeviceSpec device;
  device.name = opt.device_name;
  device.power_rating_w = opt.power_w;
  device.suction_pressure = opt.suction;
  device.motor_speed_rpm = opt.rpm;
  device.weight_kg = opt.weight_kg;

  soundq::AnalysisConfig config = opt.config;
  const auto mode = soundq::parse_fluctuation_mode(opt.fluctuation_mode);
  if (!mode) {
    throw soundq::Error(soundq::Errc::InvalidArgument, "bad fluctuation mode");
  }
  config.fluctuation_mode = *mode;
  config.la_eq_mode =
      opt.laeq_literal ? soundq::LaEqMode::LiteralSum : soundq::LaEqMode::TimeFraction;

  const auto setting = soundq::parse_speed_setting(opt.setting);
  if (!setting) {
    throw soundq::Error(soundq::Errc::InvalidArgument, "setting must be S1 or S2");
  }

  const auto result = soundq::analyze_buffer(
      buffer, device, *setting, config,
      std::filesystem::path(opt.wav_path).filename().string());

  emit(opt.format == "csv" ? soundq::analysis_to_csv(result)
                           : soundq::analysis_to_json(result),
       opt.out);

  if (!opt.spectrum_csv.empty()) {
    for (const auto& channel : result.channels) {
      soundq::write_text_file(opt.spectrum_csv + "_" + channel.label + ".csv",
                              soundq::spectrum_to_csv(channel.spectrum_dba));
    }
  }
  if (opt.plot) {
    std::vector<soundq::SpectrumTrace> traces;
    for (const auto& channel : result.channels) {
      soundq::SpectrumTrace trace;
      trace.label = channel.label;
      for (const auto& band : channel.spectrum_dba.bands) {
        trace.centers_hz.push_back(band.center_hz);
        trace.levels_db.push_back(band.level_db);
      }
      traces.push_back(std::move(trace));
    }
    const std::string path = plot_base(opt.out) + "_spectrum.svg";
    soundq::write_text_file(
        path, soundq::render_spectrum_svg(
                  result.device.name + " " + soundq::la_eq_label(config.alpha) +
                      " spectrum (dBA)",
                  traces));
  }
  return 0;
}

int run_compare(const CompareOptions& opt) {
  std::vector<soundq::AnalysisResult> results;
  results.reserve(opt.report_paths.size());
  for (const auto& path : opt.report_paths) {
    results.push_back(soundq::analysis_from_json(soundq::read_text_file(path)));
  }

  std::vector<soundq::ComparisonEntry> entries;
  std::vector<soundq::DeviceSpec> devices;
  for (const auto& result : results) {
    devices.push_back(result.device);
    for (auto& entry : soundq::comparison_entries(result)) {
      entries.push_back(std::move(entry));
    }
  }
  const auto report = soundq::build_comparison(entries);

  emit(opt.format == "csv" ? soundq::comparison_to_csv(report)
                           : soundq::comparison_to_json(report, devices),
       opt.out);

  if (opt.plot) {
    namespace fs = std::filesystem;
    fs::create_directories(opt.plot_dir);
    const auto bar_file = [&](const std::string& metric) {
      return (fs::path(opt.plot_dir) / ("compare_" + metric + ".svg")).string();
    };
    struct MetricView {
      const char* name;
      const char* unit;
      const soundq::MetricStats& (*pick)(const soundq::ComparisonRow&);
    };
    const MetricView views[] = {
        {"loudness", "sone",
         [](const soundq::ComparisonRow& r) -> const soundq::MetricStats& {
           return r.metrics.loudness_sone;
         }},
        {"sharpness", "acum",
         [](const soundq::ComparisonRow& r) -> const soundq::MetricStats& {
           return r.metrics.sharpness_acum;
         }},
        {"roughness", "asper",
         [](const soundq::ComparisonRow& r) -> const soundq::MetricStats& {
           return r.metrics.roughness_asper;
         }},
        {"fluctuation", "vacil",
         [](const soundq::ComparisonRow& r) -> const soundq::MetricStats& {
           return r.metrics.fluctuation_vacil;
         }},
    };
    for (const auto& view : views) {
      std::vector<soundq::BarEntry> bars;
      for (const auto& row : report.rows) {
        const auto& stats = view.pick(row);
        bars.push_back({row.device.name + " " + soundq::to_string(row.channel) + "/" +
                            soundq::to_string(row.setting),
                        stats.mean, stats.std_pop});
      }
      soundq::write_text_file(
          bar_file(view.name),
          soundq::render_bar_chart_svg(std::string("comparative ") + view.name, view.unit,
                                       bars));
    }
    std::vector<soundq::BarEntry> ai_bars;
    for (const auto& row : report.rows) {
      ai_bars.push_back({row.device.name + " " + soundq::to_string(row.channel) + "/" +
                             soundq::to_string(row.setting),
                         row.annoyance_index, 0.0});
    }
    soundq::write_text_file(bar_file("annoyance_index"),
                            soundq::render_bar_chart_svg("annoyance index", "AI", ai_bars));

    std::vector<soundq::SpectrumTrace> traces;
    for (const auto& result : results) {
      for (const auto& channel : result.channels) {
        soundq::SpectrumTrace trace;
        trace.label = result.device.name + " " + channel.label + "/" +
                      soundq::to_string(result.setting);
        for (const auto& band : channel.spectrum_dba.bands) {
          trace.centers_hz.push_back(band.center_hz);
          trace.levels_db.push_back(band.level_db);
        }
        traces.push_back(std::move(trace));
      }
    }
    soundq::write_text_file(
        (fs::path(opt.plot_dir) / "compare_spectra.svg").string(),
        soundq::render_spectrum_svg("sound pressure level spectra (dBA)", traces));
  }
  return 0;
}

// Reproduces the anchor measurements behind the roughness / fluctuation
// calibration constants; run after touching the modulation pipeline.
int run_calibrate() {
  using namespace soundq;
  const auto asper_ref = am_tone({{1000.0, 60.0, 2.0, 48000.0}, 70.0, 1.0});
  const auto vacil_ref = am_tone({{1000.0, 60.0, 2.0, 48000.0}, 4.0, 1.0});

  RoughnessConfig rough;
  rough.cal = 1.0;
  FluctuationConfig fluct_std = FluctuationConfig::for_mode(FluctuationMode::Standard);
  fluct_std.cal = 1.0;
  FluctuationConfig fluct_lit = FluctuationConfig::for_mode(FluctuationMode::Literal);
  fluct_lit.cal = 1.0;

  const auto asper_pattern = extract_modulation(asper_ref, 0);
  const auto vacil_pattern = extract_modulation(vacil_ref, 0);
  const double r_raw = roughness_asper(asper_pattern, rough);
  const double f_raw_std = fluctuation_vacil(vacil_pattern, fluct_std);
  const double f_raw_lit = fluctuation_vacil(vacil_pattern, fluct_lit);

  std::printf("roughness reference (70 Hz AM): raw=%.6f  cal=%.8f\n", r_raw,
              r_raw > 0 ? 1.0 / r_raw : 0.0);
  std::printf("fluctuation reference (4 Hz AM), standard: raw=%.6f  cal=%.8f\n", f_raw_std,
              f_raw_std > 0 ? 1.0 / f_raw_std : 0.0);
  std::printf("fluctuation reference (4 Hz AM), literal:  raw=%.6f  cal=%.8f\n", f_raw_lit,
              f_raw_lit > 0 ? 1.0 / f_raw_lit : 0.0);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"soundq - psychoacoustic sound quality analysis"};
  app.require_subcommand(1);

  SynthOptions synth_opt;
  std::string synth_kind;
  auto* synth = app.add_subcommand("synth", "generate a reference stimulus WAV");
  synth->require_subcommand(1);
  const auto add_common = [&](CLI::App* cmd, const char* default_out) {
    cmd->add_option("--level", synth_opt.level, "level [dB SPL]")->required();
    cmd->add_option("--dur", synth_opt.duration, "duration [s]")->capture_default_str();
    cmd->add_option("--sr", synth_opt.sample_rate, "sample rate [Hz]")
        ->capture_default_str();
    synth_opt.out = default_out;
    cmd->add_option("-o,--out", synth_opt.out, "output WAV path");
  };
  auto* tone = synth->add_subcommand("tone", "pure tone");
  tone->add_option("--fc", synth_opt.fc, "carrier frequency [Hz]")->required();
  add_common(tone, "tone.wav");
  auto* am = synth->add_subcommand("am", "amplitude-modulated tone");
  am->add_option("--fc", synth_opt.fc, "carrier frequency [Hz]")->required();
  am->add_option("--fmod", synth_opt.fmod, "modulation frequency [Hz]")->required();
  am->add_option("--depth", synth_opt.depth, "modulation depth [0..1]")->required();
  add_common(am, "am.wav");
  auto* narrowband = synth->add_subcommand("narrowband", "band-limited Gaussian noise");
  narrowband->add_option("--fc", synth_opt.fc, "center frequency [Hz]")->required();
  narrowband->add_option("--bw", synth_opt.bandwidth, "bandwidth [Hz]")->required();
  narrowband->add_option("--seed", synth_opt.seed, "random seed")->capture_default_str();
  add_common(narrowband, "narrowband.wav");
  for (auto* cmd : {tone, am, narrowband}) {
    cmd->callback([&, cmd] { synth_kind = cmd->get_name(); });
  }

  AnalyzeOptions analyze_opt;
  auto* analyze = app.add_subcommand("analyze", "analyze a recording");
  analyze->add_option("wav", analyze_opt.wav_path, "input WAV file")->required();
  analyze->add_option("--device", analyze_opt.device_name, "device name");
  analyze->add_option("--power-w", analyze_opt.power_w, "power rating [W]");
  analyze->add_option("--suction", analyze_opt.suction, "suction pressure (free text)");
  analyze->add_option("--rpm", analyze_opt.rpm, "motor speed [rpm]");
  analyze->add_option("--weight-kg", analyze_opt.weight_kg, "device weight [kg]");
  analyze->add_option("--setting", analyze_opt.setting, "speed setting (S1 or S2)")
      ->check(CLI::IsMember({"S1", "S2"}))
      ->capture_default_str();
  analyze->add_option("--channels", analyze_opt.channels,
                      "comma-separated channel labels, e.g. C1,C2,C3");
  analyze->add_option("--calibration", analyze_opt.calibration_path,
                      "calibration file (default: unit sensitivity)")
      ->envname("SOUNDQ_CALIBRATION");
  analyze->add_option("--interval", analyze_opt.config.interval_s, "SPL interval [s]")
      ->capture_default_str();
  analyze->add_option("--alpha", analyze_opt.config.alpha, "LA_eq time fraction")
      ->capture_default_str();
  analyze->add_option("--hop", analyze_opt.config.hop_s, "metric series hop [s]")
      ->capture_default_str();
  analyze
      ->add_option("--fluctuation-mode", analyze_opt.fluctuation_mode,
                   "fluctuation formula mode")
      ->check(CLI::IsMember({"standard", "literal"}))
      ->capture_default_str();
  analyze->add_flag("--laeq-literal", analyze_opt.laeq_literal,
                    "use the unnormalized literal level sum");
  analyze->add_option("--format", analyze_opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  analyze->add_option("-o,--out", analyze_opt.out, "output file (default: stdout)");
  analyze->add_flag("--plot", analyze_opt.plot, "emit an SVG spectrum plot");
  analyze->add_option("--spectrum-csv", analyze_opt.spectrum_csv,
                      "write per-channel spectrum CSVs with this prefix");

  CompareOptions compare_opt;
  auto* compare = app.add_subcommand("compare", "merge analysis reports");
  compare->add_option("reports", compare_opt.report_paths, "analysis JSON files")
      ->required()
      ->expected(-1);
  compare->add_option("--format", compare_opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  compare->add_option("-o,--out", compare_opt.out, "output file (default: stdout)");
  compare->add_flag("--plot", compare_opt.plot, "emit SVG bar charts and spectra");
  compare->add_option("--plot-dir", compare_opt.plot_dir, "directory for plot files")
      ->capture_default_str();

  auto* version = app.add_subcommand("version", "print version");
  auto* calibrate =
      app.add_subcommand("calibrate", "print the metric calibration anchor measurements");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth->parsed()) return run_synth(synth_kind, synth_opt);
    if (analyze->parsed()) return run_analyze(analyze_opt);
    if (compare->parsed()) return run_compare(compare_opt);
    if (calibrate->parsed()) return run_calibrate();
    if (version->parsed()) {
      std::printf("soundq %s\n", kVersion);
      return 0;
    }
  } catch (const soundq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
