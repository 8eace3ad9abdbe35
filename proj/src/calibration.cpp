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

#include "soundq/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "soundq/error.hpp"

namespace soundq {

double rms(std::span<const double> samples) {
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (double v : samples) acc += v * v;
  return std::sqrt(acc / static_cast<double>(samples.size()));
}

CalibrationSpec CalibrationSpec::unit() {
  CalibrationSpec spec;
  spec.by_label["*"] = ChannelCalibration{1.0, std::nullopt};
  return spec;
}

namespace {

double parse_number(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw Error(Errc::BadCalibration, "bad numeric value for " + key);
  }
  if (pos != value.size()) {
    throw Error(Errc::BadCalibration, "bad numeric value for " + key);
  }
  return parsed;
}

}  // namespace

CalibrationSpec parse_calibration(const std::string& text) {
  CalibrationSpec spec;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string field;
    std::string label;
    ChannelCalibration cal;
    ReferenceTone tone;
    bool has_tone_field = false;
    while (fields >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) {
        throw Error(Errc::BadCalibration,
                    "expected key=value on line " + std::to_string(line_no));
      }
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (key == "channel") {
        label = value;
      } else if (key == "sensitivity_pa_per_fs") {
        cal.sensitivity_pa_per_fs = parse_number(key, value);
      } else if (key == "ref_freq_hz") {
        tone.frequency_hz = parse_number(key, value);
        has_tone_field = true;
      } else if (key == "ref_db_spl") {
        tone.db_spl = parse_number(key, value);
        has_tone_field = true;
      } else if (key == "ref_start_s") {
        tone.start_s = parse_number(key, value);
        has_tone_field = true;
      } else if (key == "ref_end_s") {
        tone.end_s = parse_number(key, value);
        has_tone_field = true;
      } else {
        throw Error(Errc::BadCalibration, "unknown key '" + key + "'");
      }
    }
    if (label.empty()) {
      if (cal.sensitivity_pa_per_fs || has_tone_field) {
        throw Error(Errc::BadCalibration,
                    "missing channel= on line " + std::to_string(line_no));
      }
      continue;  // blank or comment-only line
    }
    if (has_tone_field) cal.reference_tone = tone;
    if (!cal.sensitivity_pa_per_fs && !cal.reference_tone) {
      throw Error(Errc::BadCalibration,
                  "channel " + label + " has neither sensitivity nor reference tone");
    }
    if (cal.sensitivity_pa_per_fs && *cal.sensitivity_pa_per_fs <= 0.0) {
      throw Error(Errc::BadCalibration, "sensitivity must be positive");
    }
    if (!spec.by_label.emplace(label, cal).second) {
      throw Error(Errc::BadCalibration, "duplicate entry for channel " + label);
    }
  }
  return spec;
}

CalibrationSpec read_calibration_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_calibration(buf.str());
}

namespace {

double resolve_sensitivity(const ChannelCalibration& cal,
                           const std::vector<double>& samples, double sample_rate_hz,
                           const std::string& label) {
  if (cal.sensitivity_pa_per_fs) return *cal.sensitivity_pa_per_fs;

  const ReferenceTone& tone = *cal.reference_tone;
  const auto n = samples.size();
  auto clamp_index = [&](double seconds) {
    const double idx = seconds * sample_rate_hz;
    return static_cast<std::size_t>(std::clamp(idx, 0.0, static_cast<double>(n)));
  };
  const std::size_t begin = clamp_index(tone.start_s);
  const std::size_t end = tone.end_s > 0.0 ? clamp_index(tone.end_s) : n;
  if (end <= begin) {
    throw Error(Errc::BadCalibration,
                "empty reference tone segment for channel " + label);
  }
  const double digital_rms = rms(std::span(samples).subspan(begin, end - begin));
  const double target_pa = kReferencePressurePa * std::pow(10.0, tone.db_spl / 20.0);
  const double sensitivity = target_pa / digital_rms;
  if (!std::isfinite(sensitivity) || sensitivity <= 0.0) {
    throw Error(Errc::BadCalibration,
                "derived sensitivity is not positive for channel " + label);
  }
  return sensitivity;
}

}  // namespace

AudioBuffer apply_calibration(const RawAudio& raw, const CalibrationSpec& cal,
                              const std::vector<std::string>& labels) {
  validate(raw);
  if (labels.size() != raw.channels.size()) {
    throw Error(Errc::ChannelMismatch,
                "have " + std::to_string(raw.channels.size()) + " channels but " +
                    std::to_string(labels.size()) + " labels");
  }

  AudioBuffer buffer;
  buffer.sample_rate_hz = raw.sample_rate_hz;
  buffer.labels = labels;
  buffer.channels.reserve(raw.channels.size());
  for (std::size_t c = 0; c < raw.channels.size(); ++c) {
    auto it = cal.by_label.find(labels[c]);
    if (it == cal.by_label.end()) it = cal.by_label.find("*");
    if (it == cal.by_label.end()) {
      throw Error(Errc::ChannelMismatch, "no calibration entry for channel " + labels[c]);
    }
    const double sensitivity =
        resolve_sensitivity(it->second, raw.channels[c], raw.sample_rate_hz, labels[c]);
    std::vector<double> pressure(raw.channels[c].size());
    for (std::size_t i = 0; i < pressure.size(); ++i) {
      pressure[i] = raw.channels[c][i] * sensitivity;
    }
    buffer.channels.push_back(std::move(pressure));
  }
  return buffer;
}

std::optional<double> rms_spl(const AudioBuffer& buffer, std::size_t channel) {
  if (channel >= buffer.channels.size()) {
    throw Error(Errc::InvalidArgument, "channel index out of range");
  }
  if (buffer.channels[channel].empty()) {
    throw Error(Errc::InvalidArgument, "channel has no samples");
  }
  const double pressure_rms = rms(buffer.channels[channel]);
  if (pressure_rms <= 0.0) return std::nullopt;  // below floor
  return 20.0 * std::log10(pressure_rms / kReferencePressurePa);
}

}  // namespace soundq
