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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "soundq/audio.hpp"

namespace soundq {

/// A calibrator tone of known level recorded at the start of a session.
/// Sensitivity is solved so the tone segment's RMS maps to db_spl.
struct ReferenceTone {
  double frequency_hz = 1000.0;
  double db_spl = 94.0;
  double start_s = 0.0;
  double end_s = 0.0;  // 0 means "to end of recording"
};

struct ChannelCalibration {
  std::optional<double> sensitivity_pa_per_fs;
  std::optional<ReferenceTone> reference_tone;
};

/// Per-session calibration, one entry per channel label. The label "*"
/// applies to any channel without its own entry.
struct CalibrationSpec {
  std::map<std::string, ChannelCalibration> by_label;

  /// Unit sensitivity (1 Pa per full scale) for every channel.
  static CalibrationSpec unit();
};

/// Parses the calibration text format, one channel per line:
///   channel=<label> sensitivity_pa_per_fs=<float>
///   channel=<label> ref_freq_hz=<float> ref_db_spl=<float> ref_start_s=<float> ref_end_s=<float>
/// '#' starts a comment. Throws Error{BadCalibration} on malformed input.
CalibrationSpec parse_calibration(const std::string& text);
CalibrationSpec read_calibration_file(const std::string& path);

/// Maps digital amplitude to sound pressure: pressure = sample * sensitivity.
/// `labels` names the channels of `raw` in order and selects the calibration
/// entries. Throws Error{ChannelMismatch} when a channel lacks an entry and
/// Error{BadCalibration} when a derived sensitivity is not positive.
AudioBuffer apply_calibration(const RawAudio& raw, const CalibrationSpec& cal,
                              const std::vector<std::string>& labels);

/// Sound pressure level of one channel, 20*log10(rms / 20 uPa).
/// Returns nullopt ("below floor") for an all-zero signal.
std::optional<double> rms_spl(const AudioBuffer& buffer, std::size_t channel);

/// RMS of a sample range, used by both calibration and the synth tests.
double rms(std::span<const double> samples);

}  // namespace soundq
