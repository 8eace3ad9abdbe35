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

namespace soundq {

/// Reference sound pressure for dB SPL, 20 micropascal.
inline constexpr double kReferencePressurePa = 20e-6;

/// Microphone position labels: C1 = centre mic, C2 = right ear, C3 = left ear.
enum class ChannelLabel { C1, C2, C3 };

/// Motor speed settings: S1 = minimum, S2 = maximum.
enum class SpeedSetting { S1, S2 };

const char* to_string(ChannelLabel label);
const char* to_string(SpeedSetting setting);
std::optional<ChannelLabel> parse_channel_label(const std::string& text);
std::optional<SpeedSetting> parse_speed_setting(const std::string& text);

/// Appliance metadata attached to reports.
struct DeviceSpec {
  std::string name;
  std::optional<double> power_rating_w;
  std::string suction_pressure;  // unit-bearing free text, empty when unknown
  std::optional<double> motor_speed_rpm;
  std::optional<double> weight_kg;
};

struct RecordingMeta {
  ChannelLabel channel = ChannelLabel::C1;
  SpeedSetting setting = SpeedSetting::S1;
  DeviceSpec device;
};

/// Decoded digital audio, normalized to full scale 1.0.
struct RawAudio {
  std::vector<std::vector<double>> channels;
  double sample_rate_hz = 0.0;

  std::size_t channel_count() const { return channels.size(); }
  std::size_t frame_count() const {
    return channels.empty() ? 0 : channels.front().size();
  }
  double duration_s() const {
    return sample_rate_hz > 0 ? static_cast<double>(frame_count()) / sample_rate_hz
                              : 0.0;
  }
};

/// Calibrated audio in pascal. Channel labels are free-form strings; the
/// C1/C2/C3 report semantics come from RecordingMeta, not from here.
struct AudioBuffer {
  std::vector<std::vector<double>> channels;
  double sample_rate_hz = 0.0;
  std::vector<std::string> labels;  // empty or one per channel

  std::size_t channel_count() const { return channels.size(); }
  std::size_t frame_count() const {
    return channels.empty() ? 0 : channels.front().size();
  }
  double duration_s() const {
    return sample_rate_hz > 0 ? static_cast<double>(frame_count()) / sample_rate_hz
                              : 0.0;
  }
};

/// Validates the structural invariants (rate > 0, equal channel lengths,
/// finite samples). Throws Error{InvalidArgument} on violation.
void validate(const RawAudio& raw);
void validate(const AudioBuffer& buffer);

}  // namespace soundq
