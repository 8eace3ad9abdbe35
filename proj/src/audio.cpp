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

#include "soundq/audio.hpp"

#include <cmath>

#include "soundq/error.hpp"

namespace soundq {

const char* to_string(ChannelLabel label) {
  switch (label) {
    case ChannelLabel::C1: return "C1";
    case ChannelLabel::C2: return "C2";
    case ChannelLabel::C3: return "C3";
  }
  return "?";
}

const char* to_string(SpeedSetting setting) {
  switch (setting) {
    case SpeedSetting::S1: return "S1";
    case SpeedSetting::S2: return "S2";
  }
  return "?";
}

std::optional<ChannelLabel> parse_channel_label(const std::string& text) {
  if (text == "C1") return ChannelLabel::C1;
  if (text == "C2") return ChannelLabel::C2;
  if (text == "C3") return ChannelLabel::C3;
  return std::nullopt;
}

std::optional<SpeedSetting> parse_speed_setting(const std::string& text) {
  if (text == "S1") return SpeedSetting::S1;
  if (text == "S2") return SpeedSetting::S2;
  return std::nullopt;
}

namespace {

void validate_channels(const std::vector<std::vector<double>>& channels,
                       double sample_rate_hz) {
  if (!(sample_rate_hz > 0.0)) {
    throw Error(Errc::InvalidArgument, "sample rate must be positive");
  }
  if (channels.empty()) {
    throw Error(Errc::InvalidArgument, "at least one channel required");
  }
  const std::size_t frames = channels.front().size();
  for (const auto& ch : channels) {
    if (ch.size() != frames) {
      throw Error(Errc::InvalidArgument, "channels must have equal length");
    }
    for (double v : ch) {
      if (!std::isfinite(v)) {
        throw Error(Errc::InvalidArgument, "samples must be finite");
      }
    }
  }
}

}  // namespace

void validate(const RawAudio& raw) { validate_channels(raw.channels, raw.sample_rate_hz); }

void validate(const AudioBuffer& buffer) {
  validate_channels(buffer.channels, buffer.sample_rate_hz);
  if (!buffer.labels.empty() && buffer.labels.size() != buffer.channels.size()) {
    throw Error(Errc::InvalidArgument, "labels must be empty or one per channel");
  }
}

}  // namespace soundq
