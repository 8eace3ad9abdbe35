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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "soundq/audio.hpp"

namespace soundq {

/// Decodes a RIFF/WAVE byte stream. Accepts PCM 16/24/32-bit and IEEE
/// float32, 1-12 channels. Integer samples are normalized by 2^(bits-1);
/// float samples pass through unchanged.
///
/// Throws Error with code MalformedHeader, UnsupportedCodec or TruncatedData.
RawAudio decode_wav(std::span<const std::uint8_t> bytes);

/// Convenience file wrapper around decode_wav. Throws Error{IoError} when
/// the file cannot be read.
RawAudio read_wav(const std::string& path);

/// Encodes channels as little-endian IEEE float32 WAV. Values are written
/// verbatim; calibrated pressure buffers round-trip through unit sensitivity.
std::vector<std::uint8_t> encode_wav_float32(
    const std::vector<std::vector<double>>& channels, double sample_rate_hz);

void write_wav_float32(const std::string& path, const AudioBuffer& buffer);

}  // namespace soundq
