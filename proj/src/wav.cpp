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

#include "soundq/wav.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "soundq/error.hpp"

namespace soundq {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatIeeeFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;
constexpr std::size_t kMaxChannels = 12;

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint16_t>(b[off] | (b[off + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint32_t>(b[off]) | (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) |
         (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t off, const char* tag) {
  return std::memcmp(b.data() + off, tag, 4) == 0;
}

struct FmtInfo {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

double decode_sample(const std::uint8_t* p, std::uint16_t format, std::uint16_t bits) {
  if (format == kFormatIeeeFloat) {
    std::uint32_t u = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                      (static_cast<std::uint32_t>(p[2]) << 16) |
                      (static_cast<std::uint32_t>(p[3]) << 24);
    return static_cast<double>(std::bit_cast<float>(u));
  }
  switch (bits) {
    case 16: {
      auto v = static_cast<std::int16_t>(p[0] | (p[1] << 8));
      return static_cast<double>(v) / 32768.0;
    }
    case 24: {
      const std::uint32_t u = (static_cast<std::uint32_t>(p[0]) << 8) |
                              (static_cast<std::uint32_t>(p[1]) << 16) |
                              (static_cast<std::uint32_t>(p[2]) << 24);
      return static_cast<double>(static_cast<std::int32_t>(u) >> 8) / 8388608.0;
    }
    default: {  // 32
      std::int32_t v = static_cast<std::int32_t>(read_u32({p, 4}, 0));
      return static_cast<double>(v) / 2147483648.0;
    }
  }
}

}  // namespace

RawAudio decode_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE")) {
    throw Error(Errc::MalformedHeader, "not a RIFF/WAVE stream");
  }

  FmtInfo fmt;
  bool have_fmt = false;
  std::span<const std::uint8_t> data;
  bool have_data = false;

  std::size_t off = 12;
  while (off + 8 <= bytes.size()) {
    const std::uint32_t chunk_size = read_u32(bytes, off + 4);
    const std::size_t body = off + 8;

    if (tag_is(bytes, off, "fmt ")) {
      if (chunk_size < 16 || body + chunk_size > bytes.size()) {
        throw Error(Errc::MalformedHeader, "fmt chunk too small or out of bounds");
      }
      fmt.format = read_u16(bytes, body);
      fmt.channels = read_u16(bytes, body + 2);
      fmt.sample_rate = read_u32(bytes, body + 4);
      fmt.block_align = read_u16(bytes, body + 12);
      fmt.bits = read_u16(bytes, body + 14);
      if (fmt.format == kFormatExtensible) {
        // Actual format lives in the first two bytes of the subformat GUID.
        if (chunk_size < 40) {
          throw Error(Errc::MalformedHeader, "extensible fmt chunk too small");
        }
        fmt.format = read_u16(bytes, body + 24);
      }
      have_fmt = true;
    } else if (tag_is(bytes, off, "data")) {
      if (!have_fmt) {
        throw Error(Errc::MalformedHeader, "data chunk before fmt chunk");
      }
      if (body + chunk_size > bytes.size()) {
        throw Error(Errc::TruncatedData, "data chunk exceeds stream size");
      }
      data = bytes.subspan(body, chunk_size);
      have_data = true;
      break;
    }
    // Chunks are word-aligned; odd sizes carry a pad byte.
    off = body + chunk_size + (chunk_size & 1);
  }

  if (!have_fmt) throw Error(Errc::MalformedHeader, "missing fmt chunk");
  if (!have_data) {
    throw Error(Errc::TruncatedData, "missing or incomplete data chunk");
  }
  if (fmt.channels == 0 || fmt.channels > kMaxChannels) {
    throw Error(Errc::MalformedHeader, "channel count out of range");
  }
  if (fmt.sample_rate == 0) {
    throw Error(Errc::MalformedHeader, "sample rate must be positive");
  }

  if (fmt.format == kFormatIeeeFloat) {
    if (fmt.bits != 32) {
      throw Error(Errc::UnsupportedCodec, "only 32-bit float WAV is supported");
    }
  } else if (fmt.format == kFormatPcm) {
    if (fmt.bits != 16 && fmt.bits != 24 && fmt.bits != 32) {
      throw Error(Errc::UnsupportedCodec, "only 16/24/32-bit PCM is supported");
    }
  } else {
    throw Error(Errc::UnsupportedCodec,
                "compressed or unknown WAV format tag " + std::to_string(fmt.format));
  }

  const std::size_t bytes_per_sample = fmt.bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * fmt.channels;
  if (fmt.block_align != 0 && fmt.block_align != frame_bytes) {
    throw Error(Errc::MalformedHeader, "block alignment disagrees with format");
  }
  if (data.size() % frame_bytes != 0) {
    throw Error(Errc::TruncatedData, "data chunk holds a partial frame");
  }

  const std::size_t frames = data.size() / frame_bytes;
  RawAudio raw;
  raw.sample_rate_hz = static_cast<double>(fmt.sample_rate);
  raw.channels.assign(fmt.channels, std::vector<double>(frames));
  for (std::size_t f = 0; f < frames; ++f) {
    const std::uint8_t* frame = data.data() + f * frame_bytes;
    for (std::size_t c = 0; c < fmt.channels; ++c) {
      const double v = decode_sample(frame + c * bytes_per_sample, fmt.format, fmt.bits);
      if (!std::isfinite(v)) {
        throw Error(Errc::InvalidArgument, "non-finite sample in float data");
      }
      raw.channels[c][f] = v;
    }
  }
  return raw;
}

RawAudio read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_wav(bytes);
}

std::vector<std::uint8_t> encode_wav_float32(
    const std::vector<std::vector<double>>& channels, double sample_rate_hz) {
  if (channels.empty() || !(sample_rate_hz > 0.0)) {
    throw Error(Errc::InvalidArgument, "need at least one channel and a positive rate");
  }
  const std::size_t frames = channels.front().size();
  for (const auto& ch : channels) {
    if (ch.size() != frames) {
      throw Error(Errc::InvalidArgument, "channels must have equal length");
    }
  }

  const auto n_channels = static_cast<std::uint16_t>(channels.size());
  const auto rate = static_cast<std::uint32_t>(sample_rate_hz + 0.5);
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(frames * n_channels * 4);

  std::vector<std::uint8_t> out;
  out.reserve(58 + data_bytes);
  auto push_tag = [&](const char* tag) { out.insert(out.end(), tag, tag + 4); };
  auto push_u16 = [&](std::uint16_t v) {
    out.push_back(v & 0xFF);
    out.push_back((v >> 8) & 0xFF);
  };
  auto push_u32 = [&](std::uint32_t v) {
    out.push_back(v & 0xFF);
    out.push_back((v >> 8) & 0xFF);
    out.push_back((v >> 16) & 0xFF);
    out.push_back((v >> 24) & 0xFF);
  };

  push_tag("RIFF");
  push_u32(4 + (8 + 18) + (8 + 4) + (8 + data_bytes));
  push_tag("WAVE");

  push_tag("fmt ");
  push_u32(18);
  push_u16(kFormatIeeeFloat);
  push_u16(n_channels);
  push_u32(rate);
  push_u32(rate * n_channels * 4);
  push_u16(static_cast<std::uint16_t>(n_channels * 4));
  push_u16(32);
  push_u16(0);  // extension size

  push_tag("fact");
  push_u32(4);
  push_u32(static_cast<std::uint32_t>(frames));

  push_tag("data");
  push_u32(data_bytes);
  for (std::size_t f = 0; f < frames; ++f) {
    for (std::size_t c = 0; c < n_channels; ++c) {
      const auto u = std::bit_cast<std::uint32_t>(static_cast<float>(channels[c][f]));
      push_u32(u);
    }
  }
  return out;
}

void write_wav_float32(const std::string& path, const AudioBuffer& buffer) {
  const auto bytes = encode_wav_float32(buffer.channels, buffer.sample_rate_hz);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::IoError, "short write to " + path);
}

}  // namespace soundq
