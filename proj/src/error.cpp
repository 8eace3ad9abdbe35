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

#include "soundq/error.hpp"

namespace soundq {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::MalformedHeader: return "malformed header";
    case Errc::UnsupportedCodec: return "unsupported codec";
    case Errc::TruncatedData: return "truncated data";
    case Errc::ChannelMismatch: return "channel mismatch";
    case Errc::BadCalibration: return "bad calibration";
    case Errc::InvalidArgument: return "invalid argument";
    case Errc::BufferTooShort: return "buffer too short";
    case Errc::MissingBandCoverage: return "missing band coverage";
    case Errc::ZeroLoudness: return "zero loudness";
    case Errc::DuplicateKey: return "duplicate key";
    case Errc::EmptyInput: return "empty input";
    case Errc::IoError: return "io error";
    case Errc::BadDocument: return "bad document";
  }
  return "unknown error";
}

}  // namespace soundq
