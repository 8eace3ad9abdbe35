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

#include <string>
#include <vector>

#include "soundq/analysis.hpp"
#include "soundq/annoyance.hpp"

namespace soundq {

/// Serialized documents use stable key order and numbers rounded to four
/// decimals, so identical inputs yield byte-identical files.

std::string analysis_to_json(const AnalysisResult& result);
std::string analysis_to_csv(const AnalysisResult& result);

/// Parses a document produced by analysis_to_json.
/// Throws Error{BadDocument} on schema violations.
AnalysisResult analysis_from_json(const std::string& text);

/// Comparison entries from an analysis document: one per channel labeled
/// C1/C2/C3 (other channels do not participate in comparative reports).
std::vector<ComparisonEntry> comparison_entries(const AnalysisResult& result);

std::string comparison_to_json(const ComparisonReport& report,
                               const std::vector<DeviceSpec>& devices);
std::string comparison_to_csv(const ComparisonReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace soundq
