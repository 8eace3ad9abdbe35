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

/// Minimal deterministic SVG emission for the report plots. No rendering
/// dependency; output is plain well-formed XML.

struct SpectrumTrace {
  std::string label;
  std::vector<double> centers_hz;
  std::vector<std::optional<double>> levels_db;
};

/// Band levels against a log2 frequency axis, one polyline per trace.
std::string render_spectrum_svg(const std::string& title,
                                const std::vector<SpectrumTrace>& traces);

struct BarEntry {
  std::string label;
  double value = 0.0;
  double whisker = 0.0;  // drawn as value +- whisker
};

/// Grouped bars with standard-deviation whiskers.
std::string render_bar_chart_svg(const std::string& title, const std::string& unit,
                                 const std::vector<BarEntry>& bars);

}  // namespace soundq
