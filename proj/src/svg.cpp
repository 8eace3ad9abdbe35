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

#include "soundq/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "soundq/error.hpp"

namespace soundq {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 64.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c; break;
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  double clamp_span() const { return hi > lo ? hi - lo : 1.0; }
};

Range padded(double lo, double hi) {
  if (!(hi > lo)) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = (hi - lo) * 0.08;
  return {lo - pad, hi + pad};
}

double nice_step(double span, int target_ticks) {
  const double raw = span / std::max(1, target_ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= mult * mag) return mult * mag;
  }
  return 10.0 * mag;
}

void open_svg(std::ostringstream& out, const std::string& title) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
}

void y_axis(std::ostringstream& out, const Range& range, const std::string& unit) {
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const double step = nice_step(range.clamp_span(), 6);
  const double first = std::ceil(range.lo / step) * step;
  for (double v = first; v <= range.hi + 1e-9; v += step) {
    const double y = kHeight - kMarginBottom - (v - range.lo) / range.clamp_span() * plot_h;
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << fmt(y) << "\" x2=\""
        << kWidth - kMarginRight << "\" y2=\"" << fmt(y)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << fmt(y + 3)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(v)
        << "</text>\n";
  }
  out << "<text x=\"14\" y=\"" << kMarginTop - 8
      << "\" font-family=\"sans-serif\" font-size=\"10\">" << xml_escape(unit)
      << "</text>\n";
}

}  // namespace

std::string render_spectrum_svg(const std::string& title,
                                const std::vector<SpectrumTrace>& traces) {
  if (traces.empty()) {
    throw Error(Errc::EmptyInput, "no spectrum traces");
  }
  double f_lo = 0.0, f_hi = 0.0, v_lo = 0.0, v_hi = 0.0;
  bool any = false;
  for (const auto& trace : traces) {
    for (std::size_t i = 0; i < trace.centers_hz.size(); ++i) {
      if (!trace.levels_db[i]) continue;
      const double x = std::log2(trace.centers_hz[i]);
      const double v = *trace.levels_db[i];
      if (!any) {
        f_lo = f_hi = x;
        v_lo = v_hi = v;
        any = true;
      } else {
        f_lo = std::min(f_lo, x);
        f_hi = std::max(f_hi, x);
        v_lo = std::min(v_lo, v);
        v_hi = std::max(v_hi, v);
      }
    }
  }
  if (!any) {
    // All bands below floor; render an empty frame rather than failing.
    f_lo = std::log2(25.0);
    f_hi = std::log2(10000.0);
    v_lo = 0.0;
    v_hi = 10.0;
  }
  const Range x_range = padded(f_lo, f_hi);
  const Range y_range = padded(v_lo, v_hi);
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto x_of = [&](double log2f) {
    return kMarginLeft + (log2f - x_range.lo) / x_range.clamp_span() * plot_w;
  };
  const auto y_of = [&](double v) {
    return kHeight - kMarginBottom - (v - y_range.lo) / y_range.clamp_span() * plot_h;
  };

  std::ostringstream out;
  open_svg(out, title);
  y_axis(out, y_range, "dB");

  // Octave-spaced frequency ticks.
  for (double f = 31.25; f <= 16000.0; f *= 2.0) {
    const double lx = std::log2(f);
    if (lx < x_range.lo || lx > x_range.hi) continue;
    const double x = x_of(lx);
    out << "<line x1=\"" << fmt(x) << "\" y1=\"" << kMarginTop << "\" x2=\"" << fmt(x)
        << "\" y2=\"" << kHeight - kMarginBottom
        << "\" stroke=\"#eeeeee\" stroke-width=\"1\"/>\n";
    const std::string label = f >= 1000.0 ? fmt(f / 1000.0) + "k" : fmt(f);
    out << "<text x=\"" << fmt(x) << "\" y=\"" << kHeight - kMarginBottom + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << label
        << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
      << "frequency (Hz, log2)</text>\n";

  for (std::size_t t = 0; t < traces.size(); ++t) {
    const auto& trace = traces[t];
    const char* color = kPalette[t % std::size(kPalette)];
    std::ostringstream points;
    for (std::size_t i = 0; i < trace.centers_hz.size(); ++i) {
      if (!trace.levels_db[i]) continue;
      points << fmt(x_of(std::log2(trace.centers_hz[i]))) << ','
             << fmt(y_of(*trace.levels_db[i])) << ' ';
    }
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"" << points.str() << "\"/>\n";
    out << "<text x=\"" << kWidth - kMarginRight - 8 << "\" y=\""
        << kMarginTop + 14.0 * static_cast<double>(t)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\" fill=\""
        << color << "\">" << xml_escape(trace.label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_bar_chart_svg(const std::string& title, const std::string& unit,
                                 const std::vector<BarEntry>& bars) {
  if (bars.empty()) {
    throw Error(Errc::EmptyInput, "no bars");
  }
  double v_hi = 0.0;
  for (const auto& bar : bars) v_hi = std::max(v_hi, bar.value + bar.whisker);
  const Range y_range = padded(0.0, v_hi > 0.0 ? v_hi : 1.0);
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto y_of = [&](double v) {
    return kHeight - kMarginBottom - (v - y_range.lo) / y_range.clamp_span() * plot_h;
  };

  std::ostringstream out;
  open_svg(out, title);
  y_axis(out, y_range, unit);

  const double slot = plot_w / static_cast<double>(bars.size());
  const double bar_w = slot * 0.62;
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const auto& bar = bars[i];
    const double x0 = kMarginLeft + slot * (static_cast<double>(i) + 0.5) - bar_w / 2.0;
    const double y_top = y_of(bar.value);
    const double y_base = y_of(std::max(0.0, y_range.lo));
    const char* color = kPalette[i % std::size(kPalette)];
    out << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y_top) << "\" width=\"" << fmt(bar_w)
        << "\" height=\"" << fmt(std::max(0.0, y_base - y_top)) << "\" fill=\"" << color
        << "\" fill-opacity=\"0.85\"/>\n";
    if (bar.whisker > 0.0) {
      const double xc = x0 + bar_w / 2.0;
      const double y_hi = y_of(bar.value + bar.whisker);
      const double y_lo = y_of(std::max(0.0, bar.value - bar.whisker));
      out << "<line x1=\"" << fmt(xc) << "\" y1=\"" << fmt(y_hi) << "\" x2=\"" << fmt(xc)
          << "\" y2=\"" << fmt(y_lo) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
      for (double y : {y_hi, y_lo}) {
        out << "<line x1=\"" << fmt(xc - 4) << "\" y1=\"" << fmt(y) << "\" x2=\""
            << fmt(xc + 4) << "\" y2=\"" << fmt(y)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
      }
    }
    const double xc = x0 + bar_w / 2.0;
    out << "<text x=\"" << fmt(xc) << "\" y=\"" << kHeight - kMarginBottom + 14
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"9\" "
        << "transform=\"rotate(-35 " << fmt(xc) << " " << kHeight - kMarginBottom + 14
        << ")\">" << xml_escape(bar.label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace soundq
