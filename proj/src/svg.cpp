// Copyright 2026 The Ambient Corpus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ambient/svg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace ambient {

namespace {

constexpr double kWidth = 900, kPanelHeight = 200, kMarginLeft = 70, kMarginRight = 20, kGap = 30;

const char* colour(Partition p) {
  switch (p) {
    case Partition::R: return "#1f77b4";
    case Partition::NR: return "#d62728";
    case Partition::Combined: return "#2ca02c";
    case Partition::Background: return "#999999";
  }
  return "#000000";
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (hi - lo < 1e-9) lo -= 0.5, hi += 0.5;
  }
};

}  // namespace

void write_series_svg(std::ostream& out, const std::vector<SentimentSeries>& series, const TimeBinning& binning) {
  std::int64_t last_bin = 0;
  for (const auto& s : series)
    if (!s.bins.empty()) last_bin = std::max(last_bin, s.bins.back().bin);
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  auto x_of = [&](std::int64_t bin) {
    return kMarginLeft + (last_bin == 0 ? plot_w / 2 : plot_w * static_cast<double>(bin) / static_cast<double>(last_bin));
  };

  const double height = 3 * kPanelHeight + 4 * kGap;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";

  using Getter = std::function<std::optional<double>(const SeriesPoint&)>;
  const Getter getters[3] = {
      [](const SeriesPoint& p) -> std::optional<double> { return static_cast<double>(p.n_tokens); },
      [](const SeriesPoint& p) -> std::optional<double> {
        return p.summary ? std::optional(p.summary->phi_avg) : std::nullopt;
      },
      [](const SeriesPoint& p) -> std::optional<double> {
        return p.summary ? std::optional(p.summary->sigma) : std::nullopt;
      }};
  const char* titles[3] = {"scored tokens", "ambient sentiment", "sigma"};

  for (int panel = 0; panel < 3; ++panel) {
    const double top = kGap + panel * (kPanelHeight + kGap);
    Range range;
    for (const auto& s : series)
      for (const auto& p : s.bins) {
        auto v = getters[panel](p);
        if (!v) continue;
        range.add(*v);
        if (panel == 1) {
          range.add(*v - p.summary->std_error);
          range.add(*v + p.summary->std_error);
        }
      }
    range.finish();
    auto y_of = [&](double v) { return top + kPanelHeight * (1.0 - (v - range.lo) / (range.hi - range.lo)); };

    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
        << kPanelHeight << "\" fill=\"none\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << kMarginLeft << "\" y=\"" << top - 6 << "\">" << titles[panel] << "</text>\n";
    out << "<text x=\"4\" y=\"" << top + 10 << "\">" << range.hi << "</text>\n";
    out << "<text x=\"4\" y=\"" << top + kPanelHeight << "\">" << range.lo << "</text>\n";

    for (const auto& s : series) {
      std::string path;
      bool pen_down = false;
      for (const auto& p : s.bins) {
        auto v = getters[panel](p);
        if (!v || (panel == 0 && !p.summary)) {
          pen_down = false;
          continue;
        }
        path += (pen_down ? " L" : " M") + std::to_string(x_of(p.bin)) + ' ' + std::to_string(y_of(*v));
        pen_down = true;
        if (panel == 1 && p.summary->std_error > 0)
          out << "<line x1=\"" << x_of(p.bin) << "\" x2=\"" << x_of(p.bin) << "\" y1=\""
              << y_of(*v - p.summary->std_error) << "\" y2=\"" << y_of(*v + p.summary->std_error)
              << "\" stroke=\"" << colour(s.partition) << "\" stroke-width=\"1\"/>\n";
      }
      if (!path.empty())
        out << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << colour(s.partition)
            << "\" stroke-width=\"1.5\"/>\n";
    }
  }

  const double axis_y = kGap + 3 * (kPanelHeight + kGap) - kGap / 2;
  out << "<text x=\"" << kMarginLeft << "\" y=\"" << axis_y << "\">" << format_iso8601(binning.bin_start(0)).substr(0, 10)
      << "</text>\n";
  out << "<text x=\"" << kWidth - kMarginRight - 70 << "\" y=\"" << axis_y << "\">"
      << format_iso8601(binning.bin_start(last_bin)).substr(0, 10) << "</text>\n";
  double legend_x = kMarginLeft + 150;
  for (const auto& s : series) {
    out << "<text x=\"" << legend_x << "\" y=\"" << axis_y << "\" fill=\"" << colour(s.partition) << "\">"
        << to_string(s.partition) << "</text>\n";
    legend_x += 90;
  }
  out << "</svg>\n";
}

void write_shift_svg(std::ostream& out, const ShiftReport& report, std::size_t k) {
  const auto top = rank_shifts(report, k);
  const double total_abs = report.total_abs_delta();
  double max_pct = 0;
  for (const auto& c : top) max_pct = std::max(max_pct, total_abs > 0 ? std::abs(100 * c.delta / total_abs) : 0.0);
  if (max_pct == 0) max_pct = 1;

  const double bar_h = 18, header = 40;
  const double height = header + bar_h * static_cast<double>(top.size()) + 20;
  const double mid = kWidth / 2, half = kWidth / 2 - 120;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<text x=\"10\" y=\"20\">phi_ref = " << report.phi_ref << ", phi_comp = " << report.phi_comp
      << " (per-word contribution, % of sum |delta|)</text>\n";
  out << "<line x1=\"" << mid << "\" x2=\"" << mid << "\" y1=\"" << header - 5 << "\" y2=\"" << height - 10
      << "\" stroke=\"#333\"/>\n";
  for (std::size_t i = 0; i < top.size(); ++i) {
    const auto& c = top[i];
    const double pct = total_abs > 0 ? 100 * c.delta / total_abs : 0.0;
    const double len = half * std::abs(pct) / max_pct;
    const double y = header + bar_h * static_cast<double>(i);
    const double x = pct >= 0 ? mid : mid - len;
    const char* fill = c.polarity == Polarity::AboveRefMean ? "#f2c12e" : "#4a90d9";
    out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << len << "\" height=\"" << bar_h - 3
        << "\" fill=\"" << fill << "\"/>\n";
    const double label_x = pct >= 0 ? mid - 6 : mid + 6;
    out << "<text x=\"" << label_x << "\" y=\"" << y + bar_h - 6 << "\" text-anchor=\""
        << (pct >= 0 ? "end" : "start") << "\">" << escape(c.word) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace ambient
