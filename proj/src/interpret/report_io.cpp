//
// Copyright 2026 The TTShield Authors
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
//
#include "interpret/report_io.hpp"

#include <cstdio>

#include "cohorts/csv.hpp"

namespace ttshield::interpret {
namespace {

using cohorts::FormatDouble;

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string SensitivityToCsv(const SensitivityReport& report) {
  std::string out = "feature,raw_score,normalized_score,context\n";
  for (const auto& e : report.entries)
    out += e.feature + ',' + FormatDouble(e.raw) + ',' + FormatDouble(e.normalized) + ',' +
           report.context + '\n';
  return out;
}

std::string CurveToCsv(const MonotonicityCurve& curve) {
  std::string out = "bin_low,bin_high,mean,ci_low,ci_high\n";
  for (const auto& b : curve.bins)
    out += FormatDouble(b.low) + ',' + FormatDouble(b.high) + ',' +
           FormatDouble(b.mean_response) + ',' + FormatDouble(b.ci_low) + ',' +
           FormatDouble(b.ci_high) + '\n';
  return out;
}

std::string CurveToSvg(const MonotonicityCurve& curve, const std::string& title) {
  constexpr double kW = 480, kH = 360, kM = 48;
  auto px = [&](double s) { return kM + s * (kW - 2 * kM); };
  auto py = [&](double r) { return kH - kM - r * (kH - 2 * kM); };
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"360\" "
                    "viewBox=\"0 0 480 360\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect width=\"480\" height=\"360\" fill=\"white\"/>\n";
  // Response regions: unlikely below 10%, likely above 50%.
  svg += "<rect x=\"" + Fixed(px(0)) + "\" y=\"" + Fixed(py(0.1)) + "\" width=\"" +
         Fixed(px(1) - px(0)) + "\" height=\"" + Fixed(py(0) - py(0.1)) +
         "\" fill=\"#dddddd\"/>\n";
  svg += "<rect x=\"" + Fixed(px(0)) + "\" y=\"" + Fixed(py(1)) + "\" width=\"" +
         Fixed(px(1) - px(0)) + "\" height=\"" + Fixed(py(0.5) - py(1)) +
         "\" fill=\"#d8ecd8\"/>\n";
  svg += "<line x1=\"" + Fixed(px(0)) + "\" y1=\"" + Fixed(py(0)) + "\" x2=\"" + Fixed(px(1)) +
         "\" y2=\"" + Fixed(py(1)) + "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
  svg += "<rect x=\"" + Fixed(px(0)) + "\" y=\"" + Fixed(py(1)) + "\" width=\"" +
         Fixed(px(1) - px(0)) + "\" height=\"" + Fixed(py(0) - py(1)) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const auto& b : curve.bins) {
    const double x = px(b.mean_score);
    svg += "<line x1=\"" + Fixed(x) + "\" y1=\"" + Fixed(py(b.ci_low)) + "\" x2=\"" + Fixed(x) +
           "\" y2=\"" + Fixed(py(b.ci_high)) + "\" stroke=\"#3060a0\"/>\n";
    svg += "<circle cx=\"" + Fixed(x) + "\" cy=\"" + Fixed(py(b.mean_response)) +
           "\" r=\"3.5\" fill=\"#3060a0\"/>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double v = t / 4.0;
    svg += "<text x=\"" + Fixed(px(v)) + "\" y=\"" + Fixed(kH - kM + 16) +
           "\" text-anchor=\"middle\">" + Fixed(v) + "</text>\n";
    svg += "<text x=\"" + Fixed(kM - 6) + "\" y=\"" + Fixed(py(v) + 4) +
           "\" text-anchor=\"end\">" + Fixed(v) + "</text>\n";
  }
  svg += "<text x=\"240\" y=\"" + Fixed(kH - 8) + "\" text-anchor=\"middle\">predicted score</text>\n";
  svg += "<text x=\"14\" y=\"180\" text-anchor=\"middle\" transform=\"rotate(-90 14 180)\">"
         "observed response rate</text>\n";
  std::string safe;
  for (char c : title) {
    switch (c) {
      case '<': safe += "&lt;"; break;
      case '>': safe += "&gt;"; break;
      case '&': safe += "&amp;"; break;
      default: safe += c;
    }
  }
  svg += "<text x=\"240\" y=\"24\" text-anchor=\"middle\" font-size=\"13\">" + safe + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

nlohmann::json SensitivityToJson(const SensitivityReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries)
    entries.push_back({{"feature", e.feature},
                       {"raw_score", e.raw},
                       {"normalized_score", e.normalized},
                       {"degenerate", e.degenerate}});
  return {{"context", report.context},
          {"source", report.source},
          {"normalization", report.normalization},
          {"entries", entries}};
}

nlohmann::json CurveToJson(const MonotonicityCurve& curve) {
  nlohmann::json bins = nlohmann::json::array();
  for (const auto& b : curve.bins)
    bins.push_back({{"low", b.low},
                    {"high", b.high},
                    {"count", b.count},
                    {"mean_score", b.mean_score},
                    {"mean", b.mean_response},
                    {"ci_low", b.ci_low},
                    {"ci_high", b.ci_high}});
  nlohmann::json out = {{"bins", bins}, {"dropped_bins", curve.dropped_bins}, {"slope", curve.slope}};
  out["unlikely_threshold"] =
      curve.unlikely_threshold ? nlohmann::json(*curve.unlikely_threshold) : nlohmann::json();
  out["likely_threshold"] =
      curve.likely_threshold ? nlohmann::json(*curve.likely_threshold) : nlohmann::json();
  return out;
}

}  // namespace ttshield::interpret
