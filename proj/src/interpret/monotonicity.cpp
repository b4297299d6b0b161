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
#include "interpret/monotonicity.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "common/random.hpp"

namespace ttshield::interpret {
namespace {

// Linear interpolation of the first upward crossing of `level`.
std::optional<double> Crossing(const std::vector<MonotonicityBin>& bins, double level) {
  if (bins.empty()) return std::nullopt;
  if (bins.front().mean_response >= level) return bins.front().mean_score;
  for (std::size_t k = 1; k < bins.size(); ++k) {
    const auto& a = bins[k - 1];
    const auto& b = bins[k];
    if (a.mean_response < level && b.mean_response >= level) {
      const double t = (level - a.mean_response) / (b.mean_response - a.mean_response);
      return a.mean_score + t * (b.mean_score - a.mean_score);
    }
  }
  return std::nullopt;
}

double Percentile(std::vector<double>& v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

MonotonicityCurve ComputeMonotonicityCurve(std::span<const double> scores,
                                           std::span<const int> labels, std::size_t bins,
                                           std::size_t n_boot, std::uint64_t seed) {
  Require(scores.size() == labels.size() && !scores.empty(), ErrorCode::kShape,
          "scores and labels must be nonempty and equally long");
  Require(bins >= 1, ErrorCode::kArgument, "need at least one bin");
  Require(n_boot >= 100, ErrorCode::kArgument, "n_boot must be >= 100");
  bool pos = false, neg = false;
  for (int y : labels) {
    Require(y == 0 || y == 1, ErrorCode::kArgument, "labels must be 0/1");
    (y ? pos : neg) = true;
  }
  Require(pos && neg, ErrorCode::kArgument, "monotonicity curve needs both classes");

  std::vector<std::vector<std::size_t>> members(bins);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    Require(std::isfinite(scores[i]), ErrorCode::kDomain, "non-finite score");
    const double s = std::clamp(scores[i], 0.0, 1.0);
    const auto b = std::min(bins - 1, static_cast<std::size_t>(s * static_cast<double>(bins)));
    members[b].push_back(i);
  }

  MonotonicityCurve curve;
  Rng rng(seed);
  std::vector<double> boot(n_boot);
  for (std::size_t b = 0; b < bins; ++b) {
    if (members[b].empty()) {
      curve.dropped_bins.push_back(b);
      continue;
    }
    MonotonicityBin bin;
    bin.low = static_cast<double>(b) / static_cast<double>(bins);
    bin.high = static_cast<double>(b + 1) / static_cast<double>(bins);
    bin.count = members[b].size();
    double ss = 0.0, sy = 0.0;
    for (std::size_t i : members[b]) {
      ss += scores[i];
      sy += labels[i];
    }
    bin.mean_score = ss / static_cast<double>(bin.count);
    bin.mean_response = sy / static_cast<double>(bin.count);
    std::uniform_int_distribution<std::size_t> pick(0, bin.count - 1);
    for (std::size_t r = 0; r < n_boot; ++r) {
      double hits = 0.0;
      for (std::size_t k = 0; k < bin.count; ++k) hits += labels[members[b][pick(rng)]];
      boot[r] = hits / static_cast<double>(bin.count);
    }
    bin.ci_low = std::min(Percentile(boot, 0.025), bin.mean_response);
    bin.ci_high = std::max(Percentile(boot, 0.975), bin.mean_response);
    curve.bins.push_back(bin);
  }

  curve.unlikely_threshold = Crossing(curve.bins, kUnlikelyResponse);
  curve.likely_threshold = Crossing(curve.bins, kLikelyResponse);

  double w = 0.0, mx = 0.0, my = 0.0;
  for (const auto& bin : curve.bins) {
    const double c = static_cast<double>(bin.count);
    w += c;
    mx += c * bin.mean_score;
    my += c * bin.mean_response;
  }
  mx /= w;
  my /= w;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& bin : curve.bins) {
    const double c = static_cast<double>(bin.count);
    sxy += c * (bin.mean_score - mx) * (bin.mean_response - my);
    sxx += c * (bin.mean_score - mx) * (bin.mean_score - mx);
  }
  curve.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  return curve;
}

}  // namespace ttshield::interpret
