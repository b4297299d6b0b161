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
#ifndef TTSHIELD_INTERPRET_MONOTONICITY_HPP_
#define TTSHIELD_INTERPRET_MONOTONICITY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ttshield::interpret {

struct MonotonicityBin {
  double low = 0.0;  // score range [low, high)
  double high = 0.0;
  std::size_t count = 0;
  double mean_score = 0.0;
  double mean_response = 0.0;
  double ci_low = 0.0;  // percentile bootstrap, 95%
  double ci_high = 0.0;
};

struct MonotonicityCurve {
  std::vector<MonotonicityBin> bins;       // occupied bins, by score
  std::vector<std::size_t> dropped_bins;   // indices of empty bins
  // Scores where the bin-mean response first crosses 10% and 50%.
  std::optional<double> unlikely_threshold;
  std::optional<double> likely_threshold;
  // Count-weighted least-squares slope of mean response on mean score.
  double slope = 0.0;
};

inline constexpr double kUnlikelyResponse = 0.10;
inline constexpr double kLikelyResponse = 0.50;

// Equal-width bins over [0, 1]; n_boot >= 100 resamples per bin.
MonotonicityCurve ComputeMonotonicityCurve(std::span<const double> scores,
                                           std::span<const int> labels, std::size_t bins,
                                           std::size_t n_boot, std::uint64_t seed);

}  // namespace ttshield::interpret

#endif  // TTSHIELD_INTERPRET_MONOTONICITY_HPP_
