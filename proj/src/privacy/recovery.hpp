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
#ifndef TTSHIELD_PRIVACY_RECOVERY_HPP_
#define TTSHIELD_PRIVACY_RECOVERY_HPP_

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "common/dataset.hpp"
#include "predictors/logistic.hpp"

namespace ttshield::privacy {

// Black-box probability query x -> p(y = 1 | x), possibly rounded.
using ProbabilityQuery = std::function<double(std::span<const double>)>;

struct RecoveryOptions {
  // Valid inputs to start from; the one whose answer is closest to 0.5 is
  // used as the base point. Must be nonempty.
  Matrix candidates;
  // Features restricted to {0, 1} (flipped rather than stepped).
  std::vector<bool> binary;
  // Exclusive one-hot block [first, first + count): only one flag may be set,
  // so its weights are identified relative to the base point's flag.
  std::optional<std::pair<std::size_t, std::size_t>> one_hot;
  // Continuous steps are grown or shrunk so answers stay inside this band and
  // the logit moves by about `target_logit_change`.
  double low = 0.2;
  double high = 0.8;
  double initial_step = 1.0;
  double target_logit_change = 1.0;
  int max_step_adjustments = 40;
  // Maps an answer to a logit; defaults to log(p / (1 - p)).
  std::function<double(double)> to_logit;
};

// Finite-difference recovery w_j = (l(x') - l(x)) / (x'_j - x_j),
// b = l(x) - w.x. With a one-hot block the result is canonicalized (see
// CanonicalizeOneHot). Answers of exactly 0 or 1 at the base point make it
// fall back to the next candidate; persistent saturation throws kRecovery.
predictors::LogisticModel RecoverLrCoefficients(const ProbabilityQuery& query,
                                                std::size_t feature_count,
                                                const RecoveryOptions& options);

// Shifts a one-hot block of (w..., b) to mean zero and compensates in the
// intercept; predictions on inputs with exactly one flag set are unchanged.
void CanonicalizeOneHot(std::vector<double>& params, std::size_t first, std::size_t count);

// ||a - b|| / ||b||.
double RelativeError(std::span<const double> estimate, std::span<const double> truth);

struct InverseResult {
  double score = 0.0;
  bool clamped = false;  // observed fell outside the calibration range
};

// Piecewise-linear inverse of a monotone non-decreasing (score, displayed)
// calibration. Flat stretches invert to their midpoint. Throws kArgument on
// non-monotone or empty calibration.
InverseResult InvertMonotoneMap(std::span<const std::pair<double, double>> calibration,
                                double observed);

// (s, sigmoid(s)) for `points` scores evenly spaced on [lo, hi].
std::vector<std::pair<double, double>> SigmoidCalibration(double lo = -5.0, double hi = 5.0,
                                                          std::size_t points = 100);

}  // namespace ttshield::privacy

#endif  // TTSHIELD_PRIVACY_RECOVERY_HPP_
