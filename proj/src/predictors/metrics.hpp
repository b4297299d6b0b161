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
#ifndef TTSHIELD_PREDICTORS_METRICS_HPP_
#define TTSHIELD_PREDICTORS_METRICS_HPP_

#include <span>

namespace ttshield::predictors {

struct Metrics {
  double balanced_accuracy = 0.0;
  double auc = 0.0;
  // Samples with score >= threshold are predicted positive.
  double threshold = 0.0;
};

// Rank-statistic AUC with midranks for ties. Throws kMetric on one class.
double Auc(std::span<const double> scores, std::span<const int> labels);

// Balanced accuracy at the threshold maximizing Youden's J on these data.
double YoudenBalancedAccuracy(std::span<const double> scores, std::span<const int> labels,
                              double* threshold = nullptr);

Metrics EvaluateScores(std::span<const double> scores, std::span<const int> labels);

}  // namespace ttshield::predictors

#endif  // TTSHIELD_PREDICTORS_METRICS_HPP_
