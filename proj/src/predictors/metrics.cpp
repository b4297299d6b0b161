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
#include "predictors/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "common/error.hpp"

namespace ttshield::predictors {
namespace {

void CheckInputs(std::span<const double> scores, std::span<const int> labels) {
  Require(scores.size() == labels.size(), ErrorCode::kShape,
          "scores and labels differ in length");
  std::size_t pos = 0;
  for (int y : labels) pos += (y == 1);
  Require(pos > 0 && pos < labels.size(), ErrorCode::kMetric,
          "metric needs both classes present");
  for (double s : scores)
    Require(!std::isnan(s), ErrorCode::kMetric, "NaN score");
}

std::vector<std::size_t> SortedOrder(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  return order;
}

}  // namespace

double Auc(std::span<const double> scores, std::span<const int> labels) {
  CheckInputs(scores, labels);
  const auto order = SortedOrder(scores);
  double rank_sum = 0.0;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + 1 + j);  // average 1-based rank
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) {
        rank_sum += mid;
        ++pos;
      }
    }
    i = j;
  }
  const double np = static_cast<double>(pos);
  const double nn = static_cast<double>(labels.size() - pos);
  return (rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

double YoudenBalancedAccuracy(std::span<const double> scores, std::span<const int> labels,
                              double* threshold) {
  CheckInputs(scores, labels);
  const auto order = SortedOrder(scores);
  std::size_t pos = 0;
  for (int y : labels) pos += (y == 1);
  const double np = static_cast<double>(pos);
  const double nn = static_cast<double>(labels.size() - pos);
  // Threshold above every score: all negative, J = 0.
  double best_j = 0.0;
  double best_t = std::numeric_limits<double>::infinity();
  std::size_t tp = pos;
  std::size_t fp = labels.size() - pos;
  // Sweep thresholds t = each distinct score; predicted positive iff s >= t.
  for (std::size_t i = 0; i < order.size();) {
    const double t = scores[order[i]];
    const double j_stat = static_cast<double>(tp) / np + (nn - static_cast<double>(fp)) / nn - 1.0;
    if (j_stat > best_j) {
      best_j = j_stat;
      best_t = t;
    }
    std::size_t k = i;
    while (k < order.size() && scores[order[k]] == t) {
      if (labels[order[k]] == 1) --tp; else --fp;
      ++k;
    }
    i = k;
  }
  if (threshold) *threshold = best_t;
  return 0.5 * (1.0 + best_j);
}

Metrics EvaluateScores(std::span<const double> scores, std::span<const int> labels) {
  Metrics m;
  m.auc = Auc(scores, labels);
  m.balanced_accuracy = YoudenBalancedAccuracy(scores, labels, &m.threshold);
  return m;
}

}  // namespace ttshield::predictors
