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
#ifndef TTSHIELD_PREDICTORS_LOGISTIC_HPP_
#define TTSHIELD_PREDICTORS_LOGISTIC_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "common/dataset.hpp"
#include "common/standardizer.hpp"

namespace ttshield::predictors {

struct LrHyper {
  double l1_ratio = 0.0;
  double C = 1.0;
  bool balanced = true;
  int max_iter = 100;
  // Stop once the epoch-to-epoch objective change falls below this.
  double tol = 1e-8;
};

// Logistic regression with raw-scale parameters: logit = w.x + b on raw x.
struct LogisticModel {
  std::vector<double> weights;
  double intercept = 0.0;
  LrHyper hyper;
  Standardizer standardizer;

  double Logit(std::span<const double> x) const;
  double Predict(std::span<const double> x) const;
  // (w_1, ..., w_p, b)
  std::vector<double> Parameters() const;
  static LogisticModel FromParameters(std::span<const double> params, LrHyper hyper,
                                      Standardizer standardizer);
};

struct LinearParams {
  Vector w;
  double b = 0.0;
};

// n / (2 n_y) per sample when balanced, else 1.
std::vector<double> ClassWeights(std::span<const int> labels, bool balanced);

// Unnormalized elastic-net objective
//   sum_i c_i logloss_i + (1/C) [l1_ratio |w|_1 + (1 - l1_ratio)/2 |w|^2].
double LogisticObjective(const Matrix& x, std::span<const int> y,
                         std::span<const double> sample_weights,
                         const LinearParams& params, const LrHyper& hyper);

// One full-batch proximal gradient step on the same objective.
LinearParams FullBatchStep(const Matrix& x, std::span<const int> y,
                           std::span<const double> sample_weights,
                           const LinearParams& params, const LrHyper& hyper,
                           double step);

// Minimizes the objective on already-standardized inputs with SAGA.
LinearParams FitElasticNet(const Matrix& x, std::span<const int> y,
                           const LrHyper& hyper, std::uint64_t seed);

// w_j = w~_j / sd_j, b = b~ - sum_j w~_j mean_j / sd_j.
LinearParams RescaleToRaw(const LinearParams& standardized, const Standardizer& s);

// Standardize, fit, rescale. Throws kTraining on single-class data.
LogisticModel TrainLogistic(const Dataset& data, const LrHyper& hyper, std::uint64_t seed);

void CheckTrainable(const Dataset& data);

}  // namespace ttshield::predictors

#endif  // TTSHIELD_PREDICTORS_LOGISTIC_HPP_
