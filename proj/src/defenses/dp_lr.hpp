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
#ifndef TTSHIELD_DEFENSES_DP_LR_HPP_
#define TTSHIELD_DEFENSES_DP_LR_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "common/dataset.hpp"
#include "common/random.hpp"
#include "common/standardizer.hpp"
#include "predictors/logistic.hpp"

namespace ttshield::defenses {

struct DpLrConfig {
  // Privacy budget; +infinity disables the noise.
  double epsilon = 1.0;
  double C = 1.0;  // lambda = 1 / C
  int max_iter = 100;
  // Standardized rows are clipped to this norm and then divided by it.
  double row_clip = 5.0;
  // Public standardization. When absent it is fitted on the training data,
  // which is outside the privacy guarantee.
  std::optional<Standardizer> frame;
};

struct DpLrReport {
  double epsilon = 0.0;
  double sensitivity = 0.0;  // 2 / (n lambda)
  double noise_norm = 0.0;
  std::vector<double> clean;  // pre-noise optimum in the scaled space
  std::vector<double> noisy;
};

// Output perturbation: minimize (1/n) sum logloss + (lambda/2)|theta|^2 on
// z = [x_hat, 1] / sqrt(2) with |z| <= 1, then add noise with density
// proportional to exp(-epsilon |b| / sensitivity). The returned model is
// raw-scale; clipping is a training-time device and is not applied when
// predicting. Classes are unweighted.
predictors::LogisticModel DpLrTrain(const Dataset& data, const DpLrConfig& config,
                                    std::uint64_t seed, DpLrReport* report = nullptr);

// Noise with density proportional to exp(-|b| / scale) in `dim` dimensions:
// norm ~ Gamma(dim, scale), direction uniform.
std::vector<double> SampleL2Laplace(std::size_t dim, double scale, Rng& rng);

// Per-coordinate standard deviation of that noise: sqrt(dim + 1) * scale.
double L2LaplaceCoordinateSd(std::size_t dim, double scale);

}  // namespace ttshield::defenses

#endif  // TTSHIELD_DEFENSES_DP_LR_HPP_
