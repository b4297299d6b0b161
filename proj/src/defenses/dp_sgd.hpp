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
#ifndef TTSHIELD_DEFENSES_DP_SGD_HPP_
#define TTSHIELD_DEFENSES_DP_SGD_HPP_

#include <cstdint>
#include <span>

#include "common/dataset.hpp"
#include "predictors/mlp_model.hpp"

namespace ttshield::defenses {

struct DpSgdConfig {
  double noise_multiplier = 1.0;  // sigma
  double clip = 1.0;              // per-sample gradient norm bound
  double delta = 1e-4;
  int epochs = 50;
  predictors::MlpHyper hyper;  // architecture, batch size, Adam step, decay
};

struct DpSgdReport {
  double noise_multiplier = 0.0;
  double clip = 0.0;
  double delta = 0.0;
  std::size_t steps = 0;
  double sampling_rate = 0.0;  // batch / n
  double epsilon = 0.0;        // ApproximateEpsilon(noise_multiplier)
};

// Rescales `grad` to norm <= clip; returns the applied factor.
double ClipGradient(std::span<double> grad, double clip);

// Reference correspondence sigma {20, 5, 1, 0} -> epsilon {0.2, 1, 10, inf},
// interpolated log-log between the anchors and extrapolated from the end
// segments. Not a privacy accountant.
double ApproximateEpsilon(double noise_multiplier);

// Per-sample clipping, Gaussian noise sigma * clip on the clipped batch sum,
// Adam on the noisy batch mean. Trains on standardized inputs and returns a
// raw-scale model.
predictors::MlpModel DpSgdTrain(const Dataset& data, const DpSgdConfig& config,
                                std::uint64_t seed, DpSgdReport* report = nullptr);

}  // namespace ttshield::defenses

#endif  // TTSHIELD_DEFENSES_DP_SGD_HPP_
