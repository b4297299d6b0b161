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
#ifndef TTSHIELD_PREDICTORS_MECHANISM_HPP_
#define TTSHIELD_PREDICTORS_MECHANISM_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "common/dataset.hpp"
#include "common/random.hpp"
#include "predictors/model.hpp"

namespace ttshield::predictors {

struct TrainingMechanism {
  enum class Kind { kVanilla, kAveraged };
  Kind kind = Kind::kVanilla;
  int repetitions = 20;  // J
  int folds = 3;         // K
  double train_fraction = 0.8;

  static TrainingMechanism Vanilla() { return {}; }
  static TrainingMechanism Averaged(int j, int k) {
    return {Kind::kAveraged, j, k, 0.8};
  }
};

// Seeded stratified split; returns the training indices (sorted).
std::vector<std::size_t> StratifiedSplit(std::span<const int> labels, double fraction,
                                         Rng& rng);

// Seeded stratified K-fold assignment: fold index per sample.
std::vector<int> StratifiedFolds(std::span<const int> labels, int folds, Rng& rng);

// Trainer producing a flat raw-scale parameter vector.
using ParamTrainer = std::function<std::vector<double>(const Dataset&, std::uint64_t)>;

// J repetitions of K-fold training, arithmetic mean of all J*K parameter
// vectors. Partitions leaving a training set with one class are redrawn up to
// a bounded number of times.
std::vector<double> AverageOverFolds(const Dataset& data, int repetitions, int folds,
                                     const ParamTrainer& trainer, std::uint64_t seed);

Model TrainWithMechanism(const ModelHyper& hyper, const Dataset& data,
                         const TrainingMechanism& mechanism, std::uint64_t seed);

}  // namespace ttshield::predictors

#endif  // TTSHIELD_PREDICTORS_MECHANISM_HPP_
