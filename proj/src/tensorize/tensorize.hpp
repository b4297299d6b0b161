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
#ifndef TTSHIELD_TENSORIZE_TENSORIZE_HPP_
#define TTSHIELD_TENSORIZE_TENSORIZE_HPP_

#include <memory>
#include <vector>

#include "common/dataset.hpp"
#include "predictors/scorer.hpp"
#include "tensorize/sketch.hpp"
#include "tt/tensor_train.hpp"

namespace ttshield::tensorize {

struct TensorizeResult {
  tt::TensorTrain tt;  // raw-scale, gauge-randomized, ranks padded to config
  std::vector<std::size_t> pivot_rows;
  SketchStats stats;
};

// b-WBB (or SBB when bins = 0) oracle on the target, pivots from the union,
// sketch in the union's standardized coordinates, rescale to raw inputs,
// pad ranks, randomize the gauge with DeriveSeed(config.seed, ...).
TensorizeResult TensorizeModel(std::shared_ptr<const predictors::Scorer> target,
                               const Matrix& union_features, const TensorizeConfig& config);

// Same pipeline with an explicit oracle (in-process or remote).
TensorizeResult TensorizeOracle(const Oracle& oracle, const Matrix& union_features,
                                const TensorizeConfig& config);

// Born-rule classifier view of a TT consuming raw inputs.
class TtScorer final : public predictors::Scorer {
 public:
  explicit TtScorer(tt::TensorTrain tt);
  double Score(std::span<const double> x) const override;
  std::size_t feature_count() const override { return tt_.input_count(); }
  const tt::TensorTrain& tt() const { return tt_; }

 private:
  tt::TensorTrain tt_;
};

}  // namespace ttshield::tensorize

#endif  // TTSHIELD_TENSORIZE_TENSORIZE_HPP_
