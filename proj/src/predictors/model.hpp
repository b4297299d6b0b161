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
#ifndef TTSHIELD_PREDICTORS_MODEL_HPP_
#define TTSHIELD_PREDICTORS_MODEL_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "predictors/logistic.hpp"
#include "predictors/mlp_model.hpp"
#include "predictors/scorer.hpp"

namespace ttshield::predictors {

using Model = std::variant<LogisticModel, MlpModel>;
using ModelHyper = std::variant<LrHyper, MlpHyper>;

double Predict(const Model& model, std::span<const double> x);
std::vector<double> Parameters(const Model& model);
std::size_t FeatureCount(const Model& model);
const Standardizer& ModelStandardizer(const Model& model);
bool IsLogistic(const Model& model);

// Rebuilds a model of the hyper's architecture from a flat raw-scale vector.
Model ModelFromParameters(const ModelHyper& hyper, std::span<const double> params,
                          std::size_t feature_count, Standardizer standardizer);

Model TrainModel(const ModelHyper& hyper, const Dataset& data, std::uint64_t seed);

class ModelScorer final : public Scorer {
 public:
  explicit ModelScorer(Model model) : model_(std::move(model)) {}
  double Score(std::span<const double> x) const override { return Predict(model_, x); }
  std::size_t feature_count() const override { return FeatureCount(model_); }
  const Model& model() const { return model_; }

 private:
  Model model_;
};

}  // namespace ttshield::predictors

#endif  // TTSHIELD_PREDICTORS_MODEL_HPP_
