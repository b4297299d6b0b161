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
#ifndef TTSHIELD_PREDICTORS_NETWORK_HPP_
#define TTSHIELD_PREDICTORS_NETWORK_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "common/dataset.hpp"
#include "common/random.hpp"

namespace ttshield::predictors {

// Fully connected network: ReLU hidden layers, sigmoid outputs. Parameters
// live in one flat vector ordered layer by layer as (weight row-major
// [out x in], bias), the same order a PyTorch state dict flattens to.
class Network {
 public:
  Network() = default;
  // widths = {inputs, hidden..., outputs}; uniform(-1/sqrt(fan_in), +) init.
  Network(std::vector<std::size_t> widths, Rng& rng);
  Network(std::vector<std::size_t> widths, std::vector<double> params);

  const std::vector<std::size_t>& widths() const { return widths_; }
  std::size_t input_size() const { return widths_.front(); }
  std::size_t output_size() const { return widths_.back(); }
  std::size_t layer_count() const { return widths_.size() - 1; }

  const std::vector<double>& params() const { return params_; }
  std::vector<double>& mutable_params() { return params_; }

  Eigen::Map<const Matrix> weight(std::size_t layer) const;
  Eigen::Map<Matrix> mutable_weight(std::size_t layer);
  Eigen::Map<const Vector> bias(std::size_t layer) const;
  Eigen::Map<Vector> mutable_bias(std::size_t layer);

  // Pre-sigmoid outputs, one row per input row.
  Matrix Logits(const Matrix& inputs) const;
  Matrix Forward(const Matrix& inputs) const;
  double Forward1(std::span<const double> x) const;

  // Binary cross-entropy summed over outputs, averaged over rows; writes the
  // gradient w.r.t. params into `grad` (resized). Returns the loss.
  double LossAndGradient(const Matrix& inputs, const Matrix& targets,
                         std::vector<double>& grad) const;

 private:
  std::size_t WeightOffset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t BiasOffset(std::size_t layer) const {
    return offsets_[layer] + widths_[layer] * widths_[layer + 1];
  }
  void ComputeOffsets();

  std::vector<std::size_t> widths_;
  std::vector<std::size_t> offsets_;
  std::vector<double> params_;
};

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Coupled L2: added to the gradient before the moment updates.
  double weight_decay = 0.0;
};

class Adam {
 public:
  Adam(std::size_t size, AdamOptions options);
  void Step(std::vector<double>& params, std::span<const double> grad);

 private:
  AdamOptions options_;
  std::vector<double> m_;
  std::vector<double> v_;
  long step_ = 0;
};

struct NetworkTrainOptions {
  int epochs = 100;
  std::size_t batch_size = 32;
  AdamOptions adam;
};

// Mini-batch Adam with a fresh shuffle each epoch.
void TrainNetwork(Network& net, const Matrix& inputs, const Matrix& targets,
                  const NetworkTrainOptions& options, Rng& rng);

double Sigmoid(double z);

}  // namespace ttshield::predictors

#endif  // TTSHIELD_PREDICTORS_NETWORK_HPP_
