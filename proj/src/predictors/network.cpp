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
#include "predictors/network.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace ttshield::predictors {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Network::Network(std::vector<std::size_t> widths, Rng& rng) : widths_(std::move(widths)) {
  Require(widths_.size() >= 2, ErrorCode::kArgument, "network needs input and output widths");
  ComputeOffsets();
  for (std::size_t l = 0; l < layer_count(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(widths_[l]));
    std::uniform_real_distribution<double> u(-bound, bound);
    const std::size_t nw = widths_[l] * widths_[l + 1];
    for (std::size_t k = 0; k < nw; ++k) params_[WeightOffset(l) + k] = u(rng);
    for (std::size_t k = 0; k < widths_[l + 1]; ++k) params_[BiasOffset(l) + k] = u(rng);
  }
}

Network::Network(std::vector<std::size_t> widths, std::vector<double> params)
    : widths_(std::move(widths)) {
  Require(widths_.size() >= 2, ErrorCode::kArgument, "network needs input and output widths");
  ComputeOffsets();
  Require(params.size() == params_.size(), ErrorCode::kShape,
          "network parameter count mismatch: expected " + std::to_string(params_.size()) +
              ", got " + std::to_string(params.size()));
  params_ = std::move(params);
}

void Network::ComputeOffsets() {
  offsets_.clear();
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
    offsets_.push_back(off);
    off += widths_[l] * widths_[l + 1] + widths_[l + 1];
  }
  params_.assign(off, 0.0);
}

Eigen::Map<const Matrix> Network::weight(std::size_t l) const {
  return {params_.data() + WeightOffset(l), static_cast<Eigen::Index>(widths_[l + 1]),
          static_cast<Eigen::Index>(widths_[l])};
}
Eigen::Map<Matrix> Network::mutable_weight(std::size_t l) {
  return {params_.data() + WeightOffset(l), static_cast<Eigen::Index>(widths_[l + 1]),
          static_cast<Eigen::Index>(widths_[l])};
}
Eigen::Map<const Vector> Network::bias(std::size_t l) const {
  return {params_.data() + BiasOffset(l), static_cast<Eigen::Index>(widths_[l + 1])};
}
Eigen::Map<Vector> Network::mutable_bias(std::size_t l) {
  return {params_.data() + BiasOffset(l), static_cast<Eigen::Index>(widths_[l + 1])};
}

Matrix Network::Logits(const Matrix& inputs) const {
  Require(static_cast<std::size_t>(inputs.cols()) == input_size(), ErrorCode::kShape,
          "network input width mismatch");
  Matrix a = inputs;
  for (std::size_t l = 0; l < layer_count(); ++l) {
    Matrix z = a * weight(l).transpose();
    z.rowwise() += bias(l).transpose();
    if (l + 1 < layer_count()) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  return a;
}

Matrix Network::Forward(const Matrix& inputs) const {
  return Logits(inputs).unaryExpr([](double z) { return Sigmoid(z); });
}

double Network::Forward1(std::span<const double> x) const {
  Require(x.size() == input_size(), ErrorCode::kShape, "network input width mismatch");
  Require(output_size() == 1, ErrorCode::kShape, "Forward1 needs a single output");
  std::vector<double> a(x.begin(), x.end());
  std::vector<double> z;
  for (std::size_t l = 0; l < layer_count(); ++l) {
    const std::size_t in = widths_[l];
    const std::size_t out = widths_[l + 1];
    const double* w = params_.data() + WeightOffset(l);
    const double* b = params_.data() + BiasOffset(l);
    z.assign(out, 0.0);
    for (std::size_t o = 0; o < out; ++o) {
      double s = b[o];
      const double* wr = w + o * in;
      for (std::size_t i = 0; i < in; ++i) s += wr[i] * a[i];
      z[o] = (l + 1 < layer_count()) ? std::max(s, 0.0) : s;
    }
    a.swap(z);
  }
  return Sigmoid(a[0]);
}

double Network::LossAndGradient(const Matrix& inputs, const Matrix& targets,
                                std::vector<double>& grad) const {
  const Eigen::Index batch = inputs.rows();
  Require(batch > 0, ErrorCode::kArgument, "empty batch");
  Require(targets.rows() == batch &&
              static_cast<std::size_t>(targets.cols()) == output_size(),
          ErrorCode::kShape, "target shape mismatch");
  const std::size_t layers = layer_count();
  std::vector<Matrix> acts;  // acts[l] = input to layer l
  acts.reserve(layers + 1);
  acts.push_back(inputs);
  for (std::size_t l = 0; l < layers; ++l) {
    Matrix z = acts.back() * weight(l).transpose();
    z.rowwise() += bias(l).transpose();
    if (l + 1 < layers) z = z.cwiseMax(0.0);
    acts.push_back(std::move(z));
  }
  const Matrix& logits = acts.back();
  double loss = 0.0;
  Matrix delta(batch, logits.cols());
  for (Eigen::Index i = 0; i < batch; ++i) {
    for (Eigen::Index k = 0; k < logits.cols(); ++k) {
      const double z = logits(i, k);
      const double y = targets(i, k);
      // log(1 + exp(-|z|)) form of the cross-entropy with logits.
      loss += std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
      delta(i, k) = (Sigmoid(z) - y) / static_cast<double>(batch);
    }
  }
  loss /= static_cast<double>(batch);

  grad.assign(params_.size(), 0.0);
  for (std::size_t l = layers; l-- > 0;) {
    Eigen::Map<Matrix> gw(grad.data() + WeightOffset(l),
                          static_cast<Eigen::Index>(widths_[l + 1]),
                          static_cast<Eigen::Index>(widths_[l]));
    Eigen::Map<Vector> gb(grad.data() + BiasOffset(l),
                          static_cast<Eigen::Index>(widths_[l + 1]));
    gw.noalias() = delta.transpose() * acts[l];
    gb = delta.colwise().sum().transpose();
    if (l > 0) {
      Matrix prev = delta * weight(l);
      // ReLU mask from the stored post-activation values.
      prev.array() *= (acts[l].array() > 0.0).cast<double>();
      delta = std::move(prev);
    }
  }
  return loss;
}

Adam::Adam(std::size_t size, AdamOptions options)
    : options_(options), m_(size, 0.0), v_(size, 0.0) {}

void Adam::Step(std::vector<double>& params, std::span<const double> grad) {
  Require(grad.size() == params.size() && params.size() == m_.size(), ErrorCode::kShape,
          "adam size mismatch");
  ++step_;
  const double b1 = options_.beta1;
  const double b2 = options_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(step_));
  const double step_size = options_.learning_rate / c1;
  const double sqrt_c2 = std::sqrt(c2);
  for (std::size_t k = 0; k < params.size(); ++k) {
    const double g = grad[k] + options_.weight_decay * params[k];
    m_[k] = b1 * m_[k] + (1.0 - b1) * g;
    v_[k] = b2 * v_[k] + (1.0 - b2) * g * g;
    params[k] -= step_size * m_[k] / (std::sqrt(v_[k]) / sqrt_c2 + options_.epsilon);
  }
}

void TrainNetwork(Network& net, const Matrix& inputs, const Matrix& targets,
                  const NetworkTrainOptions& options, Rng& rng) {
  const auto n = static_cast<std::size_t>(inputs.rows());
  Require(n > 0, ErrorCode::kArgument, "no training rows");
  Require(options.batch_size > 0, ErrorCode::kArgument, "batch size must be positive");
  Adam adam(net.params().size(), options.adam);
  std::vector<double> grad;
  Matrix xb;
  Matrix yb;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const auto order = Permutation(n, rng);
    for (std::size_t start = 0; start < n; start += options.batch_size) {
      const std::size_t len = std::min(options.batch_size, n - start);
      xb.resize(static_cast<Eigen::Index>(len), inputs.cols());
      yb.resize(static_cast<Eigen::Index>(len), targets.cols());
      for (std::size_t k = 0; k < len; ++k) {
        xb.row(static_cast<Eigen::Index>(k)) = inputs.row(static_cast<Eigen::Index>(order[start + k]));
        yb.row(static_cast<Eigen::Index>(k)) = targets.row(static_cast<Eigen::Index>(order[start + k]));
      }
      net.LossAndGradient(xb, yb, grad);
      adam.Step(net.mutable_params(), grad);
    }
  }
}

}  // namespace ttshield::predictors
