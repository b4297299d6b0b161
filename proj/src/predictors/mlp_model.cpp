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
#include "predictors/mlp_model.hpp"

#include "common/error.hpp"
#include "common/random.hpp"
#include "predictors/logistic.hpp"

namespace ttshield::predictors {

Network FoldStandardizer(const Network& standardized, const Standardizer& s) {
  Require(s.size() == standardized.input_size(), ErrorCode::kShape,
          "standardizer length mismatch");
  Network raw = standardized;
  auto w = raw.mutable_weight(0);
  auto b = raw.mutable_bias(0);
  const auto w_std = standardized.weight(0);
  for (Eigen::Index o = 0; o < w.rows(); ++o) {
    double shift = 0.0;
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      const auto k = static_cast<std::size_t>(j);
      w(o, j) = w_std(o, j) / s.sd()[k];
      shift += w_std(o, j) * s.mean()[k] / s.sd()[k];
    }
    b(o) -= shift;
  }
  return raw;
}

std::size_t MlpParameterCount(std::size_t inputs, std::span<const std::size_t> hidden) {
  std::size_t count = 0;
  std::size_t prev = inputs;
  for (std::size_t h : hidden) {
    count += prev * h + h;
    prev = h;
  }
  return count + prev + 1;
}

MlpModel TrainMlp(const Dataset& data, const MlpHyper& hyper, std::uint64_t seed) {
  CheckTrainable(data);
  Require(hyper.epochs >= 0, ErrorCode::kArgument, "epochs must be non-negative");
  Standardizer s = Standardizer::Fit(data.features);
  const Matrix xs = s.Apply(data.features);
  Matrix targets(xs.rows(), 1);
  for (Eigen::Index i = 0; i < xs.rows(); ++i)
    targets(i, 0) = data.labels[static_cast<std::size_t>(i)];

  std::vector<std::size_t> widths{data.feature_count()};
  widths.insert(widths.end(), hyper.hidden.begin(), hyper.hidden.end());
  widths.push_back(1);
  Rng rng(seed);
  Network net(widths, rng);
  NetworkTrainOptions opts;
  opts.epochs = hyper.epochs;
  opts.batch_size = hyper.batch_size;
  opts.adam.learning_rate = hyper.learning_rate;
  opts.adam.weight_decay = hyper.weight_decay;
  TrainNetwork(net, xs, targets, opts, rng);
  for (double v : net.params())
    Require(std::isfinite(v), ErrorCode::kTraining, "training diverged");

  MlpModel m;
  m.network = FoldStandardizer(net, s);
  m.hyper = hyper;
  m.standardizer = std::move(s);
  return m;
}

}  // namespace ttshield::predictors
