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
#include "privacy/adversary.hpp"

#include "common/error.hpp"
#include "common/random.hpp"

namespace ttshield::privacy {

Adversary Adversary::Train(const Matrix& features, const Matrix& labels,
                           const AdversaryOptions& options, std::uint64_t seed) {
  Require(features.rows() == labels.rows() && features.rows() > 0, ErrorCode::kShape,
          "adversary needs matching, nonempty feature and label rows");
  Require(features.cols() > 0 && labels.cols() > 0, ErrorCode::kShape,
          "adversary needs features and labels");
  Standardizer s = Standardizer::Fit(features);
  const Matrix x = s.Apply(features);
  std::vector<std::size_t> widths{static_cast<std::size_t>(features.cols())};
  widths.insert(widths.end(), options.hidden.begin(), options.hidden.end());
  widths.push_back(static_cast<std::size_t>(labels.cols()));
  Rng rng(seed);
  predictors::Network net(widths, rng);
  predictors::NetworkTrainOptions train;
  train.epochs = options.epochs;
  train.batch_size = options.batch_size;
  train.adam.learning_rate = options.learning_rate;
  predictors::TrainNetwork(net, x, labels, train, rng);
  return Adversary(std::move(s), std::move(net));
}

Matrix Adversary::Predict(const Matrix& features) const {
  return network_.Forward(standardizer_.Apply(features));
}

Matrix Threshold(const Matrix& probabilities) {
  return (probabilities.array() >= 0.5).cast<double>().matrix();
}

double HammingScore(const Matrix& predictions, const Matrix& labels) {
  Require(predictions.rows() == labels.rows() && predictions.cols() == labels.cols(),
          ErrorCode::kShape, "prediction and label shapes differ");
  Require(predictions.size() > 0, ErrorCode::kShape, "empty prediction matrix");
  const double agree = (predictions.array() == labels.array()).cast<double>().sum();
  return agree / static_cast<double>(predictions.size());
}

}  // namespace ttshield::privacy
