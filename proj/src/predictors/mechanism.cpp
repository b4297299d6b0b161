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
#include "predictors/mechanism.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace ttshield::predictors {
namespace {

constexpr int kMaxPartitionRetries = 20;

}  // namespace

double Predict(const Model& model, std::span<const double> x) {
  return std::visit([&](const auto& m) { return m.Predict(x); }, model);
}

std::vector<double> Parameters(const Model& model) {
  return std::visit([](const auto& m) { return m.Parameters(); }, model);
}

std::size_t FeatureCount(const Model& model) {
  if (const auto* lr = std::get_if<LogisticModel>(&model)) return lr->weights.size();
  return std::get<MlpModel>(model).network.input_size();
}

const Standardizer& ModelStandardizer(const Model& model) {
  return std::visit([](const auto& m) -> const Standardizer& { return m.standardizer; },
                    model);
}

bool IsLogistic(const Model& model) {
  return std::holds_alternative<LogisticModel>(model);
}

Model ModelFromParameters(const ModelHyper& hyper, std::span<const double> params,
                          std::size_t feature_count, Standardizer standardizer) {
  if (const auto* lr = std::get_if<LrHyper>(&hyper)) {
    Require(params.size() == feature_count + 1, ErrorCode::kShape,
            "logistic parameter length mismatch");
    return LogisticModel::FromParameters(params, *lr, std::move(standardizer));
  }
  const auto& mh = std::get<MlpHyper>(hyper);
  std::vector<std::size_t> widths{feature_count};
  widths.insert(widths.end(), mh.hidden.begin(), mh.hidden.end());
  widths.push_back(1);
  MlpModel m;
  m.network = Network(widths, std::vector<double>(params.begin(), params.end()));
  m.hyper = mh;
  m.standardizer = std::move(standardizer);
  return m;
}

Model TrainModel(const ModelHyper& hyper, const Dataset& data, std::uint64_t seed) {
  if (const auto* lr = std::get_if<LrHyper>(&hyper)) return TrainLogistic(data, *lr, seed);
  return TrainMlp(data, std::get<MlpHyper>(hyper), seed);
}

std::vector<std::size_t> StratifiedSplit(std::span<const int> labels, double fraction,
                                         Rng& rng) {
  Require(fraction > 0.0 && fraction <= 1.0, ErrorCode::kArgument,
          "split fraction must lie in (0, 1]");
  std::vector<std::size_t> chosen;
  for (int cls : {0, 1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == cls) members.push_back(i);
    const auto take = static_cast<std::size_t>(
        std::lround(fraction * static_cast<double>(members.size())));
    const auto pick = SampleWithoutReplacement(members.size(), take, rng);
    for (std::size_t k : pick) chosen.push_back(members[k]);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<int> StratifiedFolds(std::span<const int> labels, int folds, Rng& rng) {
  Require(folds >= 2, ErrorCode::kArgument, "need at least two folds");
  std::vector<int> assignment(labels.size(), 0);
  for (int cls : {0, 1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == cls) members.push_back(i);
    const auto order = Permutation(members.size(), rng);
    for (std::size_t k = 0; k < order.size(); ++k)
      assignment[members[order[k]]] = static_cast<int>(k % static_cast<std::size_t>(folds));
  }
  return assignment;
}

std::vector<double> AverageOverFolds(const Dataset& data, int repetitions, int folds,
                                     const ParamTrainer& trainer, std::uint64_t seed) {
  Require(repetitions >= 1, ErrorCode::kArgument, "J must be at least 1");
  Require(folds >= 2, ErrorCode::kArgument, "K must be at least 2");
  std::vector<double> sum;
  std::size_t count = 0;
  Rng rng(seed);
  for (int rep = 0; rep < repetitions; ++rep) {
    std::vector<std::vector<std::size_t>> train_sets;
    for (int attempt = 0;; ++attempt) {
      Require(attempt < kMaxPartitionRetries, ErrorCode::kTraining,
              "could not draw a fold partition with both classes in every training set");
      const auto assignment = StratifiedFolds(data.labels, folds, rng);
      train_sets.assign(static_cast<std::size_t>(folds), {});
      for (std::size_t i = 0; i < assignment.size(); ++i)
        for (int f = 0; f < folds; ++f)
          if (assignment[i] != f) train_sets[static_cast<std::size_t>(f)].push_back(i);
      bool ok = true;
      for (const auto& idx : train_sets) {
        std::size_t pos = 0;
        for (std::size_t i : idx) pos += (data.labels[i] == 1);
        ok = ok && pos > 0 && pos < idx.size();
      }
      if (ok) break;
    }
    for (int f = 0; f < folds; ++f) {
      const Dataset part = data.Subset(train_sets[static_cast<std::size_t>(f)]);
      const auto params = trainer(part, DeriveSeed(seed, {static_cast<std::uint64_t>(rep),
                                                          static_cast<std::uint64_t>(f)}));
      if (sum.empty()) sum.assign(params.size(), 0.0);
      Require(params.size() == sum.size(), ErrorCode::kShape,
              "fold trainers returned different parameter lengths");
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += params[k];
      ++count;
    }
  }
  for (double& v : sum) v /= static_cast<double>(count);
  return sum;
}

Model TrainWithMechanism(const ModelHyper& hyper, const Dataset& data,
                         const TrainingMechanism& mechanism, std::uint64_t seed) {
  Require(data.size() > 0, ErrorCode::kArgument, "empty training union");
  if (mechanism.kind == TrainingMechanism::Kind::kVanilla) {
    Rng rng(DeriveSeed(seed, {0x5711}));
    const auto idx = StratifiedSplit(data.labels, mechanism.train_fraction, rng);
    return TrainModel(hyper, data.Subset(idx), DeriveSeed(seed, {0x7a1}));
  }
  const ParamTrainer trainer = [&](const Dataset& part, std::uint64_t s) {
    return Parameters(TrainModel(hyper, part, s));
  };
  const auto mean =
      AverageOverFolds(data, mechanism.repetitions, mechanism.folds, trainer, seed);
  return ModelFromParameters(hyper, mean, data.feature_count(),
                             Standardizer::Fit(data.features));
}

}  // namespace ttshield::predictors
