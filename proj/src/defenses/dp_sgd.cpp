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
#include "defenses/dp_sgd.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "common/error.hpp"
#include "common/random.hpp"
#include "common/standardizer.hpp"
#include "predictors/logistic.hpp"
#include "predictors/network.hpp"

namespace ttshield::defenses {
namespace {

constexpr std::uint64_t kInitTag = 0x1417;
constexpr std::uint64_t kNoiseTag = 0x9015;

}  // namespace

double ClipGradient(std::span<double> grad, double clip) {
  double norm = 0.0;
  for (double g : grad) norm += g * g;
  norm = std::sqrt(norm);
  if (norm <= clip || norm == 0.0) return 1.0;
  const double factor = clip / norm;
  for (double& g : grad) g *= factor;
  return factor;
}

double ApproximateEpsilon(double sigma) {
  Require(sigma >= 0.0 && std::isfinite(sigma), ErrorCode::kArgument,
          "noise multiplier must be finite and >= 0");
  if (sigma == 0.0) return std::numeric_limits<double>::infinity();
  static constexpr std::array<std::array<double, 2>, 3> kAnchors{
      {{1.0, 10.0}, {5.0, 1.0}, {20.0, 0.2}}};
  std::size_t seg = sigma <= kAnchors[1][0] ? 0 : 1;
  const auto& a = kAnchors[seg];
  const auto& b = kAnchors[seg + 1];
  const double slope = std::log(b[1] / a[1]) / std::log(b[0] / a[0]);
  return a[1] * std::exp(slope * std::log(sigma / a[0]));
}

predictors::MlpModel DpSgdTrain(const Dataset& data, const DpSgdConfig& config,
                                std::uint64_t seed, DpSgdReport* report) {
  Require(config.noise_multiplier >= 0.0, ErrorCode::kArgument,
          "noise multiplier must be >= 0");
  Require(config.clip > 0.0 && config.delta > 0.0 && config.delta < 1.0, ErrorCode::kArgument,
          "clip must be > 0 and delta in (0, 1)");
  Require(config.epochs >= 0 && config.hyper.batch_size >= 1, ErrorCode::kArgument,
          "epochs and batch size must be positive");
  predictors::CheckTrainable(data);
  Standardizer s = Standardizer::Fit(data.features);
  const Matrix xs = s.Apply(data.features);
  const std::size_t n = data.size();

  std::vector<std::size_t> widths{data.feature_count()};
  widths.insert(widths.end(), config.hyper.hidden.begin(), config.hyper.hidden.end());
  widths.push_back(1);
  Rng init(DeriveSeed(seed, {kInitTag}));
  predictors::Network net(widths, init);
  predictors::AdamOptions adam_opts;
  adam_opts.learning_rate = config.hyper.learning_rate;
  adam_opts.weight_decay = config.hyper.weight_decay;
  predictors::Adam adam(net.params().size(), adam_opts);
  Rng rng(DeriveSeed(seed, {kNoiseTag}));

  const std::size_t batch = config.hyper.batch_size;
  const std::size_t dim = net.params().size();
  std::vector<double> sum(dim), grad, noisy(dim);
  Matrix xi(1, xs.cols()), yi(1, 1);
  std::size_t steps = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const auto order = Permutation(n, rng);
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t end = std::min(n, start + batch);
      std::fill(sum.begin(), sum.end(), 0.0);
      for (std::size_t k = start; k < end; ++k) {
        const auto row = static_cast<Eigen::Index>(order[k]);
        xi.row(0) = xs.row(row);
        yi(0, 0) = data.labels[order[k]];
        net.LossAndGradient(xi, yi, grad);
        ClipGradient(grad, config.clip);
        for (std::size_t q = 0; q < dim; ++q) sum[q] += grad[q];
      }
      const double count = static_cast<double>(end - start);
      for (std::size_t q = 0; q < dim; ++q) {
        const double noise = config.noise_multiplier > 0.0
                                 ? config.noise_multiplier * config.clip * StandardNormal(rng)
                                 : 0.0;
        noisy[q] = (sum[q] + noise) / count;
      }
      adam.Step(net.mutable_params(), noisy);
      ++steps;
    }
  }
  for (double v : net.params())
    Require(std::isfinite(v), ErrorCode::kTraining, "DP-SGD diverged");

  if (report) {
    report->noise_multiplier = config.noise_multiplier;
    report->clip = config.clip;
    report->delta = config.delta;
    report->steps = steps;
    report->sampling_rate = static_cast<double>(std::min(batch, n)) / static_cast<double>(n);
    report->epsilon = ApproximateEpsilon(config.noise_multiplier);
  }
  predictors::MlpModel m;
  m.network = predictors::FoldStandardizer(net, s);
  m.hyper = config.hyper;
  m.hyper.epochs = config.epochs;
  m.standardizer = std::move(s);
  return m;
}

}  // namespace ttshield::defenses
