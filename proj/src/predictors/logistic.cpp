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
#include "predictors/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "common/error.hpp"
#include "common/random.hpp"
#include "predictors/network.hpp"

namespace ttshield::predictors {
namespace {

double SoftThreshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

// log(1 + exp(-m)) for margin m = (2y - 1) z.
double LogLoss(double z, int y) {
  const double m = y == 1 ? z : -z;
  return std::max(-m, 0.0) + std::log1p(std::exp(-std::abs(m)));
}

}  // namespace

double LogisticModel::Logit(std::span<const double> x) const {
  Require(x.size() == weights.size(), ErrorCode::kShape,
          "expected " + std::to_string(weights.size()) + " features, got " +
              std::to_string(x.size()));
  double z = intercept;
  for (std::size_t j = 0; j < x.size(); ++j) z += weights[j] * x[j];
  return z;
}

double LogisticModel::Predict(std::span<const double> x) const { return Sigmoid(Logit(x)); }

std::vector<double> LogisticModel::Parameters() const {
  std::vector<double> p = weights;
  p.push_back(intercept);
  return p;
}

LogisticModel LogisticModel::FromParameters(std::span<const double> params, LrHyper hyper,
                                            Standardizer standardizer) {
  Require(params.size() >= 2, ErrorCode::kShape, "logistic parameters need w and b");
  LogisticModel m;
  m.weights.assign(params.begin(), params.end() - 1);
  m.intercept = params.back();
  m.hyper = hyper;
  m.standardizer = std::move(standardizer);
  return m;
}

std::vector<double> ClassWeights(std::span<const int> labels, bool balanced) {
  std::vector<double> w(labels.size(), 1.0);
  if (!balanced) return w;
  std::size_t pos = 0;
  for (int y : labels) pos += (y == 1);
  const std::size_t neg = labels.size() - pos;
  const double n = static_cast<double>(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::size_t count = labels[i] == 1 ? pos : neg;
    w[i] = count > 0 ? n / (2.0 * static_cast<double>(count)) : 0.0;
  }
  return w;
}

double LogisticObjective(const Matrix& x, std::span<const int> y,
                         std::span<const double> sample_weights,
                         const LinearParams& params, const LrHyper& hyper) {
  const Vector z = (x * params.w).array() + params.b;
  double loss = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    loss += sample_weights[k] * LogLoss(z(i), y[k]);
  }
  const double rho = hyper.l1_ratio;
  const double penalty =
      rho * params.w.lpNorm<1>() + 0.5 * (1.0 - rho) * params.w.squaredNorm();
  return loss + penalty / hyper.C;
}

LinearParams FullBatchStep(const Matrix& x, std::span<const int> y,
                           std::span<const double> sample_weights,
                           const LinearParams& params, const LrHyper& hyper,
                           double step) {
  const Vector z = (x * params.w).array() + params.b;
  Vector r(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    r(i) = sample_weights[k] * (Sigmoid(z(i)) - y[k]);
  }
  const double rho = hyper.l1_ratio;
  LinearParams out;
  out.w = params.w - step * (x.transpose() * r + ((1.0 - rho) / hyper.C) * params.w);
  out.b = params.b - step * r.sum();
  const double t = step * rho / hyper.C;
  for (Eigen::Index j = 0; j < out.w.size(); ++j) out.w(j) = SoftThreshold(out.w(j), t);
  return out;
}

LinearParams FitElasticNet(const Matrix& x, std::span<const int> y, const LrHyper& hyper,
                           std::uint64_t seed) {
  Require(hyper.C > 0.0, ErrorCode::kArgument, "C must be positive");
  Require(hyper.l1_ratio >= 0.0 && hyper.l1_ratio <= 1.0, ErrorCode::kArgument,
          "l1_ratio must lie in [0, 1]");
  const auto n = static_cast<std::size_t>(x.rows());
  const auto p = x.cols();
  const auto weights = ClassWeights(y, hyper.balanced);
  // Objective scaled by 1/n: F = (1/n) sum c_i l_i + alpha * penalty.
  const double nd = static_cast<double>(n);
  const double alpha = 1.0 / (hyper.C * nd);
  const double rho = hyper.l1_ratio;

  double lmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sq = x.row(static_cast<Eigen::Index>(i)).squaredNorm() + 1.0;
    lmax = std::max(lmax, 0.25 * weights[i] * sq);
  }
  const double step = 1.0 / (3.0 * (lmax + alpha * (1.0 - rho)));

  LinearParams params{Vector::Zero(p), 0.0};
  std::vector<double> memory(n, 0.0);  // stored c_i (sigma(z_i) - y_i)
  Vector avg_w = Vector::Zero(p);
  double avg_b = 0.0;
  Rng rng(seed);
  double prev = std::numeric_limits<double>::infinity();
  for (int epoch = 0; epoch < hyper.max_iter; ++epoch) {
    const auto order = Permutation(n, rng);
    for (std::size_t k : order) {
      const auto i = static_cast<Eigen::Index>(k);
      const double z = x.row(i).dot(params.w) + params.b;
      const double s = weights[k] * (Sigmoid(z) - y[k]);
      const double diff = s - memory[k];
      params.w -= step * (diff * x.row(i).transpose() + avg_w + alpha * (1.0 - rho) * params.w);
      params.b -= step * (diff + avg_b);
      if (rho > 0.0) {
        const double t = step * alpha * rho;
        for (Eigen::Index j = 0; j < p; ++j) params.w(j) = SoftThreshold(params.w(j), t);
      }
      avg_w += (diff / nd) * x.row(i).transpose();
      avg_b += diff / nd;
      memory[k] = s;
    }
    const double obj = LogisticObjective(x, y, weights, params, hyper) / nd;
    if (std::abs(prev - obj) < hyper.tol) break;
    prev = obj;
  }
  return params;
}

LinearParams RescaleToRaw(const LinearParams& standardized, const Standardizer& s) {
  Require(static_cast<std::size_t>(standardized.w.size()) == s.size(), ErrorCode::kShape,
          "standardizer length mismatch");
  LinearParams raw;
  raw.w.resize(standardized.w.size());
  raw.b = standardized.b;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const auto k = static_cast<Eigen::Index>(j);
    raw.w(k) = standardized.w(k) / s.sd()[j];
    raw.b -= standardized.w(k) * s.mean()[j] / s.sd()[j];
  }
  return raw;
}

void CheckTrainable(const Dataset& data) {
  Require(data.size() > 0 && data.feature_count() > 0, ErrorCode::kTraining,
          "empty training data");
  const std::size_t pos = data.positives();
  Require(pos > 0 && pos < data.size(), ErrorCode::kTraining,
          "training data contains a single class");
  Require(data.features.allFinite(), ErrorCode::kTraining, "non-finite training feature");
}

LogisticModel TrainLogistic(const Dataset& data, const LrHyper& hyper, std::uint64_t seed) {
  CheckTrainable(data);
  Standardizer s = Standardizer::Fit(data.features);
  const Matrix xs = s.Apply(data.features);
  const LinearParams fitted = FitElasticNet(xs, data.labels, hyper, seed);
  const LinearParams raw = RescaleToRaw(fitted, s);
  LogisticModel m;
  m.weights.assign(raw.w.data(), raw.w.data() + raw.w.size());
  m.intercept = raw.b;
  m.hyper = hyper;
  m.standardizer = std::move(s);
  for (double v : m.weights)
    Require(std::isfinite(v), ErrorCode::kTraining, "training diverged");
  return m;
}

}  // namespace ttshield::predictors
