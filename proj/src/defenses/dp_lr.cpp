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
#include "defenses/dp_lr.hpp"

#include <cmath>

#include "common/error.hpp"
#include "common/standardizer.hpp"
#include "predictors/network.hpp"

namespace ttshield::defenses {
namespace {

constexpr std::uint64_t kNoiseTag = 0xd9;

// Newton's method on the strongly convex L2 objective.
Vector FitL2(const Matrix& z, std::span<const int> y, double lambda, int max_iter) {
  const Eigen::Index n = z.rows();
  const Eigen::Index d = z.cols();
  Vector theta = Vector::Zero(d);
  for (int it = 0; it < max_iter; ++it) {
    const Vector margin = z * theta;
    Vector grad = lambda * theta;
    Eigen::MatrixXd hess = lambda * Eigen::MatrixXd::Identity(d, d);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double p = predictors::Sigmoid(margin(i));
      const double r = p - y[static_cast<std::size_t>(i)];
      grad.noalias() += (r / static_cast<double>(n)) * z.row(i).transpose();
      hess.noalias() += (p * (1.0 - p) / static_cast<double>(n)) *
                        (z.row(i).transpose() * z.row(i));
    }
    const Vector step = hess.ldlt().solve(grad);
    theta -= step;
    if (step.norm() <= 1e-13 * (1.0 + theta.norm())) break;
  }
  return theta;
}

}  // namespace

std::vector<double> SampleL2Laplace(std::size_t dim, double scale, Rng& rng) {
  Require(dim >= 1 && scale >= 0.0, ErrorCode::kArgument, "bad L2-Laplace parameters");
  std::gamma_distribution<double> gamma(static_cast<double>(dim), 1.0);
  const double radius = scale * gamma(rng);
  std::vector<double> v(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : v) {
      x = StandardNormal(rng);
      norm += x * x;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (double& x : v) x *= radius / norm;
  return v;
}

double L2LaplaceCoordinateSd(std::size_t dim, double scale) {
  return std::sqrt(static_cast<double>(dim) + 1.0) * scale;
}

predictors::LogisticModel DpLrTrain(const Dataset& data, const DpLrConfig& config,
                                    std::uint64_t seed, DpLrReport* report) {
  Require(config.epsilon > 0.0, ErrorCode::kArgument, "epsilon must be > 0");
  Require(config.C > 0.0 && config.row_clip > 0.0 && config.max_iter >= 1,
          ErrorCode::kArgument, "C, row clip and max_iter must be positive");
  predictors::CheckTrainable(data);
  const Standardizer s = config.frame ? *config.frame : Standardizer::Fit(data.features);
  Require(s.size() == data.feature_count(), ErrorCode::kShape,
          "DP-LR frame does not match the feature count");
  const Matrix xs = s.Apply(data.features);
  const Eigen::Index n = xs.rows();
  const Eigen::Index p = xs.cols();
  const double root2 = std::sqrt(2.0);
  Matrix z(n, p + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = xs.row(i).norm();
    const double shrink = norm > config.row_clip ? config.row_clip / norm : 1.0;
    z.row(i).head(p) = xs.row(i) * (shrink / (config.row_clip * root2));
    z(i, p) = 1.0 / root2;
  }
  const double lambda = 1.0 / config.C;
  const Vector clean = FitL2(z, data.labels, lambda, config.max_iter);
  const double sensitivity = 2.0 / (static_cast<double>(n) * lambda);

  Vector noisy = clean;
  double noise_norm = 0.0;
  if (std::isfinite(config.epsilon)) {
    Rng rng(DeriveSeed(seed, {kNoiseTag}));
    const auto b = SampleL2Laplace(static_cast<std::size_t>(p + 1),
                                   sensitivity / config.epsilon, rng);
    for (Eigen::Index k = 0; k <= p; ++k) noisy(k) += b[static_cast<std::size_t>(k)];
    noise_norm = AsEigen(b).norm();
  }

  // logit = theta_w . x~ / (D sqrt 2) + theta_b / sqrt 2 on standardized x~.
  predictors::LinearParams standardized;
  standardized.w = noisy.head(p) / (config.row_clip * root2);
  standardized.b = noisy(p) / root2;
  const predictors::LinearParams raw = predictors::RescaleToRaw(standardized, s);

  if (report) {
    report->epsilon = config.epsilon;
    report->sensitivity = sensitivity;
    report->noise_norm = noise_norm;
    report->clean.assign(clean.data(), clean.data() + clean.size());
    report->noisy.assign(noisy.data(), noisy.data() + noisy.size());
  }
  predictors::LrHyper hyper;
  hyper.l1_ratio = 0.0;
  hyper.C = config.C;
  hyper.balanced = false;
  hyper.max_iter = config.max_iter;
  std::vector<double> params(raw.w.data(), raw.w.data() + raw.w.size());
  params.push_back(raw.b);
  return predictors::LogisticModel::FromParameters(params, hyper, s);
}

}  // namespace ttshield::defenses
