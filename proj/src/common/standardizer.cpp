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
#include "common/standardizer.hpp"

#include <cmath>
#include <string>

#include "common/error.hpp"

namespace ttshield {

Standardizer::Standardizer(std::vector<double> mean, std::vector<double> sd)
    : mean_(std::move(mean)), sd_(std::move(sd)) {
  Require(mean_.size() == sd_.size(), ErrorCode::kShape,
          "standardizer mean/sd length mismatch");
  for (std::size_t j = 0; j < sd_.size(); ++j) {
    Require(std::isfinite(mean_[j]) && std::isfinite(sd_[j]) && sd_[j] > 0.0,
            ErrorCode::kValidation,
            "standardizer sd must be finite and positive (feature " +
                std::to_string(j) + ")");
  }
}

Standardizer Standardizer::Fit(const Matrix& features) {
  const auto n = features.rows();
  const auto p = features.cols();
  Require(n > 0, ErrorCode::kArgument, "cannot fit standardizer on empty data");
  std::vector<double> mean(static_cast<std::size_t>(p));
  std::vector<double> sd(static_cast<std::size_t>(p));
  for (Eigen::Index j = 0; j < p; ++j) {
    const double m = features.col(j).mean();
    const double var = (features.col(j).array() - m).square().sum() /
                       static_cast<double>(n);
    const double s = std::sqrt(var);
    mean[static_cast<std::size_t>(j)] = m;
    // Scale-aware zero test so constant columns with round-off map to sd = 1.
    sd[static_cast<std::size_t>(j)] = s > 1e-12 * (1.0 + std::abs(m)) ? s : 1.0;
  }
  return Standardizer(std::move(mean), std::move(sd));
}

Standardizer Standardizer::Identity(std::size_t feature_count) {
  return Standardizer(std::vector<double>(feature_count, 0.0),
                      std::vector<double>(feature_count, 1.0));
}

std::vector<double> Standardizer::Apply(std::span<const double> raw) const {
  Require(raw.size() == mean_.size(), ErrorCode::kShape,
          "standardizer input length mismatch");
  std::vector<double> out(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j) out[j] = (raw[j] - mean_[j]) / sd_[j];
  return out;
}

Matrix Standardizer::Apply(const Matrix& raw) const {
  Require(static_cast<std::size_t>(raw.cols()) == mean_.size(), ErrorCode::kShape,
          "standardizer input width mismatch");
  Matrix out(raw.rows(), raw.cols());
  for (Eigen::Index j = 0; j < raw.cols(); ++j) {
    const auto k = static_cast<std::size_t>(j);
    out.col(j) = (raw.col(j).array() - mean_[k]) / sd_[k];
  }
  return out;
}

std::vector<double> Standardizer::Invert(std::span<const double> standardized) const {
  Require(standardized.size() == mean_.size(), ErrorCode::kShape,
          "standardizer input length mismatch");
  std::vector<double> out(standardized.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = standardized[j] * sd_[j] + mean_[j];
  return out;
}

}  // namespace ttshield
