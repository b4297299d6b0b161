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
#ifndef TTSHIELD_COMMON_STANDARDIZER_HPP_
#define TTSHIELD_COMMON_STANDARDIZER_HPP_

#include <span>
#include <vector>

#include "common/dataset.hpp"

namespace ttshield {

// Per-feature affine map x -> (x - mean) / sd. Every sd is strictly positive:
// a zero-variance column is stored with sd = 1 and its mean unchanged.
class Standardizer {
 public:
  Standardizer() = default;
  Standardizer(std::vector<double> mean, std::vector<double> sd);

  static Standardizer Fit(const Matrix& features);
  static Standardizer Identity(std::size_t feature_count);

  std::size_t size() const { return mean_.size(); }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& sd() const { return sd_; }

  std::vector<double> Apply(std::span<const double> raw) const;
  Matrix Apply(const Matrix& raw) const;
  std::vector<double> Invert(std::span<const double> standardized) const;

 private:
  std::vector<double> mean_;
  std::vector<double> sd_;
};

}  // namespace ttshield

#endif  // TTSHIELD_COMMON_STANDARDIZER_HPP_
