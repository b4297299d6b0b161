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
#ifndef TTSHIELD_PREDICTORS_SCORER_HPP_
#define TTSHIELD_PREDICTORS_SCORER_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "common/dataset.hpp"

namespace ttshield::predictors {

// Anything that maps a raw feature vector to p(y = 1 | x).
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual double Score(std::span<const double> x) const = 0;
  virtual std::size_t feature_count() const = 0;

  std::vector<double> ScoreAll(const Matrix& rows) const {
    std::vector<double> out(static_cast<std::size_t>(rows.rows()));
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      out[static_cast<std::size_t>(i)] =
          Score({rows.data() + i * rows.cols(), static_cast<std::size_t>(rows.cols())});
    }
    return out;
  }
};

}  // namespace ttshield::predictors

#endif  // TTSHIELD_PREDICTORS_SCORER_HPP_
