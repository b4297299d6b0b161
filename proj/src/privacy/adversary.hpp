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
#ifndef TTSHIELD_PRIVACY_ADVERSARY_HPP_
#define TTSHIELD_PRIVACY_ADVERSARY_HPP_

#include <cstdint>
#include <vector>

#include "common/dataset.hpp"
#include "common/standardizer.hpp"
#include "predictors/network.hpp"

namespace ttshield::privacy {

struct AdversaryOptions {
  std::vector<std::size_t> hidden{32, 16, 8};
  int epochs = 100;
  std::size_t batch_size = 32;
  double learning_rate = 1e-3;
};

// Multi-label membership classifier: ReLU MLP with one sigmoid output per
// cohort, trained on the summed per-output binary cross-entropies. Inputs are
// standardized with statistics of its own training set.
class Adversary {
 public:
  static Adversary Train(const Matrix& features, const Matrix& labels,
                         const AdversaryOptions& options, std::uint64_t seed);

  // Membership probabilities, one row per record and one column per cohort.
  Matrix Predict(const Matrix& features) const;
  std::size_t output_size() const { return network_.output_size(); }

 private:
  Adversary(Standardizer s, predictors::Network n)
      : standardizer_(std::move(s)), network_(std::move(n)) {}
  Standardizer standardizer_;
  predictors::Network network_;
};

// Thresholds probabilities at 0.5 (p >= 0.5 -> 1).
Matrix Threshold(const Matrix& probabilities);

// Fraction of agreeing entries of two equally shaped 0/1 matrices.
double HammingScore(const Matrix& predictions, const Matrix& labels);

}  // namespace ttshield::privacy

#endif  // TTSHIELD_PRIVACY_ADVERSARY_HPP_
