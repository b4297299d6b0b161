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
#ifndef TTSHIELD_TENSORIZE_SKETCH_HPP_
#define TTSHIELD_TENSORIZE_SKETCH_HPP_

#include <cstdint>
#include <vector>

#include "common/dataset.hpp"
#include "common/standardizer.hpp"
#include "tensorize/oracle.hpp"
#include "tt/tensor_train.hpp"

namespace ttshield::tensorize {

struct TensorizeConfig {
  std::size_t pivot_count = 50;
  std::size_t rank = 2;
  int bins = 2;  // 0 selects strong black-box (raw score) access
  std::uint64_t seed = 0;
  // Ridge factor relative to the largest diagonal entry of A^T A.
  double ridge = 1e-8;
  // Singular values below this fraction of the largest are dropped.
  double rank_tolerance = 1e-10;

  static TensorizeConfig ForLogistic() { return {}; }
  static TensorizeConfig ForMlp() { return {80, 5, 2, 0, 1e-8, 1e-10}; }
  AccessLevel access() const {
    return bins == 0 ? AccessLevel::Sbb() : AccessLevel::Wbb(bins);
  }
};

void ValidateConfig(const TensorizeConfig& config);

// Uniform sample without replacement of `count` row indices.
std::vector<std::size_t> SelectPivots(std::size_t population, std::size_t count,
                                      std::uint64_t seed);

// Inputs of a sketch. Pivot rows and local points are raw-scale; the
// standardizer fixes the coordinates the cores are fitted in.
struct SketchProblem {
  Matrix pivots;                              // P x p
  std::vector<std::array<double, 2>> points;  // two local points per feature
  Standardizer standardizer;
};

// Local points per feature: the raw values {0, 1} for binary columns, else
// mean -/+ sd of the standardizer.
std::vector<std::array<double, 2>> LocalPoints(const Matrix& data,
                                               const Standardizer& standardizer);

struct SketchStats {
  std::size_t queries = 0;
  std::vector<std::size_t> reduced_bonds;  // bonds whose rank fell below target
};

// Site-by-site sketched construction. Queries have the form (prefix of pivot
// a, local point, suffix of pivot b); each core solves a ridge least-squares
// system against the left interface of the previous sites and is truncated by
// SVD. Uses d P + (p - 2) d P^2 + d P queries for p features. The result has
// the output site last, input scale kStandardized and its actual (possibly
// reduced) ranks.
tt::TensorTrain SketchBuild(const AmplitudeFunction& amplitudes,
                            const SketchProblem& problem, std::size_t rank,
                            double ridge, double rank_tolerance,
                            SketchStats* stats = nullptr);

// Pads every bond with zero rows/columns up to `rank`; evaluations are unchanged.
tt::TensorTrain PadRanks(const tt::TensorTrain& tt, std::size_t rank);

// Upper bound d P^2 (N - 1) on the queries of one build.
std::size_t QueryBudget(std::size_t pivots, std::size_t features);

}  // namespace ttshield::tensorize

#endif  // TTSHIELD_TENSORIZE_SKETCH_HPP_
