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
#ifndef TTSHIELD_TT_TENSOR_TRAIN_HPP_
#define TTSHIELD_TT_TENSOR_TRAIN_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "common/dataset.hpp"
#include "common/random.hpp"
#include "common/standardizer.hpp"

namespace ttshield::tt {

enum class InputScale { kStandardized, kRaw };

// Local feature map phi(., x). kPoly1 is [1, x] (dimension 2).
enum class EmbeddingKind { kPoly1 };

// Order-3 core G(left, i, right), stored row-major.
struct Core {
  std::size_t left = 1;
  std::size_t dim = 1;
  std::size_t right = 1;
  std::vector<double> data;

  Core() = default;
  Core(std::size_t l, std::size_t d, std::size_t r)
      : left(l), dim(d), right(r), data(l * d * r, 0.0) {}

  double& operator()(std::size_t a, std::size_t i, std::size_t b) {
    return data[(a * dim + i) * right + b];
  }
  double operator()(std::size_t a, std::size_t i, std::size_t b) const {
    return data[(a * dim + i) * right + b];
  }

  // The left x right matrix G(:, i, :).
  Matrix Slice(std::size_t i) const;
  void SetSlice(std::size_t i, const Matrix& m);
};

// A chain of cores with boundary ranks 1. At most one site is the categorical
// output site (no embedding); every other site is an input site fed through
// the embedding. Values are immutable once constructed.
class TensorTrain {
 public:
  TensorTrain(std::vector<Core> cores, std::optional<std::size_t> output_site,
              InputScale input_scale = InputScale::kStandardized,
              EmbeddingKind embedding = EmbeddingKind::kPoly1);

  std::size_t size() const { return cores_.size(); }
  std::size_t input_count() const {
    return cores_.size() - (output_site_ ? 1 : 0);
  }
  const std::optional<std::size_t>& output_site() const { return output_site_; }
  InputScale input_scale() const { return input_scale_; }
  EmbeddingKind embedding() const { return embedding_; }

  const Core& core(std::size_t n) const { return cores_[n]; }
  const std::vector<Core>& cores() const { return cores_; }

  // Bond ranks r_0..r_N (N + 1 entries, first and last are 1).
  std::vector<std::size_t> ranks() const;
  std::vector<std::size_t> dims() const;
  // Site index of the j-th input feature.
  std::vector<std::size_t> input_sites() const;
  std::size_t class_count() const;

  std::vector<double> Flatten() const;
  std::size_t parameter_count() const;

 private:
  std::vector<Core> cores_;
  std::optional<std::size_t> output_site_;
  InputScale input_scale_;
  EmbeddingKind embedding_;
};

std::vector<double> Embed(EmbeddingKind kind, double x, std::size_t dim);

// Plain tensor entry T(i_1, ..., i_N).
double EvaluateIndex(const TensorTrain& tt, std::span<const std::size_t> index);

// f(x, y): embedded input sites, index y at the output site.
double Evaluate(const TensorTrain& tt, std::span<const double> x, std::size_t y);

// f(x, y) for every class y at once.
std::vector<double> EvaluateAll(const TensorTrain& tt, std::span<const double> x);

// Born-rule p(y = 1 | x), normalized over the output index only.
double Classify(const TensorTrain& tt, std::span<const double> x);

// Z = sum over all index strings of T(i)^2.
double Partition(const TensorTrain& tt);

// Unnormalized marginal over the kept sites (ascending order), row-major in
// the kept indices.
struct MarginalTable {
  std::vector<std::size_t> sites;
  std::vector<std::size_t> dims;
  std::vector<double> values;

  double at(std::span<const std::size_t> index) const;
};

MarginalTable Marginal(const TensorTrain& tt, std::span<const std::size_t> keep);

// Fixes one input site and absorbs it into a neighbour; the result has one
// fewer core and keeps the remaining input order.
TensorTrain ConditionVector(const TensorTrain& tt, std::size_t site,
                            std::span<const double> weights);
TensorTrain ConditionValue(const TensorTrain& tt, std::size_t site, double x);
TensorTrain ConditionIndex(const TensorTrain& tt, std::size_t site,
                           std::size_t index);

// G_n <- G_n M_n, G_{n+1} <- M_n^{-1} G_{n+1} for each internal bond n.
TensorTrain GaugeTransform(const TensorTrain& tt, std::span<const Matrix> bonds);

// Scales every core to the geometric mean of the core norms. The scale factors
// multiply to one, so the represented tensor is unchanged.
TensorTrain BalanceNorms(const TensorTrain& tt);

// Draws standard-normal bond matrices with condition number < 100, then
// balances core norms.
TensorTrain GaugeRandomize(const TensorTrain& tt, std::uint64_t seed);
Matrix DrawGaugeMatrix(std::size_t rank, Rng& rng);

// Folds a standardizer into the cores: the result consumes raw inputs.
TensorTrain Rescale(const TensorTrain& tt, const Standardizer& standardizer);
// Inverse of Rescale: the result consumes standardized inputs.
TensorTrain Unscale(const TensorTrain& tt, const Standardizer& standardizer);

// Random cores with i.i.d. normal entries; used by tests and benchmarks.
TensorTrain RandomTensorTrain(std::span<const std::size_t> dims,
                              std::span<const std::size_t> bond_ranks,
                              std::optional<std::size_t> output_site, Rng& rng);

}  // namespace ttshield::tt

#endif  // TTSHIELD_TT_TENSOR_TRAIN_HPP_
