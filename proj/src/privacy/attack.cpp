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
#include "privacy/attack.hpp"

#include <cmath>
#include <optional>

#include "common/error.hpp"
#include "common/parallel.hpp"
#include "common/random.hpp"

namespace ttshield::privacy {
namespace {

constexpr std::uint64_t kPartitionTag = 0xf01d;
constexpr std::uint64_t kAdversaryTag = 0xad5e;

std::vector<int> FoldAssignment(std::size_t n, int folds, std::uint64_t seed) {
  Rng rng(seed);
  const auto order = Permutation(n, rng);
  std::vector<int> fold(n);
  for (std::size_t k = 0; k < n; ++k) fold[order[k]] = static_cast<int>(k % folds);
  return fold;
}

Matrix Rows(const Matrix& m, const std::vector<std::size_t>& rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t k = 0; k < rows.size(); ++k)
    out.row(static_cast<Eigen::Index>(k)) = m.row(static_cast<Eigen::Index>(rows[k]));
  return out;
}

void MeanStd(const std::vector<double>& v, double& mean, double& sd) {
  mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(v.size()));
}

void CheckCorpus(const AttackCorpus& corpus, int folds) {
  Require(folds >= 2, ErrorCode::kArgument, "attack needs at least two folds");
  Require(corpus.records.size() >= static_cast<std::size_t>(folds), ErrorCode::kArgument,
          "corpus has fewer records than folds");
  Require(corpus.cohort_count >= 1 && corpus.feature_count() >= 1, ErrorCode::kArgument,
          "corpus has no labels or features");
}

}  // namespace

AttackResult RunAttack(const AttackCorpus& corpus, const AttackOptions& options) {
  CheckCorpus(corpus, options.folds);
  Require(options.repeats >= 1, ErrorCode::kArgument, "repeats must be >= 1");
  const Matrix x = corpus.FeatureMatrix();
  const Matrix y = corpus.LabelMatrix();
  const std::size_t n = corpus.records.size();
  const std::size_t m = corpus.cohort_count;

  AttackResult result;
  result.degenerate_label.assign(m, false);
  for (std::size_t l = 0; l < m; ++l) {
    const auto col = y.col(static_cast<Eigen::Index>(l));
    result.degenerate_label[l] = (col.array() == col(0)).all();
  }

  const std::size_t repeats = static_cast<std::size_t>(options.repeats);
  const std::size_t folds = static_cast<std::size_t>(options.folds);
  std::vector<std::vector<int>> assignment(repeats);
  for (std::size_t r = 0; r < repeats; ++r)
    assignment[r] = FoldAssignment(n, options.folds, DeriveSeed(options.seed, {kPartitionTag, r}));

  std::vector<Matrix> oof(repeats, Matrix::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(m)));
  ParallelFor(repeats * folds, [&](std::size_t job) {
    const std::size_t r = job / folds;
    const int f = static_cast<int>(job % folds);
    std::vector<std::size_t> train, test;
    for (std::size_t i = 0; i < n; ++i) (assignment[r][i] == f ? test : train).push_back(i);
    if (test.empty()) return;
    const Adversary adv =
        Adversary::Train(Rows(x, train), Rows(y, train), options.adversary,
                         DeriveSeed(options.seed, {kAdversaryTag, r, static_cast<std::uint64_t>(f)}));
    const Matrix p = adv.Predict(Rows(x, test));
    for (std::size_t k = 0; k < test.size(); ++k)
      oof[r].row(static_cast<Eigen::Index>(test[k])) = p.row(static_cast<Eigen::Index>(k));
  });

  std::vector<std::vector<double>> label_scores(m);
  for (std::size_t r = 0; r < repeats; ++r) {
    Matrix pred = Threshold(oof[r]);
    for (std::size_t l = 0; l < m; ++l)
      if (result.degenerate_label[l]) pred.col(static_cast<Eigen::Index>(l)) = y.col(static_cast<Eigen::Index>(l));
    result.repeat_scores.push_back(HammingScore(pred, y));
    for (std::size_t l = 0; l < m; ++l)
      label_scores[l].push_back(HammingScore(pred.col(static_cast<Eigen::Index>(l)),
                                             y.col(static_cast<Eigen::Index>(l))));
  }
  MeanStd(result.repeat_scores, result.mean, result.std);
  result.label_mean.resize(m);
  result.label_std.resize(m);
  for (std::size_t l = 0; l < m; ++l) MeanStd(label_scores[l], result.label_mean[l], result.label_std[l]);
  return result;
}

AttackCorpus ShuffleLabels(const AttackCorpus& corpus, std::uint64_t seed) {
  AttackCorpus out = corpus;
  Rng rng(seed);
  const auto order = Permutation(corpus.records.size(), rng);
  for (std::size_t i = 0; i < order.size(); ++i)
    out.records[i].label = corpus.records[order[i]].label;
  return out;
}

AttackEnsemble AttackEnsemble::Train(const AttackCorpus& corpus, const AttackOptions& options) {
  CheckCorpus(corpus, options.folds);
  const Matrix x = corpus.FeatureMatrix();
  const Matrix y = corpus.LabelMatrix();
  const std::size_t n = corpus.records.size();
  const std::size_t folds = static_cast<std::size_t>(options.folds);
  const auto assignment = FoldAssignment(n, options.folds, DeriveSeed(options.seed, {kPartitionTag, 0}));
  std::vector<std::optional<Adversary>> members(folds);
  ParallelFor(folds, [&](std::size_t f) {
    std::vector<std::size_t> train;
    for (std::size_t i = 0; i < n; ++i)
      if (assignment[i] != static_cast<int>(f)) train.push_back(i);
    members[f] = Adversary::Train(Rows(x, train), Rows(y, train), options.adversary,
                                  DeriveSeed(options.seed, {kAdversaryTag, 0, f}));
  });
  AttackEnsemble e;
  for (auto& a : members) e.members_.push_back(std::move(*a));
  return e;
}

Matrix AttackEnsemble::Predict(const Matrix& features) const {
  Matrix sum = members_.front().Predict(features);
  for (std::size_t k = 1; k < members_.size(); ++k) sum += members_[k].Predict(features);
  return sum / static_cast<double>(members_.size());
}

std::vector<double> AttackEnsemble::Predict(std::span<const double> features) const {
  Matrix row = AsEigen(features).transpose();
  const Matrix p = Predict(row);
  return std::vector<double>(p.data(), p.data() + p.size());
}

}  // namespace ttshield::privacy
