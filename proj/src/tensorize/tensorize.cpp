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
#include "tensorize/tensorize.hpp"

#include "common/error.hpp"
#include "common/random.hpp"
#include "common/standardizer.hpp"

namespace ttshield::tensorize {
namespace {

constexpr std::uint64_t kPivotTag = 0x9170;
constexpr std::uint64_t kGaugeTag = 0x6a06;

}  // namespace

TensorizeResult TensorizeOracle(const Oracle& oracle, const Matrix& union_features,
                                const TensorizeConfig& config) {
  ValidateConfig(config);
  Require(static_cast<std::size_t>(union_features.cols()) == oracle.feature_count(),
          ErrorCode::kShape, "union width does not match the oracle");
  TensorizeResult result{
      tt::TensorTrain({tt::Core(1, 2, 1)}, 0), {}, {}};
  result.pivot_rows =
      SelectPivots(static_cast<std::size_t>(union_features.rows()), config.pivot_count,
                   DeriveSeed(config.seed, {kPivotTag}));

  SketchProblem problem;
  problem.standardizer = Standardizer::Fit(union_features);
  problem.points = LocalPoints(union_features, problem.standardizer);
  problem.pivots.resize(static_cast<Eigen::Index>(config.pivot_count), union_features.cols());
  for (std::size_t a = 0; a < result.pivot_rows.size(); ++a)
    problem.pivots.row(static_cast<Eigen::Index>(a)) =
        union_features.row(static_cast<Eigen::Index>(result.pivot_rows[a]));

  const tt::TensorTrain sketched = SketchBuild(BornAmplitudes(oracle), problem, config.rank,
                                               config.ridge, config.rank_tolerance,
                                               &result.stats);
  const tt::TensorTrain raw = tt::Rescale(PadRanks(sketched, config.rank), problem.standardizer);
  result.tt = tt::GaugeRandomize(raw, DeriveSeed(config.seed, {kGaugeTag}));
  return result;
}

TensorizeResult TensorizeModel(std::shared_ptr<const predictors::Scorer> target,
                               const Matrix& union_features, const TensorizeConfig& config) {
  Require(target != nullptr, ErrorCode::kArgument, "no target model");
  const Oracle oracle(std::move(target), config.access());
  return TensorizeOracle(oracle, union_features, config);
}

TtScorer::TtScorer(tt::TensorTrain tt) : tt_(std::move(tt)) {
  Require(tt_.output_site().has_value() && tt_.class_count() == 2, ErrorCode::kArgument,
          "TT scorer needs a binary output site");
  Require(tt_.input_scale() == tt::InputScale::kRaw, ErrorCode::kArgument,
          "TT scorer expects a raw-scale TT");
}

double TtScorer::Score(std::span<const double> x) const { return tt::Classify(tt_, x); }

}  // namespace ttshield::tensorize
