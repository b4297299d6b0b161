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
#include <gtest/gtest.h>

#include <set>

#include "cohorts/generator.hpp"
#include "common/error.hpp"
#include "predictors/mechanism.hpp"
#include "predictors/metrics.hpp"
#include "tensorize/discretize.hpp"
#include "tensorize/tensorize.hpp"

namespace ttshield::tensorize {
namespace {

using predictors::ModelScorer;

Dataset Desk(std::uint64_t seed) {
  return cohorts::Pool(cohorts::GenerateCohorts(cohorts::Preset("desk"), seed));
}

std::size_t ExactQueries(std::size_t pivots, std::size_t features) {
  return 4 * pivots + 2 * pivots * pivots * (features - 2);
}

double Pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t k = 0; k < a.size(); ++k) ma += a[k] / n, mb += b[k] / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sab += (a[k] - ma) * (b[k] - mb);
    saa += (a[k] - ma) * (a[k] - ma);
    sbb += (b[k] - mb) * (b[k] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

TEST(Discretize, GridExamples) {
  EXPECT_EQ(Discretize(0.37, 2), 0.0);
  EXPECT_EQ(Discretize(0.81, 2), 1.0);
  EXPECT_EQ(Discretize(0.5, 2), 0.0);
  EXPECT_DOUBLE_EQ(Discretize(0.37, 6), 0.4);
  EXPECT_DOUBLE_EQ(Discretize(0.7, 10), 6.0 / 9.0);
  EXPECT_DOUBLE_EQ(Discretize(0.1, 6), 0.0);  // midpoint of [0, 0.2]
  EXPECT_EQ(Discretize(-0.2, 6), 0.0);
  EXPECT_EQ(Discretize(1.4, 6), 1.0);
  EXPECT_THROW(Discretize(0.3, 1), Error);
}

TEST(Discretize, OutputsLieOnTheGridAndAreNearest) {
  Rng rng(1);
  for (int b : {2, 3, 6, 10, 17}) {
    for (int k = 0; k < 2000; ++k) {
      const double s = Uniform01(rng);
      const double d = Discretize(s, b);
      const double step = 1.0 / (b - 1);
      EXPECT_NEAR(d / step, std::round(d / step), 1e-12);
      EXPECT_LE(std::abs(d - s), 0.5 * step + 1e-12);
    }
  }
}

TEST(Access, NamesRoundTrip) {
  for (const std::string n : {"wbb2", "wbb10", "sbb", "wb"})
    EXPECT_EQ(AccessLevel::Parse(n).Name(), n);
  EXPECT_THROW(AccessLevel::Parse("wbb1"), Error);
  EXPECT_THROW(AccessLevel::Parse("wbbx"), Error);
  EXPECT_THROW(AccessLevel::Parse("grey"), Error);
}

TEST(Pivots, DeterministicAndComplete) {
  EXPECT_EQ(SelectPivots(100, 20, 5), SelectPivots(100, 20, 5));
  auto all = SelectPivots(30, 30, 2);
  std::sort(all.begin(), all.end());
  for (std::size_t k = 0; k < 30; ++k) EXPECT_EQ(all[k], k);
  try {
    SelectPivots(30, 50, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kArgument);
  }
}

TEST(Pivots, InclusionFrequencyIsBinomial) {
  const std::size_t pop = 200, count = 50, draws = 100;
  std::vector<int> hits(pop, 0);
  for (std::uint64_t s = 0; s < draws; ++s)
    for (std::size_t i : SelectPivots(pop, count, 1000 + s)) ++hits[i];
  const double p = static_cast<double>(count) / pop;
  const double sigma = std::sqrt(draws * p * (1 - p));
  int outside = 0;
  for (int h : hits) outside += std::abs(h - draws * p) > 3 * sigma;
  // About 0.27% of samples fall outside 3 sigma by chance.
  EXPECT_LE(outside, 3);
}

TEST(Sketch, ConstantOracleCollapsesToItsGridPoint) {
  const Dataset d = Desk(2);
  const Oracle oracle([](std::span<const double>) { return 0.7; }, 21, AccessLevel::Wbb(10));
  TensorizeConfig cfg;
  cfg.bins = 10;
  const auto r = TensorizeOracle(oracle, d.features, cfg);
  EXPECT_FALSE(r.stats.reduced_bonds.empty());
  for (std::size_t i = 0; i < 100; ++i)
    EXPECT_NEAR(tt::Classify(r.tt, d.row(i)), 6.0 / 9.0, 1e-6);
}

TEST(Sketch, LinearAmplitudeIsExactAtRankTwo) {
  const Dataset d = Desk(3);
  Rng rng(4);
  std::vector<double> w(21);
  for (double& v : w) v = 0.1 * StandardNormal(rng);
  const double b0 = 0.3;
  const AmplitudeFunction f = [&](std::span<const double> x) -> std::array<double, 2> {
    double z = b0;
    for (std::size_t j = 0; j < x.size(); ++j) z += w[j] * x[j];
    return {1.0, z};
  };
  SketchProblem prob;
  prob.standardizer = Standardizer::Fit(d.features);
  prob.points = LocalPoints(d.features, prob.standardizer);
  const auto idx = SelectPivots(d.size(), 50, 1);
  prob.pivots = d.Subset(idx).features;
  const auto tt = tt::Rescale(SketchBuild(f, prob, 2, 1e-12, 1e-10), prob.standardizer);
  for (int k = 0; k < 1000; ++k) {
    const auto x = d.row(rng() % d.size());
    std::vector<double> y(x.begin(), x.end());
    for (std::size_t j = 0; j < 5; ++j) y[j] *= 0.5 + Uniform01(rng);  // off the pivots
    double z = b0;
    for (std::size_t j = 0; j < 21; ++j) z += w[j] * y[j];
    EXPECT_NEAR(tt::Evaluate(tt, y, 1), z, 1e-6);
    EXPECT_NEAR(tt::Evaluate(tt, y, 0), 1.0, 1e-6);
  }
}

TEST(Tensorize, LogisticShapeQueriesAndFidelity) {
  const Dataset d = Desk(5);
  Rng rng(5);
  const auto train_idx = predictors::StratifiedSplit(d.labels, 0.7, rng);
  std::vector<bool> in(d.size(), false);
  for (std::size_t i : train_idx) in[i] = true;
  std::vector<std::size_t> test_idx;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!in[i]) test_idx.push_back(i);
  const Dataset train = d.Subset(train_idx), test = d.Subset(test_idx);

  auto model = std::make_shared<ModelScorer>(predictors::TrainLogistic(train, {}, 1));
  const auto cfg = TensorizeConfig::ForLogistic();
  const Oracle oracle(model, cfg.access());
  const auto r = TensorizeOracle(oracle, train.features, cfg);
  EXPECT_EQ(r.tt.size(), 22u);
  EXPECT_EQ(r.tt.parameter_count(), 168u);
  const auto ranks = r.tt.ranks();
  for (std::size_t k = 1; k + 1 < ranks.size(); ++k) EXPECT_EQ(ranks[k], 2u);
  EXPECT_EQ(r.stats.queries, ExactQueries(50, 21));
  EXPECT_EQ(r.stats.queries, 95200u);
  EXPECT_EQ(oracle.query_count(), r.stats.queries);
  EXPECT_LE(r.stats.queries, QueryBudget(50, 21));

  // Reproduces the discretized oracle on the pivots.
  double mae = 0.0;
  for (std::size_t a : r.pivot_rows)
    mae += std::abs(tt::Classify(r.tt, train.row(a)) - Discretize(model->Score(train.row(a)), 2));
  EXPECT_LE(mae / static_cast<double>(r.pivot_rows.size()), 0.5);

  const TtScorer tts(r.tt);
  const double lr_ba =
      predictors::YoudenBalancedAccuracy(model->ScoreAll(test.features), test.labels);
  const double tt_ba =
      predictors::YoudenBalancedAccuracy(tts.ScoreAll(test.features), test.labels);
  EXPECT_GE(tt_ba, lr_ba - 0.05) << "LR " << lr_ba << " TT " << tt_ba;
}

TEST(Tensorize, MlpShapeAndQueryCount) {
  const Dataset d = Desk(6);
  auto model = std::make_shared<ModelScorer>(
      predictors::TrainMlp(d, predictors::MlpHyper{{19, 19}, 5, 32, 1e-3, 1e-5}, 2));
  const auto r = TensorizeModel(model, d.features, TensorizeConfig::ForMlp());
  EXPECT_EQ(r.tt.parameter_count(), 1020u);
  EXPECT_EQ(r.stats.queries, 243520u);
}

TEST(Tensorize, FidelityDoesNotDecreaseWithBins) {
  const Dataset d = Desk(7);
  auto model = std::make_shared<ModelScorer>(predictors::TrainLogistic(d, {}, 1));
  const auto raw = model->ScoreAll(d.features);
  std::vector<double> mean_err;
  for (int b : {2, 6, 10}) {
    double total = 0.0;
    for (std::uint64_t run = 0; run < 20; ++run) {
      TensorizeConfig cfg;
      cfg.bins = b;
      cfg.seed = run;
      const TtScorer tts(TensorizeModel(model, d.features, cfg).tt);
      const auto s = tts.ScoreAll(d.features);
      double err = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) err += std::abs(s[i] - raw[i]);
      total += err / static_cast<double>(s.size());
    }
    mean_err.push_back(total / 20.0);
  }
  EXPECT_GE(mean_err[0], mean_err[1]);
  EXPECT_GE(mean_err[1], mean_err[2]);
}

TEST(Tensorize, OracleOutputsCollapseToBins) {
  const Dataset d = Desk(8);
  auto model = std::make_shared<ModelScorer>(predictors::TrainLogistic(d, {}, 1));
  for (int b : {2, 6}) {
    const Oracle oracle(model, AccessLevel::Wbb(b));
    std::set<double> seen;
    std::mutex mu;
    const AmplitudeFunction f = [&](std::span<const double> x) -> std::array<double, 2> {
      const double s = oracle.Query(x);
      {
        std::lock_guard<std::mutex> lock(mu);
        seen.insert(s);
      }
      return {std::sqrt(1 - s), std::sqrt(s)};
    };
    SketchProblem prob;
    prob.standardizer = Standardizer::Fit(d.features);
    prob.points = LocalPoints(d.features, prob.standardizer);
    prob.pivots = d.Subset(SelectPivots(d.size(), 20, 3)).features;
    SketchBuild(f, prob, 2, 1e-8, 1e-10);
    EXPECT_LE(seen.size(), static_cast<std::size_t>(b));
  }
}

TEST(Tensorize, GaugeSeedsGiveEqualPredictionsAndUncorrelatedCores) {
  const Dataset d = Desk(9);
  auto model = std::make_shared<ModelScorer>(predictors::TrainLogistic(d, {}, 1));
  TensorizeConfig cfg;
  const auto base = TensorizeModel(model, d.features, cfg).tt;
  const auto a = tt::GaugeRandomize(base, 1), b = tt::GaugeRandomize(base, 2);
  for (std::size_t i = 0; i < 200; ++i)
    EXPECT_NEAR(tt::Classify(a, d.row(i)), tt::Classify(base, d.row(i)), 1e-8);
  double sum = 0.0;
  for (std::uint64_t k = 0; k < 100; ++k)
    sum += std::abs(Pearson(tt::GaugeRandomize(base, 10 + 2 * k).Flatten(),
                            tt::GaugeRandomize(base, 11 + 2 * k).Flatten()));
  EXPECT_LT(sum / 100.0, 0.2);
  EXPECT_NE(a.Flatten(), b.Flatten());
}

TEST(Tensorize, PadRanksKeepsValues) {
  Rng rng(10);
  std::vector<std::size_t> dims(6, 2), bonds{1, 2, 1, 2, 1};
  const auto t = tt::RandomTensorTrain(dims, bonds, 5, rng);
  const auto p = PadRanks(t, 3);
  const auto ranks = p.ranks();
  for (std::size_t k = 1; k + 1 < ranks.size(); ++k) EXPECT_EQ(ranks[k], 3u);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> x(5);
    for (double& v : x) v = StandardNormal(rng);
    EXPECT_EQ(tt::Evaluate(p, x, 1), tt::Evaluate(t, x, 1));
  }
}

TEST(Tensorize, ConfigValidation) {
  TensorizeConfig cfg;
  cfg.bins = 1;
  EXPECT_THROW(ValidateConfig(cfg), Error);
  cfg = TensorizeConfig{};
  cfg.pivot_count = 1;
  EXPECT_THROW(ValidateConfig(cfg), Error);
}

}  // namespace
}  // namespace ttshield::tensorize
