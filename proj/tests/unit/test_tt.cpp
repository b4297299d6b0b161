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

#include <Eigen/SVD>

#include "common/error.hpp"
#include "oracles.hpp"
#include "tt/tensor_train.hpp"
#include "tt/tt_io.hpp"

namespace ttshield::tt {
namespace {

using testing::BruteEntry;
using testing::BruteEvaluate;
using testing::BrutePartition;
using testing::ForEachIndex;

// N sites with d = 2, random ranks in 1..4 and an optional output site.
TensorTrain RandomSmall(Rng& rng, std::size_t n, bool with_output) {
  std::vector<std::size_t> dims(n, 2), ranks(n - 1);
  for (auto& r : ranks) r = 1 + rng() % 4;
  std::optional<std::size_t> out;
  if (with_output) out = rng() % n;
  return RandomTensorTrain(dims, ranks, out, rng);
}

std::vector<double> RandomInput(Rng& rng, std::size_t n) {
  std::vector<double> x(n);
  for (double& v : x) v = 2.0 * Uniform01(rng) - 1.0;
  return x;
}

double Rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

TEST(TensorTrain, ParameterCountsOfReferenceShapes) {
  Rng rng(1);
  std::vector<std::size_t> dims(22, 2);
  std::vector<std::size_t> r2(21, 2), r5(21, 5);
  EXPECT_EQ(RandomTensorTrain(dims, r2, 21, rng).parameter_count(), 168u);
  EXPECT_EQ(RandomTensorTrain(dims, r5, 21, rng).parameter_count(), 1020u);
}

TEST(TensorTrain, RejectsBadBoundaries) {
  std::vector<Core> cores{Core(2, 2, 1)};
  EXPECT_THROW(TensorTrain(cores, std::nullopt), Error);
}

TEST(TensorTrain, EntryMatchesBruteForce) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = RandomSmall(rng, 2 + rng() % 6, false);
    ForEachIndex(t, [&](const std::vector<std::size_t>& idx) {
      EXPECT_NEAR(EvaluateIndex(t, idx), BruteEntry(t, idx), 1e-12);
    });
  }
}

TEST(TensorTrain, PartitionMatchesEnumeration) {
  Rng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = RandomSmall(rng, 1 + rng() % 10, trial % 2 == 0);
    EXPECT_LE(Rel(Partition(t), BrutePartition(t)), 1e-10) << "trial " << trial;
  }
}

TEST(TensorTrain, MarginalMatchesEnumeration) {
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 8;
    const auto t = RandomSmall(rng, n, trial % 2 == 1);
    std::vector<std::size_t> keep;
    for (std::size_t s = 0; s < n; ++s)
      if (rng() % 2) keep.push_back(s);
    if (keep.empty()) keep.push_back(rng() % n);
    const auto table = Marginal(t, keep);
    std::vector<double> brute(table.values.size(), 0.0);
    ForEachIndex(t, [&](const std::vector<std::size_t>& idx) {
      std::size_t flat = 0;
      for (std::size_t k = 0; k < keep.size(); ++k) flat = flat * 2 + idx[keep[k]];
      const double e = BruteEntry(t, idx);
      brute[flat] += e * e;
    });
    double sum = 0.0;
    for (std::size_t k = 0; k < brute.size(); ++k) {
      EXPECT_LE(Rel(table.values[k], brute[k]), 1e-10) << "trial " << trial << " entry " << k;
      sum += table.values[k];
    }
    EXPECT_LE(Rel(sum, Partition(t)), 1e-10);
  }
}

TEST(TensorTrain, MarginalRejectsDuplicateSites) {
  Rng rng(5);
  const auto t = RandomSmall(rng, 4, false);
  const std::vector<std::size_t> keep{1, 1};
  EXPECT_THROW(Marginal(t, keep), Error);
}

TEST(TensorTrain, EvaluateAndClassifyMatchExpansion) {
  Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 8;
    const auto t = RandomSmall(rng, n, true);
    const auto x = RandomInput(rng, n - 1);
    const double f0 = BruteEvaluate(t, x, 0);
    const double f1 = BruteEvaluate(t, x, 1);
    EXPECT_LE(Rel(Evaluate(t, x, 0), f0), 1e-10);
    EXPECT_LE(Rel(Evaluate(t, x, 1), f1), 1e-10);
    EXPECT_LE(Rel(Classify(t, x), f1 * f1 / (f0 * f0 + f1 * f1)), 1e-10);
  }
}

TEST(TensorTrain, ClassifyNeedsOutputSite) {
  Rng rng(7);
  const auto t = RandomSmall(rng, 3, false);
  const std::vector<double> x{0.1, 0.2, 0.3};
  EXPECT_THROW(Classify(t, x), Error);
}

TEST(TensorTrain, ConditioningMatchesSubstitution) {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    const auto t = RandomSmall(rng, n, true);
    const auto x = RandomInput(rng, n - 1);
    const auto inputs = t.input_sites();
    const std::size_t j = rng() % inputs.size();
    const auto c = ConditionValue(t, inputs[j], x[j]);
    std::vector<double> rest = x;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
    EXPECT_NEAR(Classify(c, rest), Classify(t, x), 1e-12);
  }
}

TEST(TensorTrain, ConditioningEveryInputGivesTheOutputPair) {
  Rng rng(9);
  const auto t = RandomSmall(rng, 6, true);
  const auto x = RandomInput(rng, 5);
  TensorTrain c = t;
  for (std::size_t j = 0; j < x.size(); ++j) c = ConditionValue(c, c.input_sites().front(), x[j]);
  ASSERT_EQ(c.size(), 1u);
  const std::vector<double> none;
  EXPECT_NEAR(Evaluate(c, none, 0), Evaluate(t, x, 0), 1e-12 * (1 + std::abs(Evaluate(t, x, 0))));
  EXPECT_NEAR(Evaluate(c, none, 1), Evaluate(t, x, 1), 1e-12 * (1 + std::abs(Evaluate(t, x, 1))));
}

TEST(TensorTrain, ConditioningOutputSiteIsRejected) {
  Rng rng(10);
  const auto t = RandomSmall(rng, 4, true);
  EXPECT_THROW(ConditionValue(t, *t.output_site(), 0.5), Error);
}

TEST(Gauge, IdentityLeavesCoresBitwiseUnchanged) {
  Rng rng(11);
  const auto t = RandomSmall(rng, 6, true);
  std::vector<Matrix> bonds;
  for (std::size_t n = 0; n + 1 < t.size(); ++n)
    bonds.push_back(Matrix::Identity(static_cast<Eigen::Index>(t.core(n).right),
                                     static_cast<Eigen::Index>(t.core(n).right)));
  EXPECT_EQ(GaugeTransform(t, bonds).Flatten(), t.Flatten());
}

TEST(Gauge, DrawsAreWellConditioned) {
  Rng rng(12);
  for (int k = 0; k < 200; ++k) {
    const Matrix m = DrawGaugeMatrix(1 + k % 5, rng);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto s = svd.singularValues();
    EXPECT_LT(s(0) / s(s.size() - 1), 100.0);
  }
}

TEST(Gauge, RandomizationPreservesEvaluationsAndMovesParameters) {
  Rng rng(13);
  std::vector<std::size_t> dims(22, 2), ranks(21, 2);
  const auto t = RandomTensorTrain(dims, ranks, 21, rng);
  const auto base = t.Flatten();
  double norm = 0.0;
  for (double v : base) norm += v * v;
  norm = std::sqrt(norm);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = GaugeRandomize(t, seed);
    for (int k = 0; k < 50; ++k) {
      const auto x = RandomInput(rng, 21);
      for (std::size_t y = 0; y < 2; ++y) {
        const double a = Evaluate(t, x, y);
        EXPECT_LE(std::abs(Evaluate(g, x, y) - a), 1e-8 * (1 + std::abs(a)));
      }
    }
    const auto moved = g.Flatten();
    double dist = 0.0;
    for (std::size_t k = 0; k < base.size(); ++k) dist += (moved[k] - base[k]) * (moved[k] - base[k]);
    EXPECT_GE(std::sqrt(dist), 0.01 * norm);
  }
}

TEST(Gauge, RankOneIsAScalarRescaling) {
  Rng rng(14);
  std::vector<std::size_t> dims(6, 2), ranks(5, 1);
  const auto t = RandomTensorTrain(dims, ranks, 5, rng);
  const auto g = GaugeRandomize(t, 3);
  for (int k = 0; k < 20; ++k) {
    const auto x = RandomInput(rng, 5);
    EXPECT_LE(Rel(Classify(g, x), Classify(t, x)), 1e-14);
  }
}

TEST(Rescale, SingleSiteExample) {
  Core c(1, 2, 1);
  c(0, 0, 0) = 0.0;
  c(0, 1, 0) = 1.0;
  const TensorTrain t({c}, std::nullopt);
  const auto r = Rescale(t, Standardizer({4.0}, {2.0}));
  EXPECT_DOUBLE_EQ(r.core(0)(0, 0, 0), -2.0);
  EXPECT_DOUBLE_EQ(r.core(0)(0, 1, 0), 0.5);
  EXPECT_EQ(r.input_scale(), InputScale::kRaw);
}

TEST(Rescale, IdentityStandardizerLeavesCores) {
  Rng rng(15);
  const auto t = RandomSmall(rng, 5, true);
  EXPECT_EQ(Rescale(t, Standardizer::Identity(4)).Flatten(), t.Flatten());
}

TEST(Rescale, RawPathEqualsStandardizedPath) {
  Rng rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = RandomSmall(rng, 8, true);
    std::vector<double> mu(7), sd(7);
    for (std::size_t j = 0; j < 7; ++j) {
      mu[j] = 10.0 * StandardNormal(rng);
      sd[j] = 0.2 + 5.0 * Uniform01(rng);
    }
    const Standardizer s(mu, sd);
    const auto raw = Rescale(t, s);
    for (int k = 0; k < 100; ++k) {
      std::vector<double> x(7);
      for (std::size_t j = 0; j < 7; ++j) x[j] = mu[j] + sd[j] * StandardNormal(rng);
      EXPECT_NEAR(Classify(raw, x), Classify(t, s.Apply(x)), 1e-12);
    }
    const auto back = Unscale(raw, s);
    const auto a = back.Flatten(), b = t.Flatten();
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-12 * (1 + std::abs(b[k])));
  }
}

TEST(Rescale, RejectsWrongScale) {
  Rng rng(17);
  const auto t = RandomSmall(rng, 4, true);
  const auto raw = Rescale(t, Standardizer::Identity(3));
  EXPECT_THROW(Rescale(raw, Standardizer::Identity(3)), Error);
  EXPECT_THROW(Rescale(t, Standardizer::Identity(2)), Error);
}

TEST(TtIo, RoundTripIsBitExact) {
  Rng rng(18);
  const auto t = Rescale(RandomSmall(rng, 7, true), Standardizer::Identity(6));
  const auto back = FromJsonString(ToJsonString(t));
  EXPECT_EQ(back.Flatten(), t.Flatten());
  EXPECT_EQ(back.output_site(), t.output_site());
  EXPECT_EQ(back.input_scale(), t.input_scale());
  EXPECT_EQ(back.ranks(), t.ranks());
}

TEST(TtIo, MalformedDocumentIsAParseError) {
  try {
    FromJsonString("{\"ranks\": [1, 2]}");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

}  // namespace
}  // namespace ttshield::tt
