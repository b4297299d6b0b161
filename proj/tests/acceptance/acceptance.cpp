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
// Acceptance run: checks criteria 1-8 at desk scale and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "cohorts/generator.hpp"
#include "common/error.hpp"
#include "common/log.hpp"
#include "common/random.hpp"
#include "harness/artifacts.hpp"
#include "harness/config.hpp"
#include "harness/experiment.hpp"
#include "harness/report.hpp"
#include "harness/serve.hpp"
#include "interpret/monotonicity.hpp"
#include "interpret/sensitivity.hpp"
#include "predictors/logistic.hpp"
#include "predictors/model.hpp"
#include "privacy/access.hpp"
#include "privacy/attack.hpp"
#include "privacy/recovery.hpp"
#include "tensorize/tensorize.hpp"
#include "tt/tensor_train.hpp"

namespace ttshield {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void Check(bool ok, const char* fmt, auto... args) {
    char line[512];
    std::snprintf(line, sizeof(line), fmt, args...);
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
    pass = pass && ok;
  }
};

int failures = 0;

void Report(int criterion, const std::string& title, const Verdict& v, double seconds) {
  for (const auto& n : v.notes) std::printf("    %s\n", n.c_str());
  std::printf("criterion %d: %s  %s (%.1f s)\n", criterion, v.pass ? "PASS" : "FAIL",
              title.c_str(), seconds);
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

double Rel(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// A plausible raw patient: continuous features around the frame's means,
// PSTH in {0, 1} and exactly one cancer type.
std::vector<double> RandomPatient(Rng& rng, const Standardizer& frame) {
  std::vector<double> x(cohorts::kFeatureCount, 0.0);
  for (std::size_t j = 0; j < cohorts::kContinuousBlock; ++j)
    x[j] = frame.mean()[j] + frame.sd()[j] * StandardNormal(rng);
  x[cohorts::kPsth] = Uniform01(rng) < 0.5 ? 0.0 : 1.0;
  x[cohorts::CancerTypeFeature(1 + static_cast<int>(rng() % cohorts::kCancerTypes))] = 1.0;
  return x;
}

// Spearman correlation: Pearson correlation of average ranks.
double Spearman(std::span<const double> a, std::span<const double> b) {
  auto ranks = [](std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < order.size();) {
      std::size_t k = i;
      while (k + 1 < order.size() && v[order[k + 1]] == v[order[i]]) ++k;
      for (std::size_t m = i; m <= k; ++m) r[order[m]] = 0.5 * static_cast<double>(i + k) + 1.0;
      i = k + 1;
    }
    return r;
  };
  return interpret::Pearson(ranks(a), ranks(b));
}

// Shared state: the desk-scale config, its cohorts and the TT-MLP (b = 2)
// white-box corpus used by criteria 2 and 6.
struct Shared {
  harness::ExperimentConfig config;
  std::vector<cohorts::Cohort> cohorts;
  Dataset pool;
  std::optional<harness::RowOutcome> tt_mlp;
  double tt_mlp_shuffled = 0.0;

  Shared() {
    config.out = (fs::temp_directory_path() / "ttshield-acceptance").string();
    cohorts = config.LoadCohorts();
    pool = cohorts::Pool(cohorts);
  }

  harness::ExperimentConfig WhiteBoxOnly() const {
    auto c = config;
    c.access = {"wb"};
    return c;
  }

  const harness::RowOutcome& TtMlp() {
    if (!tt_mlp) {
      const auto c = WhiteBoxOnly();
      tt_mlp = harness::RunAttackRow(harness::RowSpec::Parse("tt-mlp/b=2"), c, cohorts);
      const std::uint64_t seed = harness::SubSeed(c, "shuffled-baseline");
      tt_mlp_shuffled = harness::ShuffledBaseline(tt_mlp->corpora.front(),
                                                  harness::AttackOptionsFor(c, seed), 5, seed);
    }
    return *tt_mlp;
  }
};

void Criterion1() {
  const auto start = Clock::now();
  Verdict v;
  Rng rng(101);
  double worst_z = 0.0, worst_m = 0.0, worst_c = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 9;  // N <= 10
    std::vector<std::size_t> dims(n, 2), bonds(n - 1);
    for (auto& r : bonds) r = 1 + rng() % 4;
    const std::size_t out = rng() % n;
    const auto t = tt::RandomTensorTrain(dims, bonds, out, rng);

    worst_z = std::max(worst_z, Rel(tt::Partition(t), testing::BrutePartition(t)));

    std::vector<std::size_t> keep;
    for (std::size_t s = 0; s < n; ++s)
      if (rng() % 2) keep.push_back(s);
    if (keep.empty()) keep.push_back(rng() % n);
    const auto table = tt::Marginal(t, keep);
    std::vector<double> brute(table.values.size(), 0.0);
    testing::ForEachIndex(t, [&](const std::vector<std::size_t>& idx) {
      std::size_t flat = 0;
      for (std::size_t s : keep) flat = flat * 2 + idx[s];
      const double e = testing::BruteEntry(t, idx);
      brute[flat] += e * e;
    });
    for (std::size_t k = 0; k < brute.size(); ++k)
      worst_m = std::max(worst_m, Rel(table.values[k], brute[k]));

    std::vector<double> x(n - 1);
    for (double& e : x) e = 2.0 * Uniform01(rng) - 1.0;
    const double f0 = testing::BruteEvaluate(t, x, 0), f1 = testing::BruteEvaluate(t, x, 1);
    worst_c = std::max(worst_c, Rel(tt::Classify(t, x), f1 * f1 / (f0 * f0 + f1 * f1)));
  }
  const double secs = Seconds(start);
  v.Check(worst_z <= 1e-10, "partition max rel err %.2e <= 1e-10", worst_z);
  v.Check(worst_m <= 1e-10, "marginal max rel err %.2e <= 1e-10", worst_m);
  v.Check(worst_c <= 1e-10, "classify max rel err %.2e <= 1e-10", worst_c);
  v.Check(secs < 60.0, "runtime %.1f s < 60 s", secs);
  Report(1, "TT algebra vs exhaustive enumeration (200 random TTs)", v, secs);
}

void Criterion2(Shared& shared) {
  const auto start = Clock::now();
  Verdict v;
  const auto& config = shared.config;
  const auto mlp = predictors::TrainModel(config.mlp_grid.front(), shared.pool,
                                          harness::SubSeed(config, "c2-model"));
  auto cfg = tensorize::TensorizeConfig::ForMlp();
  cfg.seed = harness::SubSeed(config, "c2-tt");
  const auto base =
      tensorize::TensorizeModel(std::make_shared<predictors::ModelScorer>(mlp), shared.pool.features, cfg)
          .tt;
  const auto frame = Standardizer::Fit(shared.pool.features);
  Rng rng(202);
  std::vector<std::vector<double>> inputs;
  std::vector<double> reference;
  for (int i = 0; i < 1000; ++i) {
    inputs.push_back(RandomPatient(rng, frame));
    reference.push_back(tt::Classify(base, inputs.back()));
  }
  const auto flat = base.Flatten();
  double norm = 0.0;
  for (double e : flat) norm += e * e;
  norm = std::sqrt(norm);
  double worst_diff = 0.0, min_dist = 1e300;
  for (int copy = 0; copy < 100; ++copy) {
    const auto g = tt::GaugeRandomize(base, DeriveSeed(303, {static_cast<std::uint64_t>(copy)}));
    for (std::size_t i = 0; i < inputs.size(); ++i)
      worst_diff = std::max(worst_diff, std::abs(tt::Classify(g, inputs[i]) - reference[i]));
    const auto gf = g.Flatten();
    double d = 0.0;
    for (std::size_t k = 0; k < gf.size(); ++k) d += (gf[k] - flat[k]) * (gf[k] - flat[k]);
    min_dist = std::min(min_dist, std::sqrt(d) / norm);
  }
  v.Check(worst_diff <= 1e-8, "max |p_gauge - p| over 100 copies x 1000 inputs %.2e <= 1e-8",
          worst_diff);
  v.Check(min_dist > 0.01, "min flattened-core distance %.3f of norm > 0.01", min_dist);

  const auto& row = shared.TtMlp();
  const double score = row.results.front().mean;
  v.Check(std::abs(score - shared.tt_mlp_shuffled) <= 0.05,
          "WB attack on gauge-randomized TT-MLPs %.3f vs shuffled-label baseline %.3f (|diff| <= 0.05)",
          score, shared.tt_mlp_shuffled);
  const double secs = Seconds(start);
  v.Check(secs < 600.0, "runtime %.1f s < 600 s", secs);
  Report(2, "gauge obfuscation", v, secs);
}

void Criterion3(Shared& shared) {
  const auto start = Clock::now();
  Verdict v;
  const auto& pool = shared.pool;
  const auto& hyper = std::get<predictors::LrHyper>(shared.config.lr_grid.front());
  const auto lr = predictors::TrainLogistic(pool, hyper, 31);
  const auto& frame = lr.standardizer;
  const auto fit = predictors::FitElasticNet(frame.Apply(pool.features), pool.labels, hyper, 31);

  auto cfg = tensorize::TensorizeConfig::ForLogistic();
  cfg.seed = 32;
  const auto raw_tt =
      tensorize::TensorizeModel(std::make_shared<predictors::ModelScorer>(lr), pool.features, cfg).tt;
  const auto std_tt = tt::Unscale(raw_tt, frame);

  Rng rng(303);
  double worst_lr = 0.0, worst_tt = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = RandomPatient(rng, frame);
    const auto xs = frame.Apply(x);
    const double z = AsEigen(xs).dot(fit.w) + fit.b;
    worst_lr = std::max(worst_lr, std::abs(lr.Predict(x) - 1.0 / (1.0 + std::exp(-z))));
    worst_tt = std::max(worst_tt, std::abs(tt::Classify(raw_tt, x) - tt::Classify(std_tt, xs)));
  }
  v.Check(worst_lr <= 1e-12, "LR raw vs standardized max |dp| %.2e <= 1e-12", worst_lr);
  v.Check(worst_tt <= 1e-12, "TT raw vs standardized max |dp| %.2e <= 1e-12", worst_tt);
  Report(3, "raw-scale vs standardized-scale predictions", v, Seconds(start));
}

privacy::RecoveryOptions RecoveryFor(const Dataset& pool) {
  privacy::RecoveryOptions o;
  o.candidates = pool.features.topRows(std::min<Eigen::Index>(200, pool.features.rows()));
  for (std::size_t j = 0; j < cohorts::kFeatureCount; ++j)
    o.binary.push_back(cohorts::IsBinaryFeature(j));
  o.one_hot = std::make_pair(cohorts::kFirstCancerType, cohorts::kCancerTypes);
  return o;
}

void Criterion4(Shared& shared) {
  const auto start = Clock::now();
  Verdict v;
  const auto& config = shared.config;
  const auto& pool = shared.pool;
  const auto& hyper = config.lr_grid.front();
  const auto lr = std::get<predictors::LogisticModel>(
      predictors::TrainModel(hyper, pool, harness::SubSeed(config, "c4-target")));
  auto truth = lr.Parameters();
  privacy::CanonicalizeOneHot(truth, cohorts::kFirstCancerType, cohorts::kCancerTypes);
  const auto options = RecoveryFor(pool);

  const auto exact = privacy::RecoverLrCoefficients(
      [&](std::span<const double> x) { return lr.Predict(x); }, cohorts::kFeatureCount, options);
  const double exact_err = privacy::RelativeError(exact.Parameters(), truth);
  v.Check(exact_err <= 1e-9, "exact SBB recovery relative error %.2e <= 1e-9", exact_err);

  {
    harness::PredictionServer server(std::make_shared<predictors::ModelScorer>(lr), 4);
    const int port = server.Bind("127.0.0.1", 0);
    server.Start();
    const harness::HttpScorer remote("127.0.0.1", port);
    const auto got = privacy::RecoverLrCoefficients(
        [&](std::span<const double> x) { return remote.Score(x); }, cohorts::kFeatureCount, options);
    const double err = privacy::RelativeError(got.Parameters(), truth);
    v.Check(err <= 1e-2, "recovery through the endpoint at 4 decimals: relative error %.2e <= 1e-2 "
            "(%zu requests)", err, server.request_count());
    server.Stop();
  }

  // White-box adversary trained on vanilla-LR shadow models.
  const auto wb = shared.WhiteBoxOnly();
  const auto outcome = harness::RunAttackRow(harness::RowSpec::Parse("lr/vanilla"), wb, shared.cohorts);
  const auto adversary = privacy::AttackEnsemble::Train(
      outcome.corpora.front(), harness::AttackOptionsFor(wb, harness::SubSeed(wb, "c4-adversary")));

  auto two_decimal = options;
  const auto calibration = privacy::SigmoidCalibration(-8.0, 8.0, 2001);
  two_decimal.to_logit = [calibration](double p) {
    return privacy::InvertMonotoneMap(calibration, p).score;
  };
  int hits = 0, recovered = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t member = static_cast<std::size_t>(trial) % shared.cohorts.size();
    const std::size_t g = static_cast<std::size_t>(trial / 3) % config.lr_grid.size();
    const auto target = predictors::TrainModel(
        config.lr_grid[g], shared.cohorts[member].data,
        DeriveSeed(harness::SubSeed(config, "c4-trial"), {static_cast<std::uint64_t>(trial)}));
    harness::PredictionServer server(std::make_shared<predictors::ModelScorer>(target), 2);
    const int port = server.Bind("127.0.0.1", 0);
    server.Start();
    const harness::HttpScorer remote("127.0.0.1", port);
    try {
      const auto got = privacy::RecoverLrCoefficients(
          [&](std::span<const double> x) { return remote.Score(x); }, cohorts::kFeatureCount,
          two_decimal);
      ++recovered;
      auto t = predictors::Parameters(target);
      privacy::CanonicalizeOneHot(t, cohorts::kFirstCancerType, cohorts::kCancerTypes);
      worst = std::max(worst, privacy::RelativeError(got.Parameters(), t));
      const auto membership = adversary.Predict(std::span<const double>(got.Parameters()));
      const auto top = static_cast<std::size_t>(
          std::max_element(membership.begin(), membership.end()) - membership.begin());
      if (top == member) ++hits;
    } catch (const Error& e) {
      LogWarning(std::string("trial recovery failed: ") + e.what());
    }
    server.Stop();
  }
  v.Check(hits >= 18, "2-decimal recovery + WB attack: true cohort ranked first in %d/20 trials "
          "(>= 18; %d recoveries, worst relative error %.3f)", hits, recovered, worst);
  Report(4, "LR coefficient recovery", v, Seconds(start));
}

// Criterion 5 and 8 share the full desk-scale attack command.
std::string AttackArtifacts(const harness::ExperimentConfig& config, const std::string& dir,
                            harness::ScoreTable* table) {
  auto c = config;
  c.out = dir;
  fs::remove_all(dir);
  const auto result = harness::CommandAttack(c);
  // Every score-table artifact (JSON, CSV, text), in name order.
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("scores-", 0) == 0) names.push_back(name);
  }
  std::sort(names.begin(), names.end());
  if (table) *table = harness::TableFromJson(result.summary.at("table"));
  std::string bytes;
  for (const auto& name : names) bytes += name + "\n" + harness::ReadTextFile(dir + "/" + name);
  return bytes;
}

std::string first_attack_bytes;

void Criterion5(Shared& shared) {
  const auto start = Clock::now();
  Verdict v;
  harness::ScoreTable table;
  first_attack_bytes = AttackArtifacts(shared.config, shared.config.out + "/run1", &table);
  std::printf("%s", harness::FormatTable(table).c_str());
  auto mean = [&](const std::string& row, const std::string& col) {
    const auto cell = table.Cell(row, col);
    return cell ? cell->mean : std::nan("");
  };
  const double van_wb = mean("lr/vanilla", "wb"), avg_wb = mean("lr/averaged", "wb");
  v.Check(avg_wb > van_wb, "(a) averaged-LR WB %.3f > vanilla-LR WB %.3f", avg_wb, van_wb);
  const char* chain[] = {"wbb2", "wbb6", "wbb10", "sbb"};
  bool ordered = true;
  std::string seq;
  for (int k = 0; k < 4; ++k) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%.4f", k ? " <= " : "", mean("lr/vanilla", chain[k]));
    seq += buf;
    if (k > 0) ordered = ordered && mean("lr/vanilla", chain[k - 1]) <= mean("lr/vanilla", chain[k]);
  }
  v.Check(ordered, "(b) vanilla-LR 2-WBB..SBB non-decreasing: %s", seq.c_str());
  std::string avg_seq;
  for (int k = 0; k < 4; ++k) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%.4f", k ? ", " : "", mean("lr/averaged", chain[k]));
    avg_seq += buf;
  }
  std::printf("    info averaged-LR 2-WBB..SBB: %s\n", avg_seq.c_str());
  v.Check(van_wb >= 0.70 - 0.07, "(c) vanilla-LR WB %.3f >= 0.70 - 0.07", van_wb);
  const double avg_sbb = mean("lr/averaged", "sbb");
  v.Check(avg_sbb >= 0.85 - 0.07, "(d) averaged-LR SBB %.3f >= 0.85 - 0.07", avg_sbb);
  const double secs = Seconds(start);
  v.Check(secs < 1800.0, "runtime %.1f s < 1800 s", secs);
  Report(5, "attack orderings on drift-separated cohorts", v, secs);
}

void Criterion6(Shared& shared) {
  const auto start = Clock::now();
  Verdict v;
  const auto wb = shared.WhiteBoxOnly();
  std::vector<harness::RowSpec> dp_rows;
  for (double eps : wb.epsilons) {
    harness::RowSpec r = harness::RowSpec::Parse("dp-lr/eps=1");
    r.epsilon = eps;
    dp_rows.push_back(r);
  }
  const auto table = harness::RunScoreTable(dp_rows, wb, shared.cohorts);
  std::vector<double> eps, scores;
  std::string line;
  for (const auto& r : dp_rows) {
    eps.push_back(r.epsilon);
    scores.push_back(table.Cell(r.Name(), "wb")->mean);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s%g:%.3f", line.empty() ? "" : ", ", r.epsilon, scores.back());
    line += buf;
  }
  const double rho = Spearman(eps, scores);
  v.Check(rho >= 0.8, "(a) DP-LR WB score vs eps Spearman %.3f >= 0.8 [%s]", rho, line.c_str());

  // Utility: 20-training held-out means for each LR grid entry, then averaged
  // over the grid.
  const Dataset held_out = harness::HeldOutData(shared.config);
  const auto& grid = shared.config.lr_grid;
  std::vector<double> dp_ba(dp_rows.size(), 0.0);
  std::vector<harness::UtilityRow> utility;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    auto c = shared.config;
    c.lr_grid = {grid[g]};
    auto rows = dp_rows;
    if (g == 0) rows.push_back(harness::RowSpec::Parse("tt-mlp/b=2"));
    const auto u = harness::RunUtility(rows, c, shared.cohorts, held_out, 20);
    if (g == 0) utility = u;
    std::string per;
    for (std::size_t k = 0; k < dp_rows.size(); ++k)
      for (const auto& r : u)
        if (r.name == dp_rows[k].Name()) {
          dp_ba[k] += r.balanced_accuracy / static_cast<double>(grid.size());
          char buf[64];
          std::snprintf(buf, sizeof(buf), "%s%g:%.4f", k ? ", " : "", dp_rows[k].epsilon,
                        r.balanced_accuracy);
          per += buf;
        }
    std::printf("    info DP-LR held-out BA, grid entry %zu: %s\n", g, per.c_str());
  }
  auto ba = [&](const std::string& name) {
    for (const auto& u : utility)
      if (u.name == name) return u.balanced_accuracy;
    Fail(ErrorCode::kInternal, "missing utility row " + name);
  };
  bool monotone = true;
  std::string bas;
  for (std::size_t k = 0; k < dp_rows.size(); ++k) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s%g:%.4f", k ? ", " : "", dp_rows[k].epsilon, dp_ba[k]);
    bas += buf;
    if (k > 0) monotone = monotone && dp_ba[k - 1] <= dp_ba[k];
  }
  v.Check(monotone, "(b) DP-LR held-out BA (grid mean of 20-seed means) non-increasing as eps "
          "decreases [%s]", bas.c_str());

  const double tt_ba = ba("tt-mlp/b=2"), mlp_ba = ba("mlp/vanilla");
  const double tt_wb = shared.TtMlp().results.front().mean;
  v.Check(std::abs(tt_ba - mlp_ba) <= 0.05, "(c) TT-MLP b=2 held-out BA %.3f vs MLP %.3f (within 0.05)",
          tt_ba, mlp_ba);
  v.Check(std::abs(tt_wb - 0.5) <= 0.05, "(c) TT-MLP b=2 WB attack %.3f within 0.05 of chance 0.5",
          tt_wb);
  Report(6, "defense trade-off", v, Seconds(start));
}

void Criterion7(Shared& shared) {
  const auto start = Clock::now();
  Verdict v;
  const auto& config = shared.config;
  const auto& pool = shared.pool;
  const auto frame = Standardizer::Fit(pool.features);
  const auto& hyper = std::get<predictors::LrHyper>(config.lr_grid.front());
  const auto lr = predictors::TrainLogistic(pool, hyper, harness::SubSeed(config, "c7-lr"));
  const auto scorer = std::make_shared<predictors::ModelScorer>(lr);
  auto cfg = tensorize::TensorizeConfig::ForLogistic();
  cfg.bins = 6;
  cfg.seed = harness::SubSeed(config, "c7-tt");
  const auto tt = tensorize::TensorizeModel(scorer, pool.features, cfg).tt;

  interpret::SensitivityOptions options;
  options.frame = frame;
  const auto global = interpret::FeatureSensitivity(tt, options);
  std::vector<double> w = lr.weights;
  double top = 0.0;
  for (double e : w) top = std::max(top, std::abs(e));
  for (double& e : w) e /= top;
  const double r = interpret::Pearson(global.normalized_scores(), w);
  v.Check(r >= 0.95, "(a) TT-LR sensitivities vs LR coefficients Pearson %.4f >= 0.95", r);

  Rng rng(707);
  double worst = 0.0;
  const auto inputs = tt.input_sites();
  for (int i = 0; i < 1000; ++i) {
    const auto x = RandomPatient(rng, frame);
    const std::size_t j = rng() % inputs.size();
    const auto conditioned = tt::ConditionValue(tt, inputs[j], x[j]);
    auto rest = x;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
    worst = std::max(worst, std::abs(tt::Classify(conditioned, rest) - tt::Classify(tt, x)));
  }
  v.Check(worst <= 1e-10, "(b) conditioned vs substituted predictions max |dp| %.2e <= 1e-10", worst);

  auto specs = cohorts::Preset(config.preset);
  const int silent_type = 3;
  specs.front().nonresponder_types = {silent_type};
  const auto biased = cohorts::GenerateCohorts(specs, harness::SubSeed(config, "c7-biased")).front();
  const auto biased_lr = predictors::TrainLogistic(biased.data, hyper, 71);
  cfg.seed = 72;
  const auto biased_tt = tensorize::TensorizeModel(std::make_shared<predictors::ModelScorer>(biased_lr),
                                                   biased.data.features, cfg)
                             .tt;
  interpret::SensitivityOptions biased_options;
  biased_options.frame = Standardizer::Fit(biased.data.features);
  const double ratio = interpret::SensitivityByType(biased_tt, silent_type, biased_options).normalization /
                       interpret::FeatureSensitivity(biased_tt, biased_options).normalization;
  v.Check(ratio < 0.1, "(c) all-non-responder type: max |score| / global max %.4f < 0.1", ratio);

  const auto lr_scores = scorer->ScoreAll(pool.features);
  const auto tt_scores = tensorize::TtScorer(tt).ScoreAll(pool.features);
  const auto lr_curve = interpret::ComputeMonotonicityCurve(lr_scores, pool.labels, 10, 200, 1);
  const auto tt_curve = interpret::ComputeMonotonicityCurve(tt_scores, pool.labels, 10, 200, 1);
  v.Check(tt_curve.slope < lr_curve.slope, "(d) monotonicity slope TT-LR b=6 %.4f < LR %.4f",
          tt_curve.slope, lr_curve.slope);
  Report(7, "interpretability", v, Seconds(start));
}

void Criterion8(Shared& shared) {
  const auto start = Clock::now();
  Verdict v;
  const std::string second = AttackArtifacts(shared.config, shared.config.out + "/run2", nullptr);
  v.Check(!first_attack_bytes.empty() && second == first_attack_bytes,
          "second attack run score tables byte-identical to the first (%zu bytes)", second.size());
  Report(8, "reproducibility from one master seed", v, Seconds(start));
}

int Main() {
  SetLogLevel(LogLevel::kError);
  const auto start = Clock::now();
  Shared shared;
  const std::vector<std::function<void()>> criteria{
      [] { Criterion1(); },           [&] { Criterion2(shared); }, [&] { Criterion3(shared); },
      [&] { Criterion4(shared); },    [&] { Criterion5(shared); }, [&] { Criterion6(shared); },
      [&] { Criterion7(shared); },    [&] { Criterion8(shared); }};
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    try {
      criteria[k]();
    } catch (const std::exception& e) {
      Verdict v;
      v.Check(false, "error: %s", e.what());
      Report(static_cast<int>(k + 1), "aborted", v, 0.0);
    }
  }
  fs::remove_all(shared.config.out);
  std::printf("%d of %zu criteria failed (%.1f s total)\n", failures, criteria.size(),
              Seconds(start));
  return failures;
}

}  // namespace
}  // namespace ttshield

int main() { return ttshield::Main(); }
