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
#ifndef TTSHIELD_HARNESS_EXPERIMENT_HPP_
#define TTSHIELD_HARNESS_EXPERIMENT_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "cohorts/cohort.hpp"
#include "harness/config.hpp"
#include "harness/report.hpp"
#include "predictors/metrics.hpp"
#include "predictors/model.hpp"
#include "privacy/attack.hpp"
#include "privacy/corpus.hpp"
#include "tensorize/tensorize.hpp"

namespace ttshield::harness {

// Everything a row's shadow jobs share.
struct RowContext {
  const ExperimentConfig* config = nullptr;
  // Public standardization for DP-LR: fitted once on all cohorts, so it is
  // the same for every shadow model.
  Standardizer public_frame;
};

RowContext MakeRowContext(const ExperimentConfig& config,
                          std::span<const cohorts::Cohort> cohorts);

std::size_t GridSize(const RowSpec& row, const ExperimentConfig& config);

// The released artifact for one training set: a model, a DP model or the
// tensorization of a vanilla model (pivots capped at the training-set size).
privacy::Target TrainRowTarget(const RowSpec& row, const RowContext& context,
                               const Dataset& data, std::size_t grid_index,
                               std::uint64_t seed);

struct RowOutcome {
  ScoreRow row;
  std::vector<privacy::AttackCorpus> corpora;  // one per access level
  std::vector<privacy::AttackResult> results;
};

// Shadow corpora for every configured access level, then the repeated k-fold
// attack on each. Seeds derive from the master seed and the row name.
RowOutcome RunAttackRow(const RowSpec& row, const ExperimentConfig& config,
                        std::span<const cohorts::Cohort> cohorts);

ScoreTable RunScoreTable(std::span<const RowSpec> rows, const ExperimentConfig& config,
                         std::span<const cohorts::Cohort> cohorts,
                         std::vector<RowOutcome>* outcomes = nullptr);

// Mean of `shuffles` attacks on label-permuted copies of the corpus.
double ShuffledBaseline(const privacy::AttackCorpus& corpus, const privacy::AttackOptions& options,
                        int shuffles, std::uint64_t seed);

privacy::AttackOptions AttackOptionsFor(const ExperimentConfig& config, std::uint64_t seed);

// Synthetic cohorts from the same preset under an independent seed, pooled.
// Throws kUnsupported for CSV cohorts.
Dataset HeldOutData(const ExperimentConfig& config);

struct UtilityRow {
  std::string name;
  double balanced_accuracy = 0.0;  // mean over trainings
  double auc = 0.0;
  int trainings = 0;
};

// Predictive quality of each row's artifact trained on `train` and scored on
// `test`, averaged over `trainings` seeds. The vanilla reference models come
// first.
std::vector<UtilityRow> RunUtility(std::span<const RowSpec> rows, const ExperimentConfig& config,
                                   std::span<const cohorts::Cohort> cohorts, const Dataset& test,
                                   int trainings);
std::string UtilityToCsv(const std::vector<UtilityRow>& rows);

// Outcome of a CLI command: machine-readable summary plus text for humans.
struct CommandResult {
  nlohmann::json summary;
  std::string text;
};

struct TrainRequest {
  std::string model = "lr";          // lr | mlp
  std::string mechanism = "vanilla"; // vanilla | averaged
  std::vector<std::size_t> members;  // cohort indices; empty = all
  std::size_t grid_index = 0;
};

struct ModelSource {
  std::string model_path;  // model JSON; empty = LR trained on all cohorts
  std::string tt_path;     // TT JSON (serve only)
};

CommandResult CommandGen(const ExperimentConfig& config);
CommandResult CommandTrain(const ExperimentConfig& config, const TrainRequest& request);
CommandResult CommandTensorize(const ExperimentConfig& config, const ModelSource& source);
CommandResult CommandAttack(const ExperimentConfig& config);
CommandResult CommandDefend(const ExperimentConfig& config);
CommandResult CommandSensitivity(const ExperimentConfig& config, const ModelSource& source);
CommandResult CommandMonotonicity(const ExperimentConfig& config, const ModelSource& source);
// Merges the given score tables, or every table of this config's hash in the
// output directory when none are given.
CommandResult CommandReport(const ExperimentConfig& config,
                            const std::vector<std::string>& table_paths);
// Blocks until the process is stopped. `on_ready` receives the bound port.
void CommandServe(const ExperimentConfig& config, const ModelSource& source,
                  const std::function<void(int)>& on_ready);

// Model or TT loaded from a source, as a scorer over raw features.
std::shared_ptr<const predictors::Scorer> LoadScorer(const ExperimentConfig& config,
                                                     const ModelSource& source);

}  // namespace ttshield::harness

#endif  // TTSHIELD_HARNESS_EXPERIMENT_HPP_
