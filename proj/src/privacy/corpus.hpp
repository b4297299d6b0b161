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
#ifndef TTSHIELD_PRIVACY_CORPUS_HPP_
#define TTSHIELD_PRIVACY_CORPUS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cohorts/cohort.hpp"
#include "predictors/mechanism.hpp"
#include "privacy/access.hpp"

namespace ttshield::privacy {

struct Provenance {
  std::string model_kind;  // e.g. "lr", "mlp", "tt-lr", "dp-lr"
  std::string mechanism;   // e.g. "vanilla", "averaged(20,3)"
  std::string access;      // AccessLevel::Name()
  std::string hyper;       // grid entry label
  std::uint64_t seed = 0;
  std::size_t replicate = 0;
};

struct AttackRecord {
  std::vector<double> features;
  std::vector<int> label;  // multi-hot membership over the M cohorts
  Provenance provenance;
};

struct AttackCorpus {
  std::size_t cohort_count = 0;
  std::string access;
  std::vector<std::size_t> probe_ids;  // rows of the pooled cohorts
  std::uint64_t seed = 0;
  std::vector<AttackRecord> records;
  std::vector<std::string> failures;  // skipped shadow jobs, one line each

  std::size_t feature_count() const {
    return records.empty() ? 0 : records.front().features.size();
  }
  Matrix FeatureMatrix() const;
  Matrix LabelMatrix() const;
};

// Builds one shadow target from a training union.
using ShadowTrainer =
    std::function<Target(const Dataset& data, std::size_t grid_index, std::uint64_t seed)>;

struct ShadowConfig {
  std::size_t replicates = 20;  // R
  std::size_t max_union_size = 0;  // 0 = all 2^M - 1 unions
  std::size_t probe_count = 100;   // S
  std::vector<AccessLevel> access;
  std::uint64_t seed = 0;
  std::string model_kind = "lr";
  std::string mechanism = "vanilla";
  std::vector<std::string> grid_names;  // one per grid entry
  // Applied to white-box vectors before they enter a corpus.
  std::function<void(std::vector<double>&)> white_box_transform;
};

// Probe rows drawn uniformly without replacement from the pooled cohorts.
std::vector<std::size_t> SelectProbeIds(std::size_t pool_size, std::size_t count,
                                        std::uint64_t seed);

// Trains every (grid entry, union, replicate) job once and emits one corpus
// per access level, all sharing the same probes and job seeds. Records are
// ordered by grid entry, then union, then replicate. Jobs that throw are
// recorded in `failures` and skipped.
std::vector<AttackCorpus> BuildShadowCorpora(std::span<const cohorts::Cohort> cohorts,
                                             std::size_t grid_size,
                                             const ShadowTrainer& trainer,
                                             const ShadowConfig& config);

// Plain model shadows: each grid hyper trained with the given mechanism.
AttackCorpus BuildShadowCorpus(std::span<const cohorts::Cohort> cohorts,
                               std::span<const predictors::ModelHyper> hyper_grid,
                               const predictors::TrainingMechanism& mechanism,
                               std::size_t replicates, const AccessLevel& access,
                               std::uint64_t seed, std::size_t max_union_size = 0);

std::string MechanismName(const predictors::TrainingMechanism& mechanism);
std::string HyperName(const predictors::ModelHyper& hyper);

}  // namespace ttshield::privacy

#endif  // TTSHIELD_PRIVACY_CORPUS_HPP_
