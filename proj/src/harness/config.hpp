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
#ifndef TTSHIELD_HARNESS_CONFIG_HPP_
#define TTSHIELD_HARNESS_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cohorts/cohort.hpp"
#include "predictors/model.hpp"
#include "privacy/adversary.hpp"
#include "tensorize/oracle.hpp"

namespace ttshield::harness {

// One row of a score table: what the shadow models release.
//   lr/vanilla, lr/averaged, mlp/vanilla, mlp/averaged
//   tt-lr/b=2, tt-mlp/b=6         (tensorized vanilla models)
//   dp-lr/eps=1, dp-sgd/sigma=5
struct RowSpec {
  enum class Kind { kLr, kMlp, kTtLr, kTtMlp, kDpLr, kDpSgd };
  Kind kind = Kind::kLr;
  bool averaged = false;
  int bins = 2;
  double epsilon = 1.0;
  double noise_multiplier = 1.0;

  std::string Name() const;
  static RowSpec Parse(const std::string& text);
  bool is_mlp() const { return kind == Kind::kMlp || kind == Kind::kTtMlp || kind == Kind::kDpSgd; }
};

struct ExperimentConfig {
  std::uint64_t seed = 2026;

  // Synthetic preset, or CSV files when `cohort_paths` is nonempty.
  std::string preset = "desk";
  std::optional<double> drift;  // overrides every spec of the preset
  std::vector<std::string> cohort_paths;

  std::vector<predictors::ModelHyper> lr_grid;
  std::vector<predictors::ModelHyper> mlp_grid;
  int averaged_repetitions = 20;  // J
  int averaged_folds = 3;         // K

  std::vector<std::string> attack_rows{"lr/vanilla", "lr/averaged"};
  // Empty: one dp-lr row per epsilon, one tt-lr row per bin count and tt-mlp/b=2.
  std::vector<std::string> defend_rows;
  std::vector<int> bins{2, 6, 10};
  std::vector<double> epsilons{0.1, 1.0, 10.0, 100.0};
  std::vector<std::string> access{"wbb2", "wbb6", "wbb10", "sbb", "wb"};

  std::size_t replicates = 20;  // R
  std::size_t probes = 100;     // S
  std::size_t max_union_size = 2;
  int repeats = 5;
  int folds = 5;
  privacy::AdversaryOptions adversary;

  // Tensorization of single models (train/tensorize/sensitivity/monotonicity).
  int tensorize_bins = 6;

  std::string out = "ttshield-out";
  std::size_t workers = 0;

  int decimals = 4;
  std::string host = "127.0.0.1";
  int port = 8080;

  ExperimentConfig();
  std::vector<RowSpec> AttackRows() const;
  std::vector<RowSpec> DefendRows() const;
  std::vector<tensorize::AccessLevel> AccessLevels() const;
  std::vector<cohorts::Cohort> LoadCohorts() const;
  // Checks every field; throws kArgument naming the first bad one.
  void Validate() const;
};

// Unknown keys are rejected so that typos do not silently fall back to
// defaults.
ExperimentConfig ConfigFromJson(const nlohmann::json& doc);
ExperimentConfig LoadConfig(const std::string& path);
nlohmann::json ConfigToJson(const ExperimentConfig& config);

// Hash of every field that can change a result (out and workers excluded).
std::string ConfigHash(const ExperimentConfig& config);

// 64-bit FNV-1a of `bytes` as 16 hex digits.
std::string ContentHash(std::string_view bytes);

// Named sub-seed of the master seed; every seeded job of a run derives from it.
std::uint64_t SubSeed(const ExperimentConfig& config, std::string_view purpose);

// Comma-separated list helpers for CLI flags.
std::vector<std::string> SplitList(const std::string& text);

}  // namespace ttshield::harness

#endif  // TTSHIELD_HARNESS_CONFIG_HPP_
