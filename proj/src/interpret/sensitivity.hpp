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
#ifndef TTSHIELD_INTERPRET_SENSITIVITY_HPP_
#define TTSHIELD_INTERPRET_SENSITIVITY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "common/standardizer.hpp"
#include "tt/tensor_train.hpp"

namespace ttshield::interpret {

enum class ScoreKind {
  // Born score p1 / (p0 + p1) of the one-feature marginal.
  kBorn,
  // Class-1 amplitude with every other input at the frame mean; exact for
  // TTs that encode a linear form.
  kAmplitude,
};

struct SensitivityOptions {
  // Coordinates in which the other inputs are marginalized: uniformly over
  // the corners mean +/- sd. Defaults to the identity (index strings of the
  // TT as stored).
  std::optional<Standardizer> frame;
  // Raw base point for continuous increments; defaults to the frame mean.
  std::vector<double> base;
  // Features using the 0 -> 1 flip; defaults to the cohort schema for
  // 21-input TTs and to none otherwise.
  std::vector<bool> binary;
  std::vector<std::string> names;
  ScoreKind kind = ScoreKind::kBorn;
  std::string context = "none";
  std::string source;
};

struct SensitivityEntry {
  std::string feature;
  double raw = 0.0;
  double normalized = 0.0;
  bool degenerate = false;  // zero marginal mass
};

struct SensitivityReport {
  std::vector<SensitivityEntry> entries;
  double normalization = 0.0;  // max |raw|
  std::string context;
  std::string source;

  std::vector<double> raw_scores() const;
  std::vector<double> normalized_scores() const;
};

// Score change under a unit raw increment at the base point (continuous) or
// a 0 -> 1 flip (binary), with every other input marginalized.
SensitivityReport FeatureSensitivity(const tt::TensorTrain& tt,
                                     const SensitivityOptions& options);

// Fixes the 16 cancer-type sites (one to 1, the rest to 0) of a 21-input TT
// and reports sensitivities of the remaining inputs. Raw scores are on the
// same scale as FeatureSensitivity's.
SensitivityReport SensitivityByType(const tt::TensorTrain& tt, int cancer_type,
                                    const SensitivityOptions& options);

// Recomputes normalized scores from raw ones (idempotent).
SensitivityReport Normalize(SensitivityReport report);

// The TT with the 16 type sites of a 21-input TT fixed to cancer_type.
tt::TensorTrain ConditionCancerType(const tt::TensorTrain& tt, int cancer_type);

double Pearson(std::span<const double> a, std::span<const double> b);

}  // namespace ttshield::interpret

#endif  // TTSHIELD_INTERPRET_SENSITIVITY_HPP_
