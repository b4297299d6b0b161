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
#ifndef TTSHIELD_COHORTS_GENERATOR_HPP_
#define TTSHIELD_COHORTS_GENERATOR_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cohorts/cohort.hpp"

namespace ttshield::cohorts {

// Marginal feature distributions shared by all cohorts built from one spec.
struct FeatureDistribution {
  double log_tmb_mean = 1.6;  // log(TMB + 1)
  double log_tmb_sd = 0.8;
  double psth_rate = 0.4;
  double albumin_mean = 3.9;  // g/dL
  double albumin_sd = 0.45;
  double log_nlr_mean = 1.4;
  double log_nlr_sd = 0.55;
  double age_mean = 63.0;
  double age_sd = 11.0;
};

// Latent response model on centred, unit-scale transforms of the continuous
// features (log TMB, PSTH, albumin, log NLR, age) plus one effect per type.
struct LatentModel {
  std::array<double, kContinuousBlock> coefficients{0.9, -0.5, 0.6, -0.6, 0.2};
  std::array<double, kCancerTypes> type_effects{0.4, 0.2,  0.6, -0.3, 0.8, -0.6, 0.0, 0.3,
                                                -0.2, 0.5, -0.4, 0.1, -0.8, 0.2, -0.1, 0.3};
};

struct CohortSpec {
  std::string name;
  std::size_t size = 200;
  double response_rate = 0.3;
  FeatureDistribution features;
  std::array<double, kCancerTypes> type_mix{0.30, 0.12, 0.12, 0.08, 0.07, 0.05, 0.04, 0.03,
                                            0.03, 0.03, 0.03, 0.02, 0.02, 0.02, 0.02, 0.02};
  LatentModel latent;
  // Scale of the cohort-specific perturbations: relative coefficient noise,
  // additive type-effect noise, feature location shifts and type-mix tilts.
  // Two cohorts with drift 0 and equal specs are identically distributed.
  double drift = 0.3;
  // 1-based cancer types whose samples never respond.
  std::vector<int> nonresponder_types;
};

void ValidateSpec(const CohortSpec& spec);

// Cohort m is drawn from its own seed DeriveSeed(seed, {m}); generation is
// independent of the worker count.
std::vector<Cohort> GenerateCohorts(std::span<const CohortSpec> specs, std::uint64_t seed);

// Named presets: "clinical-sizes" (Cho1, Cho2, MSK1, MSK2, Shim, Kato) and
// "desk" (three mid-sized cohorts). Throws kArgument on an unknown name.
std::vector<CohortSpec> Preset(const std::string& name);

}  // namespace ttshield::cohorts

#endif  // TTSHIELD_COHORTS_GENERATOR_HPP_
