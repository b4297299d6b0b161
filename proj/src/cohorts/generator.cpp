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
#include "cohorts/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "common/error.hpp"
#include "common/parallel.hpp"
#include "common/random.hpp"

namespace ttshield::cohorts {
namespace {

constexpr std::uint64_t kPerturbTag = 0xd1f7;
constexpr std::uint64_t kSampleTag = 0x5a3b;

// Cohort-level parameters after applying drift.
struct CohortParameters {
  FeatureDistribution features;
  std::array<double, kCancerTypes> type_mix;
  LatentModel latent;
};

CohortParameters Perturb(const CohortSpec& spec, Rng& rng) {
  CohortParameters p{spec.features, spec.type_mix, spec.latent};
  const double d = spec.drift;
  // Draw every perturbation even when d = 0 so the sampling stream does not
  // depend on the drift setting.
  auto z = [&] { return d * StandardNormal(rng); };
  for (double& c : p.latent.coefficients) c *= 1.0 + z();
  for (double& e : p.latent.type_effects) e += z();
  FeatureDistribution& f = p.features;
  f.log_tmb_mean += 0.5 * f.log_tmb_sd * z();
  f.psth_rate = std::clamp(f.psth_rate + 0.2 * z(), 0.05, 0.95);
  f.albumin_mean += 0.5 * f.albumin_sd * z();
  f.log_nlr_mean += 0.5 * f.log_nlr_sd * z();
  f.age_mean += 0.5 * f.age_sd * z();
  double total = 0.0;
  for (double& w : p.type_mix) {
    w *= std::exp(z());
    total += w;
  }
  for (double& w : p.type_mix) w /= total;
  return p;
}

int DrawType(const std::array<double, kCancerTypes>& mix, Rng& rng) {
  const double u = Uniform01(rng);
  double acc = 0.0;
  for (std::size_t t = 0; t < kCancerTypes; ++t) {
    acc += mix[t];
    if (u < acc) return static_cast<int>(t + 1);
  }
  return static_cast<int>(kCancerTypes);
}

Cohort Generate(const CohortSpec& spec, std::uint64_t seed) {
  Rng perturb_rng(DeriveSeed(seed, {kPerturbTag}));
  const CohortParameters p = Perturb(spec, perturb_rng);
  const FeatureDistribution& f = p.features;
  const FeatureDistribution& base = spec.features;

  Rng rng(DeriveSeed(seed, {kSampleTag}));
  const std::size_t n = spec.size;
  Cohort cohort;
  cohort.name = spec.name;
  cohort.data.features = Matrix::Zero(static_cast<Eigen::Index>(n),
                                      static_cast<Eigen::Index>(kFeatureCount));
  std::vector<double> latent(n);
  std::vector<bool> eligible(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    const double log_tmb = f.log_tmb_mean + f.log_tmb_sd * StandardNormal(rng);
    const double psth = Uniform01(rng) < f.psth_rate ? 1.0 : 0.0;
    const double albumin =
        std::max(1.0, f.albumin_mean + f.albumin_sd * StandardNormal(rng));
    const double log_nlr = f.log_nlr_mean + f.log_nlr_sd * StandardNormal(rng);
    const double age = std::clamp(f.age_mean + f.age_sd * StandardNormal(rng), 18.0, 95.0);
    const int type = DrawType(p.type_mix, rng);

    auto row = cohort.data.features.row(static_cast<Eigen::Index>(i));
    row(kTmb) = std::max(0.0, std::expm1(log_tmb));
    row(kPsth) = psth;
    row(kAlbumin) = albumin;
    row(kNlr) = std::exp(log_nlr);
    row(kAge) = age;
    row(static_cast<Eigen::Index>(CancerTypeFeature(type))) = 1.0;

    // Centre on the shared base distribution so cohort shifts move the latent
    // score as well as the features.
    const std::array<double, kContinuousBlock> u{
        (log_tmb - base.log_tmb_mean) / base.log_tmb_sd, psth - base.psth_rate,
        (albumin - base.albumin_mean) / base.albumin_sd,
        (log_nlr - base.log_nlr_mean) / base.log_nlr_sd, (age - base.age_mean) / base.age_sd};
    double l = p.latent.type_effects[static_cast<std::size_t>(type - 1)];
    for (std::size_t k = 0; k < kContinuousBlock; ++k) l += p.latent.coefficients[k] * u[k];
    const double e = std::clamp(Uniform01(rng), 1e-12, 1.0 - 1e-12);
    latent[i] = l + std::log(e / (1.0 - e));  // logistic noise
    eligible[i] = std::find(spec.nonresponder_types.begin(), spec.nonresponder_types.end(),
                            type) == spec.nonresponder_types.end();
  }

  // Exact response count: the top-k noisy latent scores respond.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (eligible[i]) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return latent[a] > latent[b]; });
  const std::size_t k = std::min(
      order.size(), static_cast<std::size_t>(std::llround(spec.response_rate * n)));
  cohort.data.labels.assign(n, 0);
  for (std::size_t r = 0; r < k; ++r) cohort.data.labels[order[r]] = 1;
  return cohort;
}

}  // namespace

void ValidateSpec(const CohortSpec& spec) {
  Require(spec.size >= 10, ErrorCode::kArgument, spec.name + ": size must be >= 10");
  Require(spec.response_rate > 0.0 && spec.response_rate < 1.0, ErrorCode::kArgument,
          spec.name + ": response rate must lie in (0, 1)");
  Require(spec.drift >= 0.0 && std::isfinite(spec.drift), ErrorCode::kArgument,
          spec.name + ": drift must be finite and >= 0");
  double total = 0.0;
  for (double w : spec.type_mix) {
    Require(w >= 0.0 && std::isfinite(w), ErrorCode::kArgument,
            spec.name + ": type mix entries must be >= 0");
    total += w;
  }
  Require(std::abs(total - 1.0) < 1e-6, ErrorCode::kArgument,
          spec.name + ": type mix must sum to 1");
  const FeatureDistribution& f = spec.features;
  Require(f.log_tmb_sd > 0 && f.albumin_sd > 0 && f.log_nlr_sd > 0 && f.age_sd > 0,
          ErrorCode::kArgument, spec.name + ": feature spreads must be > 0");
  Require(f.psth_rate >= 0.0 && f.psth_rate <= 1.0, ErrorCode::kArgument,
          spec.name + ": PSTH rate must lie in [0, 1]");
  for (int t : spec.nonresponder_types) CancerTypeFeature(t);
}

std::vector<Cohort> GenerateCohorts(std::span<const CohortSpec> specs, std::uint64_t seed) {
  for (const CohortSpec& s : specs) ValidateSpec(s);
  std::vector<Cohort> out(specs.size());
  ParallelFor(specs.size(),
              [&](std::size_t m) { out[m] = Generate(specs[m], DeriveSeed(seed, {m})); });
  return out;
}

std::vector<CohortSpec> Preset(const std::string& name) {
  auto make = [](std::string n, std::size_t size) {
    CohortSpec s;
    s.name = std::move(n);
    s.size = size;
    return s;
  };
  if (name == "clinical-sizes") {
    return {make("Cho1", 964), make("Cho2", 515), make("MSK1", 453),
            make("MSK2", 104), make("Shim", 198), make("Kato", 35)};
  }
  if (name == "desk") {
    return {make("CohortA", 800), make("CohortB", 100), make("CohortC", 30)};
  }
  Fail(ErrorCode::kArgument, "unknown cohort preset '" + name + "'");
}

}  // namespace ttshield::cohorts
