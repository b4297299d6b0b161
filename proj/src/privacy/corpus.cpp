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
#include "privacy/corpus.hpp"

#include <optional>
#include <sstream>

#include "common/error.hpp"
#include "common/log.hpp"
#include "common/parallel.hpp"
#include "common/random.hpp"

namespace ttshield::privacy {
namespace {

constexpr std::uint64_t kProbeTag = 0x9b0e;
constexpr std::uint64_t kShadowTag = 0x5ad0;

std::uint64_t MemberMask(std::span<const std::size_t> members) {
  std::uint64_t mask = 0;
  for (std::size_t m : members) mask |= std::uint64_t{1} << m;
  return mask;
}

}  // namespace

Matrix AttackCorpus::FeatureMatrix() const {
  Matrix x(static_cast<Eigen::Index>(records.size()),
           static_cast<Eigen::Index>(feature_count()));
  for (std::size_t i = 0; i < records.size(); ++i) {
    Require(records[i].features.size() == feature_count(), ErrorCode::kShape,
            "corpus feature length differs between records");
    x.row(static_cast<Eigen::Index>(i)) = AsEigen(records[i].features).transpose();
  }
  return x;
}

Matrix AttackCorpus::LabelMatrix() const {
  Matrix y(static_cast<Eigen::Index>(records.size()), static_cast<Eigen::Index>(cohort_count));
  for (std::size_t i = 0; i < records.size(); ++i) {
    Require(records[i].label.size() == cohort_count, ErrorCode::kShape,
            "corpus label length differs from cohort count");
    for (std::size_t m = 0; m < cohort_count; ++m)
      y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m)) = records[i].label[m];
  }
  return y;
}

std::vector<std::size_t> SelectProbeIds(std::size_t pool_size, std::size_t count,
                                        std::uint64_t seed) {
  Require(count <= pool_size, ErrorCode::kArgument,
          "cannot draw " + std::to_string(count) + " probes from " +
              std::to_string(pool_size) + " pooled samples");
  Rng rng(DeriveSeed(seed, {kProbeTag}));
  return SampleWithoutReplacement(pool_size, count, rng);
}

std::vector<AttackCorpus> BuildShadowCorpora(std::span<const cohorts::Cohort> cohorts,
                                             std::size_t grid_size,
                                             const ShadowTrainer& trainer,
                                             const ShadowConfig& config) {
  Require(config.replicates >= 1, ErrorCode::kArgument, "R must be >= 1");
  Require(grid_size >= 1, ErrorCode::kArgument, "hyper grid is empty");
  Require(!config.access.empty(), ErrorCode::kArgument, "no access level requested");
  Require(!cohorts.empty(), ErrorCode::kArgument, "no cohorts");

  const auto unions = cohorts::EnumerateUnions(cohorts.size(), config.max_union_size);
  std::vector<cohorts::DatasetUnion> data;
  data.reserve(unions.size());
  for (const auto& members : unions) data.push_back(cohorts::Union(cohorts, members));

  bool needs_probes = false;
  for (const auto& a : config.access) needs_probes |= a.is_black_box();
  const Dataset pool = cohorts::Pool(cohorts);
  std::vector<std::size_t> probe_ids;
  Matrix probes;
  if (needs_probes) {
    probe_ids = SelectProbeIds(pool.size(), config.probe_count, config.seed);
    probes = pool.Subset(probe_ids).features;
  }

  const std::size_t jobs = grid_size * unions.size() * config.replicates;
  std::vector<std::optional<std::vector<std::vector<double>>>> features(jobs);
  std::vector<std::string> errors(jobs);
  std::vector<std::uint64_t> seeds(jobs);
  ParallelFor(jobs, [&](std::size_t job) {
    const std::size_t g = job / (unions.size() * config.replicates);
    const std::size_t u = (job / config.replicates) % unions.size();
    const std::size_t rep = job % config.replicates;
    seeds[job] = DeriveSeed(config.seed, {kShadowTag, g, MemberMask(unions[u]), rep});
    try {
      const Target target = trainer(data[u].data, g, seeds[job]);
      std::vector<std::vector<double>> per_level;
      for (const auto& level : config.access) {
        std::vector<double> f = Access(target, level, probes);
        if (!level.is_black_box() && config.white_box_transform) config.white_box_transform(f);
        per_level.push_back(std::move(f));
      }
      features[job] = std::move(per_level);
    } catch (const Error& e) {
      errors[job] = e.what();
    }
  });

  std::vector<AttackCorpus> out(config.access.size());
  for (std::size_t l = 0; l < config.access.size(); ++l) {
    AttackCorpus& c = out[l];
    c.cohort_count = cohorts.size();
    c.access = config.access[l].Name();
    if (config.access[l].is_black_box()) c.probe_ids = probe_ids;
    c.seed = config.seed;
  }
  for (std::size_t job = 0; job < jobs; ++job) {
    const std::size_t g = job / (unions.size() * config.replicates);
    const std::size_t u = (job / config.replicates) % unions.size();
    const std::size_t rep = job % config.replicates;
    const std::string grid_name =
        g < config.grid_names.size() ? config.grid_names[g] : "grid" + std::to_string(g);
    if (!features[job]) {
      std::ostringstream line;
      line << "grid=" << grid_name << " union=" << u << " replicate=" << rep << ": "
           << errors[job];
      LogWarning("shadow job skipped: " + line.str());
      for (AttackCorpus& c : out) c.failures.push_back(line.str());
      continue;
    }
    for (std::size_t l = 0; l < config.access.size(); ++l) {
      AttackRecord r;
      r.features = std::move((*features[job])[l]);
      r.label = data[u].indicator;
      r.provenance = {config.model_kind, config.mechanism, out[l].access, grid_name,
                      seeds[job], rep};
      out[l].records.push_back(std::move(r));
    }
  }
  return out;
}

std::string MechanismName(const predictors::TrainingMechanism& mechanism) {
  if (mechanism.kind == predictors::TrainingMechanism::Kind::kVanilla) return "vanilla";
  return "averaged(" + std::to_string(mechanism.repetitions) + "," +
         std::to_string(mechanism.folds) + ")";
}

std::string HyperName(const predictors::ModelHyper& hyper) {
  std::ostringstream s;
  if (const auto* lr = std::get_if<predictors::LrHyper>(&hyper)) {
    s << "l1_ratio=" << lr->l1_ratio << ";C=" << lr->C;
  } else {
    const auto& m = std::get<predictors::MlpHyper>(hyper);
    s << "hidden=";
    for (std::size_t i = 0; i < m.hidden.size(); ++i) s << (i ? "x" : "") << m.hidden[i];
    s << ";epochs=" << m.epochs;
  }
  return s.str();
}

AttackCorpus BuildShadowCorpus(std::span<const cohorts::Cohort> cohorts,
                               std::span<const predictors::ModelHyper> hyper_grid,
                               const predictors::TrainingMechanism& mechanism,
                               std::size_t replicates, const AccessLevel& access,
                               std::uint64_t seed, std::size_t max_union_size) {
  ShadowConfig config;
  config.replicates = replicates;
  config.max_union_size = max_union_size;
  config.access = {access};
  config.seed = seed;
  config.mechanism = MechanismName(mechanism);
  config.model_kind =
      !hyper_grid.empty() && std::holds_alternative<predictors::MlpHyper>(hyper_grid[0])
          ? "mlp"
          : "lr";
  for (const auto& h : hyper_grid) config.grid_names.push_back(HyperName(h));
  const ShadowTrainer trainer = [&](const Dataset& data, std::size_t g, std::uint64_t s) {
    return TargetFromModel(predictors::TrainWithMechanism(hyper_grid[g], data, mechanism, s));
  };
  return BuildShadowCorpora(cohorts, hyper_grid.size(), trainer, config).front();
}

}  // namespace ttshield::privacy
