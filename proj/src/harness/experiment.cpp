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
#include "harness/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <numeric>

#include "cohorts/csv.hpp"
#include "cohorts/generator.hpp"
#include "common/error.hpp"
#include "common/log.hpp"
#include "common/parallel.hpp"
#include "common/random.hpp"
#include "defenses/dp_lr.hpp"
#include "defenses/dp_sgd.hpp"
#include "harness/artifacts.hpp"
#include "harness/serve.hpp"
#include "interpret/monotonicity.hpp"
#include "interpret/report_io.hpp"
#include "interpret/sensitivity.hpp"
#include "predictors/mechanism.hpp"
#include "predictors/model_io.hpp"
#include "privacy/corpus_io.hpp"
#include "privacy/recovery.hpp"
#include "tt/tt_io.hpp"

namespace ttshield::harness {
namespace {

namespace fs = std::filesystem;

const std::vector<predictors::ModelHyper>& Grid(const RowSpec& row,
                                                const ExperimentConfig& config) {
  return row.is_mlp() ? config.mlp_grid : config.lr_grid;
}

std::string KindName(RowSpec::Kind kind) {
  switch (kind) {
    case RowSpec::Kind::kLr: return "lr";
    case RowSpec::Kind::kMlp: return "mlp";
    case RowSpec::Kind::kTtLr: return "tt-lr";
    case RowSpec::Kind::kTtMlp: return "tt-mlp";
    case RowSpec::Kind::kDpLr: return "dp-lr";
    case RowSpec::Kind::kDpSgd: return "dp-sgd";
  }
  return "";
}

bool IsLinear(RowSpec::Kind kind) {
  return kind == RowSpec::Kind::kLr || kind == RowSpec::Kind::kDpLr;
}

// File-name friendly form of a row or access name.
std::string Stem(const std::string& name) {
  std::string out;
  for (char c : name) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
  return out;
}

predictors::TrainingMechanism Mechanism(const RowSpec& row, const ExperimentConfig& config) {
  return row.averaged ? predictors::TrainingMechanism::Averaged(config.averaged_repetitions,
                                                                config.averaged_folds)
                      : predictors::TrainingMechanism::Vanilla();
}

Dataset PooledData(std::span<const cohorts::Cohort> cohorts) { return cohorts::Pool(cohorts); }

tensorize::TensorizeConfig TensorizeConfigFor(bool mlp, int bins, std::size_t rows,
                                              std::uint64_t seed) {
  auto cfg = mlp ? tensorize::TensorizeConfig::ForMlp() : tensorize::TensorizeConfig::ForLogistic();
  cfg.bins = bins;
  cfg.seed = seed;
  if (cfg.pivot_count > rows) {
    LogInfo("pivot count capped at the " + std::to_string(rows) + " available samples");
    cfg.pivot_count = rows;
  }
  return cfg;
}

predictors::Model LoadModelFile(const std::string& path) {
  try {
    return predictors::ModelFromJson(nlohmann::json::parse(ReadTextFile(path)));
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, "model '" + path + "': " + e.what());
  }
}

predictors::Model DefaultModel(const ExperimentConfig& config, const Dataset& pool) {
  return predictors::TrainModel(config.lr_grid.front(), pool, SubSeed(config, "default-model"));
}

predictors::Model SourceModel(const ExperimentConfig& config, const ModelSource& source,
                              const Dataset& pool) {
  return source.model_path.empty() ? DefaultModel(config, pool) : LoadModelFile(source.model_path);
}

void Prepare(const ExperimentConfig& config) {
  config.Validate();
  SetWorkerCount(config.workers);
}

nlohmann::json MetricsJson(const predictors::Metrics& m) {
  return {{"balanced_accuracy", m.balanced_accuracy}, {"auc", m.auc}, {"threshold", m.threshold}};
}

}  // namespace

RowContext MakeRowContext(const ExperimentConfig& config,
                          std::span<const cohorts::Cohort> cohorts) {
  return RowContext{&config, Standardizer::Fit(PooledData(cohorts).features)};
}

std::size_t GridSize(const RowSpec& row, const ExperimentConfig& config) {
  return Grid(row, config).size();
}

privacy::Target TrainRowTarget(const RowSpec& row, const RowContext& context, const Dataset& data,
                               std::size_t grid_index, std::uint64_t seed) {
  const ExperimentConfig& config = *context.config;
  const auto& grid = Grid(row, config);
  Require(grid_index < grid.size(), ErrorCode::kArgument, "grid index out of range");
  const auto& hyper = grid[grid_index];
  switch (row.kind) {
    case RowSpec::Kind::kLr:
    case RowSpec::Kind::kMlp:
      return privacy::TargetFromModel(
          predictors::TrainWithMechanism(hyper, data, Mechanism(row, config), seed));
    case RowSpec::Kind::kTtLr:
    case RowSpec::Kind::kTtMlp: {
      auto model = predictors::TrainWithMechanism(hyper, data, predictors::TrainingMechanism::Vanilla(),
                                                  DeriveSeed(seed, {1}));
      const auto cfg = TensorizeConfigFor(row.kind == RowSpec::Kind::kTtMlp, row.bins, data.size(),
                                          DeriveSeed(seed, {2}));
      auto result = tensorize::TensorizeModel(
          std::make_shared<predictors::ModelScorer>(std::move(model)), data.features, cfg);
      return privacy::TargetFromTt(std::move(result.tt));
    }
    case RowSpec::Kind::kDpLr: {
      defenses::DpLrConfig dp;
      dp.epsilon = row.epsilon;
      dp.C = std::get<predictors::LrHyper>(hyper).C;
      dp.frame = context.public_frame;
      return privacy::TargetFromModel(defenses::DpLrTrain(data, dp, seed));
    }
    case RowSpec::Kind::kDpSgd: {
      defenses::DpSgdConfig dp;
      dp.noise_multiplier = row.noise_multiplier;
      dp.hyper = std::get<predictors::MlpHyper>(hyper);
      dp.epochs = dp.hyper.epochs;
      return privacy::TargetFromModel(defenses::DpSgdTrain(data, dp, seed));
    }
  }
  Fail(ErrorCode::kInternal, "unhandled row kind");
}

privacy::AttackOptions AttackOptionsFor(const ExperimentConfig& config, std::uint64_t seed) {
  privacy::AttackOptions o;
  o.repeats = config.repeats;
  o.folds = config.folds;
  o.seed = seed;
  o.adversary = config.adversary;
  return o;
}

RowOutcome RunAttackRow(const RowSpec& row, const ExperimentConfig& config,
                        std::span<const cohorts::Cohort> cohorts) {
  const std::string name = row.Name();
  const RowContext context = MakeRowContext(config, cohorts);
  privacy::ShadowConfig shadow;
  shadow.replicates = config.replicates;
  shadow.max_union_size = config.max_union_size;
  shadow.probe_count = config.probes;
  shadow.access = config.AccessLevels();
  shadow.seed = DeriveSeed(config.seed, {HashTag("shadow"), HashTag(name)});
  shadow.model_kind = KindName(row.kind);
  shadow.mechanism = row.averaged ? privacy::MechanismName(Mechanism(row, config)) : "vanilla";
  for (const auto& h : Grid(row, config)) shadow.grid_names.push_back(privacy::HyperName(h));
  if (IsLinear(row.kind)) {
    // Type weights are only identified up to a shift absorbed by the intercept.
    shadow.white_box_transform = [](std::vector<double>& p) {
      privacy::CanonicalizeOneHot(p, cohorts::kFirstCancerType, cohorts::kCancerTypes);
    };
  }
  const privacy::ShadowTrainer trainer = [&](const Dataset& data, std::size_t g, std::uint64_t s) {
    return TrainRowTarget(row, context, data, g, s);
  };

  RowOutcome out;
  out.corpora = privacy::BuildShadowCorpora(cohorts, GridSize(row, config), trainer, shadow);
  out.row.name = name;
  for (const auto& corpus : out.corpora) {
    out.row.failures = corpus.failures.size();
    const auto options =
        AttackOptionsFor(config, DeriveSeed(config.seed, {HashTag("attack"), HashTag(name),
                                                          HashTag(corpus.access)}));
    out.results.push_back(privacy::RunAttack(corpus, options));
    out.row.cells.push_back(
        ScoreCell{out.results.back().mean, out.results.back().std, corpus.records.size()});
  }
  return out;
}

ScoreTable RunScoreTable(std::span<const RowSpec> rows, const ExperimentConfig& config,
                         std::span<const cohorts::Cohort> cohorts,
                         std::vector<RowOutcome>* outcomes) {
  ScoreTable table;
  table.columns.clear();
  for (const auto& a : config.AccessLevels()) table.columns.push_back(a.Name());
  for (const auto& row : rows) {
    LogInfo("attacking row " + row.Name());
    RowOutcome outcome = RunAttackRow(row, config, cohorts);
    table.rows.push_back(outcome.row);
    if (outcomes) outcomes->push_back(std::move(outcome));
  }
  return table;
}

double ShuffledBaseline(const privacy::AttackCorpus& corpus, const privacy::AttackOptions& options,
                        int shuffles, std::uint64_t seed) {
  Require(shuffles >= 1, ErrorCode::kArgument, "need at least one shuffle");
  double sum = 0.0;
  for (int k = 0; k < shuffles; ++k) {
    const auto shuffled =
        privacy::ShuffleLabels(corpus, DeriveSeed(seed, {static_cast<std::uint64_t>(k)}));
    sum += privacy::RunAttack(shuffled, options).mean;
  }
  return sum / shuffles;
}

Dataset HeldOutData(const ExperimentConfig& config) {
  Require(config.cohort_paths.empty(), ErrorCode::kUnsupported,
          "held-out data needs a synthetic preset");
  auto specs = cohorts::Preset(config.preset);
  if (config.drift)
    for (auto& s : specs) s.drift = *config.drift;
  const auto held = cohorts::GenerateCohorts(specs, SubSeed(config, "heldout"));
  return cohorts::Pool(held);
}

std::vector<UtilityRow> RunUtility(std::span<const RowSpec> rows, const ExperimentConfig& config,
                                   std::span<const cohorts::Cohort> cohorts, const Dataset& test,
                                   int trainings) {
  Require(trainings >= 1, ErrorCode::kArgument, "need at least one training");
  std::vector<RowSpec> all{RowSpec::Parse("lr/vanilla"), RowSpec::Parse("mlp/vanilla")};
  for (const auto& r : rows)
    if (std::none_of(all.begin(), all.end(), [&](const RowSpec& a) { return a.Name() == r.Name(); }))
      all.push_back(r);
  const Dataset train = PooledData(cohorts);
  const RowContext context = MakeRowContext(config, cohorts);
  std::vector<UtilityRow> out(all.size());
  std::vector<predictors::Metrics> metrics(all.size() * static_cast<std::size_t>(trainings));
  ParallelFor(metrics.size(), [&](std::size_t job) {
    const std::size_t r = job / static_cast<std::size_t>(trainings);
    const std::uint64_t t = job % static_cast<std::size_t>(trainings);
    // Every row uses the same training seeds.
    const auto target =
        TrainRowTarget(all[r], context, train, 0, DeriveSeed(config.seed, {HashTag("utility"), t}));
    metrics[job] = predictors::EvaluateScores(target.scorer->ScoreAll(test.features), test.labels);
  });
  for (std::size_t r = 0; r < all.size(); ++r) {
    out[r].name = all[r].Name();
    out[r].trainings = trainings;
    for (int t = 0; t < trainings; ++t) {
      const auto& m = metrics[r * static_cast<std::size_t>(trainings) + static_cast<std::size_t>(t)];
      out[r].balanced_accuracy += m.balanced_accuracy / trainings;
      out[r].auc += m.auc / trainings;
    }
  }
  return out;
}

std::string UtilityToCsv(const std::vector<UtilityRow>& rows) {
  std::string out = "row,balanced_accuracy,auc,trainings\n";
  for (const auto& r : rows)
    out += r.name + ',' + cohorts::FormatDouble(r.balanced_accuracy) + ',' +
           cohorts::FormatDouble(r.auc) + ',' + std::to_string(r.trainings) + '\n';
  return out;
}

std::shared_ptr<const predictors::Scorer> LoadScorer(const ExperimentConfig& config,
                                                     const ModelSource& source) {
  if (!source.tt_path.empty())
    return std::make_shared<tensorize::TtScorer>(
        tt::FromJsonString(ReadTextFile(source.tt_path)));
  if (!source.model_path.empty())
    return std::make_shared<predictors::ModelScorer>(LoadModelFile(source.model_path));
  const auto cohorts = config.LoadCohorts();
  return std::make_shared<predictors::ModelScorer>(DefaultModel(config, PooledData(cohorts)));
}

CommandResult CommandGen(const ExperimentConfig& config) {
  Prepare(config);
  ArtifactStore store(config.out);
  Manifest manifest("gen", ConfigHash(config));
  manifest.AddSeed("cohorts", SubSeed(config, "cohorts"));
  const auto cohorts = config.LoadCohorts();
  CommandResult result;
  result.summary["cohorts"] = nlohmann::json::array();
  for (const auto& c : cohorts) {
    const std::string file = store.Put("cohort-" + Stem(c.name), "csv", cohorts::CohortToCsv(c));
    manifest.AddArtifact("cohort", file);
    result.summary["cohorts"].push_back(
        {{"name", c.name}, {"size", c.size()}, {"response_rate", c.response_rate()}, {"file", file}});
    char line[160];
    std::snprintf(line, sizeof(line), "%-10s n=%-5zu response=%.3f  %s\n", c.name.c_str(),
                  c.size(), c.response_rate(), file.c_str());
    result.text += line;
  }
  result.summary["manifest"] = manifest.Write(store);
  return result;
}

CommandResult CommandTrain(const ExperimentConfig& config, const TrainRequest& request) {
  Prepare(config);
  Require(request.model == "lr" || request.model == "mlp", ErrorCode::kArgument,
          "model must be lr or mlp");
  Require(request.mechanism == "vanilla" || request.mechanism == "averaged", ErrorCode::kArgument,
          "mechanism must be vanilla or averaged");
  const auto cohorts = config.LoadCohorts();
  std::vector<std::size_t> members = request.members;
  if (members.empty()) {
    members.resize(cohorts.size());
    std::iota(members.begin(), members.end(), 0);
  }
  for (std::size_t m : members)
    Require(m < cohorts.size(), ErrorCode::kArgument, "cohort index " + std::to_string(m) + " out of range");
  const auto data = cohorts::Union(cohorts, members).data;
  const RowSpec row = RowSpec::Parse(request.model + "/" + request.mechanism);
  const auto& grid = Grid(row, config);
  Require(request.grid_index < grid.size(), ErrorCode::kArgument, "grid index out of range");
  const std::uint64_t seed = SubSeed(config, "train");
  const auto model = predictors::TrainWithMechanism(grid[request.grid_index], data,
                                                    Mechanism(row, config), seed);

  ArtifactStore store(config.out);
  Manifest manifest("train", ConfigHash(config));
  manifest.AddSeed("train", seed);
  const std::string file =
      store.Put("model-" + request.model + "-" + request.mechanism, "json",
                predictors::ModelToJson(model).dump(2) + "\n");
  manifest.AddArtifact("model", file);
  manifest.Set("members", members);
  CommandResult result;
  result.summary = {{"model", file}, {"parameters", predictors::Parameters(model).size()}};
  result.text = "model " + file + " (" + std::to_string(predictors::Parameters(model).size()) +
                " parameters)\n";
  if (config.cohort_paths.empty()) {
    const Dataset test = HeldOutData(config);
    const auto m = predictors::EvaluateScores(
        predictors::ModelScorer(model).ScoreAll(test.features), test.labels);
    result.summary["heldout"] = MetricsJson(m);
    manifest.Set("heldout", MetricsJson(m));
    char line[128];
    std::snprintf(line, sizeof(line), "held-out balanced accuracy %.3f, AUC %.3f\n",
                  m.balanced_accuracy, m.auc);
    result.text += line;
  }
  result.summary["manifest"] = manifest.Write(store);
  return result;
}

CommandResult CommandTensorize(const ExperimentConfig& config, const ModelSource& source) {
  Prepare(config);
  const auto cohorts = config.LoadCohorts();
  const Dataset pool = PooledData(cohorts);
  const auto model = SourceModel(config, source, pool);
  const std::uint64_t seed = SubSeed(config, "tensorize");
  const auto cfg = TensorizeConfigFor(!predictors::IsLogistic(model), config.tensorize_bins,
                                      pool.size(), seed);
  auto scorer = std::make_shared<predictors::ModelScorer>(model);
  const auto result_tt = tensorize::TensorizeModel(scorer, pool.features, cfg);
  const tensorize::TtScorer tt_scorer(result_tt.tt);
  const auto a = scorer->ScoreAll(pool.features);
  const auto b = tt_scorer.ScoreAll(pool.features);
  double mad = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) mad += std::abs(a[i] - b[i]) / static_cast<double>(a.size());

  ArtifactStore store(config.out);
  Manifest manifest("tensorize", ConfigHash(config));
  manifest.AddSeed("tensorize", seed);
  const std::string file = store.Put("tt-" + cfg.access().Name(), "json",
                                     tt::ToJson(result_tt.tt).dump(2) + "\n");
  manifest.AddArtifact("tt", file);
  CommandResult result;
  result.summary = {{"tt", file},
                    {"access", cfg.access().Name()},
                    {"queries", result_tt.stats.queries},
                    {"parameters", result_tt.tt.parameter_count()},
                    {"mean_abs_deviation", mad},
                    {"model", predictors::EvaluateScores(a, pool.labels).balanced_accuracy},
                    {"tensor_train", predictors::EvaluateScores(b, pool.labels).balanced_accuracy}};
  manifest.Set("fidelity", result.summary);
  char line[256];
  std::snprintf(line, sizeof(line),
                "tensor train %s: %zu parameters, %zu queries, mean |p_model - p_tt| = %.4f\n",
                file.c_str(), result_tt.tt.parameter_count(), result_tt.stats.queries, mad);
  result.text = line;
  result.summary["manifest"] = manifest.Write(store);
  return result;
}

namespace {

CommandResult ScoreCommand(const ExperimentConfig& config, const std::string& command,
                           const std::vector<RowSpec>& rows) {
  const auto cohorts = config.LoadCohorts();
  std::vector<RowOutcome> outcomes;
  const ScoreTable table = RunScoreTable(rows, config, cohorts, &outcomes);

  const std::string hash = ConfigHash(config);
  ArtifactStore store(config.out);
  Manifest manifest(command, hash);
  manifest.AddSeed("cohorts", SubSeed(config, "cohorts"));
  for (const auto& o : outcomes)
    for (std::size_t k = 0; k < o.corpora.size(); ++k) {
      const auto& corpus = o.corpora[k];
      const std::string stem = "corpus-" + Stem(o.row.name) + "-" + corpus.access;
      manifest.AddArtifact("corpus", store.Put(stem, "csv", privacy::CorpusToCsv(corpus)));
      manifest.AddArtifact("corpus-manifest",
                           store.Put(stem, "json", privacy::CorpusManifest(corpus).dump(2) + "\n"));
      manifest.AddSeed("shadow:" + o.row.name, corpus.seed);
    }
  const std::string stem = "scores-" + command + "-" + hash;
  const std::string json_file = store.Put(stem, "json", TableToJson(table).dump(2) + "\n");
  manifest.AddArtifact("scores", json_file);
  manifest.AddArtifact("scores-csv", store.Put(stem, "csv", TableToCsv(table)));
  const std::string text = FormatTable(table);
  manifest.AddArtifact("scores-text", store.Put(stem, "txt", text));

  CommandResult result;
  result.summary = {{"scores", json_file}, {"table", TableToJson(table)}};
  result.text = text;
  if (command == "defend") {
    if (config.cohort_paths.empty()) {
      const auto utility = RunUtility(rows, config, cohorts, HeldOutData(config), 5);
      const std::string file = store.Put("utility-" + hash, "csv", UtilityToCsv(utility));
      manifest.AddArtifact("utility", file);
      result.summary["utility"] = file;
      result.text += "\nheld-out balanced accuracy\n";
      for (const auto& u : utility) {
        char line[128];
        std::snprintf(line, sizeof(line), "  %-20s %.3f (AUC %.3f)\n", u.name.c_str(),
                      u.balanced_accuracy, u.auc);
        result.text += line;
      }
    } else {
      LogWarning("utility needs a synthetic preset; skipped for CSV cohorts");
    }
  }
  result.summary["manifest"] = manifest.Write(store);
  return result;
}

}  // namespace

CommandResult CommandAttack(const ExperimentConfig& config) {
  Prepare(config);
  return ScoreCommand(config, "attack", config.AttackRows());
}

CommandResult CommandDefend(const ExperimentConfig& config) {
  Prepare(config);
  return ScoreCommand(config, "defend", config.DefendRows());
}

CommandResult CommandSensitivity(const ExperimentConfig& config, const ModelSource& source) {
  Prepare(config);
  const auto cohorts = config.LoadCohorts();
  const Dataset pool = PooledData(cohorts);
  const auto model = SourceModel(config, source, pool);
  const std::uint64_t seed = SubSeed(config, "sensitivity");
  const auto cfg = TensorizeConfigFor(!predictors::IsLogistic(model), config.tensorize_bins,
                                      pool.size(), seed);
  const auto tt =
      tensorize::TensorizeModel(std::make_shared<predictors::ModelScorer>(model), pool.features, cfg).tt;

  interpret::SensitivityOptions options;
  options.frame = Standardizer::Fit(pool.features);
  options.source = predictors::IsLogistic(model) ? "tt-lr" : "tt-mlp";
  const auto global = interpret::FeatureSensitivity(tt, options);
  std::string csv = interpret::SensitivityToCsv(global);
  nlohmann::json by_type = nlohmann::json::array();
  for (int t = 1; t <= static_cast<int>(cohorts::kCancerTypes); ++t) {
    const auto r = interpret::SensitivityByType(tt, t, options);
    const std::string rows = interpret::SensitivityToCsv(r);
    csv += rows.substr(rows.find('\n') + 1);
    by_type.push_back({{"cancer_type", t}, {"max_over_global", r.normalization / global.normalization}});
  }

  ArtifactStore store(config.out);
  Manifest manifest("sensitivity", ConfigHash(config));
  manifest.AddSeed("sensitivity", seed);
  const std::string file = store.Put("sensitivity", "csv", csv);
  manifest.AddArtifact("sensitivity", file);
  CommandResult result;
  result.summary = {{"sensitivity", file}, {"global", interpret::SensitivityToJson(global)},
                    {"by_type", by_type}};
  result.text = "feature            normalized\n";
  for (const auto& e : global.entries) {
    char line[96];
    std::snprintf(line, sizeof(line), "%-18s %+.3f\n", e.feature.c_str(), e.normalized);
    result.text += line;
  }
  if (const auto* lr = std::get_if<predictors::LogisticModel>(&model)) {
    std::vector<double> w = lr->weights;
    double top = 0.0;
    for (double v : w) top = std::max(top, std::abs(v));
    if (top > 0.0)
      for (double& v : w) v /= top;
    const double r = interpret::Pearson(global.normalized_scores(), w);
    result.summary["pearson_vs_coefficients"] = r;
    char line[96];
    std::snprintf(line, sizeof(line), "Pearson vs LR coefficients: %.4f\n", r);
    result.text += line;
  }
  result.text += "written " + file + "\n";
  result.summary["manifest"] = manifest.Write(store);
  return result;
}

CommandResult CommandMonotonicity(const ExperimentConfig& config, const ModelSource& source) {
  Prepare(config);
  const auto cohorts = config.LoadCohorts();
  const Dataset pool = PooledData(cohorts);
  const auto model = SourceModel(config, source, pool);
  const std::uint64_t seed = SubSeed(config, "monotonicity");
  const auto cfg = TensorizeConfigFor(!predictors::IsLogistic(model), config.tensorize_bins,
                                      pool.size(), seed);
  auto scorer = std::make_shared<predictors::ModelScorer>(model);
  const tensorize::TtScorer tt(tensorize::TensorizeModel(scorer, pool.features, cfg).tt);
  const Dataset eval = config.cohort_paths.empty() ? HeldOutData(config) : pool;

  ArtifactStore store(config.out);
  Manifest manifest("monotonicity", ConfigHash(config));
  manifest.AddSeed("monotonicity", seed);
  CommandResult result;
  const std::string base = predictors::IsLogistic(model) ? "lr" : "mlp";
  const std::vector<std::pair<std::string, std::vector<double>>> curves = {
      {base, scorer->ScoreAll(eval.features)},
      {"tt-" + base + "-" + cfg.access().Name(), tt.ScoreAll(eval.features)}};
  for (const auto& [name, scores] : curves) {
    const auto curve = interpret::ComputeMonotonicityCurve(scores, eval.labels, 10, 1000,
                                                           DeriveSeed(seed, {HashTag(name)}));
    const std::string csv = store.Put("curve-" + name, "csv", interpret::CurveToCsv(curve));
    const std::string svg = store.Put("curve-" + name, "svg", interpret::CurveToSvg(curve, name));
    manifest.AddArtifact("curve", csv);
    manifest.AddArtifact("plot", svg);
    result.summary[name] = interpret::CurveToJson(curve);
    result.summary[name]["csv"] = csv;
    result.summary[name]["svg"] = svg;
    auto threshold = [](const std::optional<double>& t) {
      char buf[32] = "-";
      if (t) std::snprintf(buf, sizeof(buf), "%.3f", *t);
      return std::string(buf);
    };
    char line[200];
    std::snprintf(line, sizeof(line), "%-16s slope %.3f  10%%-crossing %s  50%%-crossing %s  %s\n",
                  name.c_str(), curve.slope, threshold(curve.unlikely_threshold).c_str(),
                  threshold(curve.likely_threshold).c_str(), svg.c_str());
    result.text += line;
  }
  result.summary["manifest"] = manifest.Write(store);
  return result;
}

CommandResult CommandReport(const ExperimentConfig& config,
                            const std::vector<std::string>& table_paths) {
  config.Validate();
  std::vector<std::string> paths = table_paths;
  if (paths.empty()) {
    const std::string hash = ConfigHash(config);
    Require(fs::is_directory(config.out), ErrorCode::kIo,
            "output directory '" + config.out + "' does not exist");
    for (const char* command : {"attack", "defend"}) {
      const std::string prefix = std::string("scores-") + command + "-" + hash + "-";
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(config.out)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind(prefix, 0) == 0 && entry.path().extension() == ".json")
          found.push_back(entry.path().string());
      }
      std::sort(found.begin(), found.end());
      paths.insert(paths.end(), found.begin(), found.end());
    }
    Require(!paths.empty(), ErrorCode::kIo,
            "no score tables for config " + hash + " in '" + config.out + "'; run attack or defend first");
  }
  std::vector<ScoreTable> tables;
  for (const auto& p : paths) {
    try {
      tables.push_back(TableFromJson(nlohmann::json::parse(ReadTextFile(p))));
    } catch (const nlohmann::json::exception& e) {
      Fail(ErrorCode::kParse, "score table '" + p + "': " + e.what());
    }
  }
  const ScoreTable merged = MergeTables(tables);
  CommandResult result;
  result.text = "Hamming scores (mean \xC2\xB1 std)\n" + FormatTable(merged);
  result.summary = {{"tables", paths}, {"table", TableToJson(merged)}};
  ArtifactStore store(config.out);
  result.summary["report"] = store.Put("report-" + ConfigHash(config), "txt", result.text);
  return result;
}

void CommandServe(const ExperimentConfig& config, const ModelSource& source,
                  const std::function<void(int)>& on_ready) {
  Prepare(config);
  PredictionServer server(LoadScorer(config, source), config.decimals);
  const int port = server.Bind(config.host, config.port);
  if (on_ready) on_ready(port);
  server.Listen();
}

}  // namespace ttshield::harness
