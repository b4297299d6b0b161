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
#include "harness/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "cohorts/csv.hpp"
#include "cohorts/generator.hpp"
#include "common/error.hpp"
#include "common/random.hpp"
#include "predictors/model_io.hpp"

namespace ttshield::harness {
namespace {

std::string Number(double v) { return cohorts::FormatDouble(v); }

double ParseNumber(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  Fail(ErrorCode::kArgument, "bad " + what + " '" + text + "'");
}

template <typename T>
void Read(const nlohmann::json& doc, const char* key, T& field) {
  if (!doc.contains(key)) return;
  try {
    field = doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    Fail(ErrorCode::kParse, std::string("config field '") + key + "' has the wrong type");
  }
}

std::vector<predictors::ModelHyper> ReadGrid(const nlohmann::json& doc, bool mlp) {
  Require(doc.is_array(), ErrorCode::kParse, "hyper grid must be an array");
  std::vector<predictors::ModelHyper> grid;
  for (nlohmann::json h : doc) {
    if (mlp && !h.contains("hidden")) h["hidden"] = predictors::MlpHyper{}.hidden;
    Require(mlp || !h.contains("hidden"), ErrorCode::kParse, "lr_grid entry has 'hidden'");
    grid.push_back(predictors::HyperFromJson(h));
  }
  return grid;
}

}  // namespace

std::string RowSpec::Name() const {
  const std::string mech = averaged ? "averaged" : "vanilla";
  switch (kind) {
    case Kind::kLr: return "lr/" + mech;
    case Kind::kMlp: return "mlp/" + mech;
    case Kind::kTtLr: return "tt-lr/b=" + std::to_string(bins);
    case Kind::kTtMlp: return "tt-mlp/b=" + std::to_string(bins);
    case Kind::kDpLr: return "dp-lr/eps=" + Number(epsilon);
    case Kind::kDpSgd: return "dp-sgd/sigma=" + Number(noise_multiplier);
  }
  return "";
}

RowSpec RowSpec::Parse(const std::string& text) {
  const auto slash = text.find('/');
  Require(slash != std::string::npos, ErrorCode::kArgument,
          "row '" + text + "' must look like kind/setting");
  const std::string kind = text.substr(0, slash);
  const std::string rest = text.substr(slash + 1);
  RowSpec row;
  auto value = [&](const std::string& key) {
    Require(rest.rfind(key + "=", 0) == 0, ErrorCode::kArgument,
            "row '" + text + "' needs " + key + "=<value>");
    return rest.substr(key.size() + 1);
  };
  if (kind == "lr" || kind == "mlp") {
    row.kind = kind == "lr" ? Kind::kLr : Kind::kMlp;
    Require(rest == "vanilla" || rest == "averaged", ErrorCode::kArgument,
            "row '" + text + "': mechanism must be vanilla or averaged");
    row.averaged = rest == "averaged";
  } else if (kind == "tt-lr" || kind == "tt-mlp") {
    row.kind = kind == "tt-lr" ? Kind::kTtLr : Kind::kTtMlp;
    const std::string b = value("b");
    row.bins = b == "sbb" ? 0 : static_cast<int>(ParseNumber(b, "bin count"));
    Require(row.bins == 0 || row.bins >= 2, ErrorCode::kArgument,
            "row '" + text + "': bins must be >= 2 or sbb");
  } else if (kind == "dp-lr") {
    row.kind = Kind::kDpLr;
    const std::string e = value("eps");
    row.epsilon = e == "inf" ? INFINITY : ParseNumber(e, "epsilon");
    Require(row.epsilon > 0.0, ErrorCode::kArgument, "row '" + text + "': epsilon must be > 0");
  } else if (kind == "dp-sgd") {
    row.kind = Kind::kDpSgd;
    row.noise_multiplier = ParseNumber(value("sigma"), "noise multiplier");
    Require(row.noise_multiplier >= 0.0, ErrorCode::kArgument,
            "row '" + text + "': sigma must be >= 0");
  } else {
    Fail(ErrorCode::kArgument, "unknown row kind '" + kind + "'");
  }
  return row;
}

ExperimentConfig::ExperimentConfig()
    : lr_grid{predictors::LrHyper{0.5, 1.0}, predictors::LrHyper{0.0, 10.0}},
      mlp_grid{predictors::MlpHyper{}, predictors::MlpHyper{{19, 19}, 100, 32, 1e-3, 1e-3}} {}

std::vector<RowSpec> ExperimentConfig::AttackRows() const {
  std::vector<RowSpec> rows;
  for (const auto& r : attack_rows) rows.push_back(RowSpec::Parse(r));
  return rows;
}

std::vector<RowSpec> ExperimentConfig::DefendRows() const {
  std::vector<RowSpec> rows;
  if (!defend_rows.empty()) {
    for (const auto& r : defend_rows) rows.push_back(RowSpec::Parse(r));
    return rows;
  }
  for (double e : epsilons) {
    RowSpec r;
    r.kind = RowSpec::Kind::kDpLr;
    r.epsilon = e;
    rows.push_back(r);
  }
  for (int b : bins) {
    RowSpec r;
    r.kind = RowSpec::Kind::kTtLr;
    r.bins = b;
    rows.push_back(r);
  }
  RowSpec tt_mlp;
  tt_mlp.kind = RowSpec::Kind::kTtMlp;
  tt_mlp.bins = 2;
  rows.push_back(tt_mlp);
  return rows;
}

std::vector<tensorize::AccessLevel> ExperimentConfig::AccessLevels() const {
  std::vector<tensorize::AccessLevel> out;
  for (const auto& a : access) out.push_back(tensorize::AccessLevel::Parse(a));
  return out;
}

std::vector<cohorts::Cohort> ExperimentConfig::LoadCohorts() const {
  if (!cohort_paths.empty()) {
    std::vector<cohorts::Cohort> out;
    for (const auto& p : cohort_paths) out.push_back(cohorts::LoadCohortCsv(p));
    return out;
  }
  auto specs = cohorts::Preset(preset);
  if (drift)
    for (auto& s : specs) s.drift = *drift;
  return cohorts::GenerateCohorts(specs, SubSeed(*this, "cohorts"));
}

void ExperimentConfig::Validate() const {
  auto need = [](bool ok, const std::string& field) {
    Require(ok, ErrorCode::kArgument, "invalid config field '" + field + "'");
  };
  need(!lr_grid.empty(), "lr_grid");
  need(!mlp_grid.empty(), "mlp_grid");
  for (const auto& h : lr_grid) need(std::holds_alternative<predictors::LrHyper>(h), "lr_grid");
  for (const auto& h : mlp_grid) need(std::holds_alternative<predictors::MlpHyper>(h), "mlp_grid");
  need(averaged_repetitions >= 1, "averaged_repetitions");
  need(averaged_folds >= 2, "averaged_folds");
  for (int b : bins) need(b >= 2, "bins");
  for (double e : epsilons) need(e > 0.0, "eps");
  need(!access.empty(), "access");
  AccessLevels();
  AttackRows();
  DefendRows();
  need(replicates >= 1, "replicates");
  need(probes >= 1, "probes");
  need(repeats >= 1, "repeats");
  need(folds >= 2, "folds");
  need(tensorize_bins == 0 || tensorize_bins >= 2, "tensorize_bins");
  need(drift.value_or(0.0) >= 0.0, "drift");
  need(decimals >= 1 && decimals <= 15, "decimals");
  need(port >= 0 && port <= 65535, "port");
  need(!out.empty(), "out");
}

ExperimentConfig ConfigFromJson(const nlohmann::json& doc) {
  Require(doc.is_object(), ErrorCode::kParse, "config must be a JSON object");
  static const std::set<std::string> kKeys = {
      "seed", "preset", "drift", "cohort_paths", "lr_grid", "mlp_grid",
      "averaged_repetitions", "averaged_folds", "attack_rows", "defend_rows", "bins", "eps",
      "access", "replicates", "probes", "max_union_size", "repeats", "folds", "adversary",
      "tensorize_bins", "out", "workers", "decimals", "host", "port"};
  for (const auto& [key, _] : doc.items())
    Require(kKeys.count(key) > 0, ErrorCode::kParse, "unknown config field '" + key + "'");
  ExperimentConfig c;
  Read(doc, "seed", c.seed);
  Read(doc, "preset", c.preset);
  if (doc.contains("drift") && !doc.at("drift").is_null()) {
    double d = 0.0;
    Read(doc, "drift", d);
    c.drift = d;
  }
  Read(doc, "cohort_paths", c.cohort_paths);
  if (doc.contains("lr_grid")) c.lr_grid = ReadGrid(doc.at("lr_grid"), false);
  if (doc.contains("mlp_grid")) c.mlp_grid = ReadGrid(doc.at("mlp_grid"), true);
  Read(doc, "averaged_repetitions", c.averaged_repetitions);
  Read(doc, "averaged_folds", c.averaged_folds);
  Read(doc, "attack_rows", c.attack_rows);
  Read(doc, "defend_rows", c.defend_rows);
  Read(doc, "bins", c.bins);
  Read(doc, "eps", c.epsilons);
  Read(doc, "access", c.access);
  Read(doc, "replicates", c.replicates);
  Read(doc, "probes", c.probes);
  Read(doc, "max_union_size", c.max_union_size);
  Read(doc, "repeats", c.repeats);
  Read(doc, "folds", c.folds);
  if (doc.contains("adversary")) {
    const auto& a = doc.at("adversary");
    Read(a, "hidden", c.adversary.hidden);
    Read(a, "epochs", c.adversary.epochs);
    Read(a, "batch_size", c.adversary.batch_size);
    Read(a, "learning_rate", c.adversary.learning_rate);
  }
  Read(doc, "tensorize_bins", c.tensorize_bins);
  Read(doc, "out", c.out);
  Read(doc, "workers", c.workers);
  Read(doc, "decimals", c.decimals);
  Read(doc, "host", c.host);
  Read(doc, "port", c.port);
  c.Validate();
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kIo, "cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, "config '" + path + "': " + e.what());
  }
  return ConfigFromJson(doc);
}

nlohmann::json ConfigToJson(const ExperimentConfig& c) {
  nlohmann::json lr = nlohmann::json::array(), mlp = nlohmann::json::array();
  for (const auto& h : c.lr_grid) lr.push_back(predictors::HyperToJson(h));
  for (const auto& h : c.mlp_grid) mlp.push_back(predictors::HyperToJson(h));
  return {{"seed", c.seed},
          {"preset", c.preset},
          {"drift", c.drift ? nlohmann::json(*c.drift) : nlohmann::json()},
          {"cohort_paths", c.cohort_paths},
          {"lr_grid", lr},
          {"mlp_grid", mlp},
          {"averaged_repetitions", c.averaged_repetitions},
          {"averaged_folds", c.averaged_folds},
          {"attack_rows", c.attack_rows},
          {"defend_rows", c.defend_rows},
          {"bins", c.bins},
          {"eps", c.epsilons},
          {"access", c.access},
          {"replicates", c.replicates},
          {"probes", c.probes},
          {"max_union_size", c.max_union_size},
          {"repeats", c.repeats},
          {"folds", c.folds},
          {"adversary",
           {{"hidden", c.adversary.hidden},
            {"epochs", c.adversary.epochs},
            {"batch_size", c.adversary.batch_size},
            {"learning_rate", c.adversary.learning_rate}}},
          {"tensorize_bins", c.tensorize_bins},
          {"out", c.out},
          {"workers", c.workers},
          {"decimals", c.decimals},
          {"host", c.host},
          {"port", c.port}};
}

std::string ContentHash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string ConfigHash(const ExperimentConfig& config) {
  nlohmann::json doc = ConfigToJson(config);
  doc.erase("out");
  doc.erase("workers");
  return ContentHash(doc.dump());
}

std::uint64_t SubSeed(const ExperimentConfig& config, std::string_view purpose) {
  return DeriveSeed(config.seed, {HashTag(purpose)});
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    out.push_back(item.substr(first, item.find_last_not_of(" \t") - first + 1));
  }
  return out;
}

}  // namespace ttshield::harness
