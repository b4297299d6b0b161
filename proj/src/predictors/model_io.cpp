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
#include "predictors/model_io.hpp"

#include "common/error.hpp"

namespace ttshield::predictors {

nlohmann::json StandardizerToJson(const Standardizer& s) {
  return {{"mu", s.mean()}, {"sigma", s.sd()}};
}

Standardizer StandardizerFromJson(const nlohmann::json& doc) {
  return Standardizer(doc.at("mu").get<std::vector<double>>(),
                      doc.at("sigma").get<std::vector<double>>());
}

nlohmann::json HyperToJson(const ModelHyper& hyper) {
  if (const auto* lr = std::get_if<LrHyper>(&hyper)) {
    return {{"l1_ratio", lr->l1_ratio},
            {"C", lr->C},
            {"class_weight", lr->balanced ? "balanced" : "none"},
            {"max_iter", lr->max_iter},
            {"tol", lr->tol}};
  }
  const auto& m = std::get<MlpHyper>(hyper);
  return {{"hidden", m.hidden},
          {"epochs", m.epochs},
          {"batch_size", m.batch_size},
          {"learning_rate", m.learning_rate},
          {"weight_decay", m.weight_decay}};
}

ModelHyper HyperFromJson(const nlohmann::json& doc) {
  if (doc.contains("hidden")) {
    MlpHyper m;
    m.hidden = doc.at("hidden").get<std::vector<std::size_t>>();
    m.epochs = doc.value("epochs", m.epochs);
    m.batch_size = doc.value("batch_size", m.batch_size);
    m.learning_rate = doc.value("learning_rate", m.learning_rate);
    m.weight_decay = doc.value("weight_decay", m.weight_decay);
    return m;
  }
  LrHyper lr;
  lr.l1_ratio = doc.value("l1_ratio", lr.l1_ratio);
  lr.C = doc.value("C", lr.C);
  lr.balanced = doc.value("class_weight", std::string("balanced")) == "balanced";
  lr.max_iter = doc.value("max_iter", lr.max_iter);
  lr.tol = doc.value("tol", lr.tol);
  return lr;
}

nlohmann::json ModelToJson(const Model& model) {
  nlohmann::json doc;
  if (const auto* lr = std::get_if<LogisticModel>(&model)) {
    doc["type"] = "lr";
    doc["hyper"] = HyperToJson(lr->hyper);
  } else {
    const auto& m = std::get<MlpModel>(model);
    doc["type"] = "mlp";
    doc["hyper"] = HyperToJson(m.hyper);
  }
  doc["params"] = Parameters(model);
  doc["standardizer"] = StandardizerToJson(ModelStandardizer(model));
  return doc;
}

Model ModelFromJson(const nlohmann::json& doc) {
  try {
    const std::string type = doc.at("type").get<std::string>();
    Require(type == "lr" || type == "mlp", ErrorCode::kParse,
            "model type must be lr or mlp, got '" + type + "'");
    const auto params = doc.at("params").get<std::vector<double>>();
    Standardizer s = StandardizerFromJson(doc.at("standardizer"));
    ModelHyper hyper = type == "lr" ? ModelHyper(LrHyper{}) : ModelHyper(MlpHyper{});
    if (doc.contains("hyper")) {
      nlohmann::json h = doc.at("hyper");
      if (type == "mlp" && !h.contains("hidden")) h["hidden"] = MlpHyper{}.hidden;
      if (type == "lr") h.erase("hidden");
      hyper = HyperFromJson(h);
    }
    const std::size_t features = s.size();
    return ModelFromParameters(hyper, params, features, std::move(s));
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("model json: ") + e.what());
  }
}

}  // namespace ttshield::predictors
