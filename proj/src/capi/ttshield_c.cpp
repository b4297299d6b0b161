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
#include "ttshield/ttshield.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "json.hpp"

#include "common/error.hpp"
#include "common/log.hpp"
#include "harness/artifacts.hpp"
#include "harness/config.hpp"
#include "harness/experiment.hpp"
#include "predictors/model_io.hpp"
#include "tensorize/tensorize.hpp"
#include "tt/tt_io.hpp"

struct ttshield_config {
  ttshield::harness::ExperimentConfig value;
};

struct ttshield_model {
  std::shared_ptr<const ttshield::predictors::Scorer> scorer;
};

namespace {

using ttshield::ErrorCode;

thread_local std::string t_last_error;

int Record(ErrorCode code, const std::string& message) {
  t_last_error = message;
  return static_cast<int>(code);
}

// Runs fn, mapping exceptions to status codes.
template <typename Fn>
int Guard(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return TTSHIELD_OK;
  } catch (const ttshield::Error& e) {
    return Record(e.code(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return Record(ErrorCode::kParse, e.what());
  } catch (const std::bad_alloc&) {
    return Record(ErrorCode::kInternal, "out of memory");
  } catch (const std::exception& e) {
    return Record(ErrorCode::kInternal, e.what());
  }
}

char* Duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void RequirePointer(const void* p, const char* what) {
  ttshield::Require(p != nullptr, ErrorCode::kArgument, std::string(what) + " is null");
}

nlohmann::json ParseOptions(const char* options_json) {
  if (!options_json || !*options_json) return nlohmann::json::object();
  nlohmann::json doc = nlohmann::json::parse(options_json);
  ttshield::Require(doc.is_object(), ErrorCode::kArgument, "options must be a JSON object");
  return doc;
}

ttshield::harness::ModelSource Source(const nlohmann::json& options) {
  return {options.value("model_path", std::string()), options.value("tt_path", std::string())};
}

}  // namespace

extern "C" {

const char* ttshield_version(void) { return "1.0.0"; }

const char* ttshield_status_name(int status) {
  if (status < 0 || status > static_cast<int>(ErrorCode::kInternal)) return "unknown";
  return ttshield::ErrorCodeName(static_cast<ErrorCode>(status)).data();
}

const char* ttshield_last_error(void) { return t_last_error.c_str(); }

void ttshield_string_free(char* text) { std::free(text); }

void ttshield_set_log_level(int level) {
  if (level < 0) level = 0;
  if (level > 4) level = 4;
  ttshield::SetLogLevel(static_cast<ttshield::LogLevel>(level));
}

int ttshield_config_default(ttshield_config** out) {
  return Guard([&] {
    RequirePointer(out, "out");
    *out = new ttshield_config();
  });
}

int ttshield_config_load(const char* path, ttshield_config** out) {
  return Guard([&] {
    RequirePointer(path, "path");
    RequirePointer(out, "out");
    auto config = std::make_unique<ttshield_config>();
    config->value = ttshield::harness::LoadConfig(path);
    *out = config.release();
  });
}

int ttshield_config_set(ttshield_config* config, const char* key, const char* json_value) {
  return Guard([&] {
    RequirePointer(config, "config");
    RequirePointer(key, "key");
    RequirePointer(json_value, "value");
    nlohmann::json doc = ttshield::harness::ConfigToJson(config->value);
    nlohmann::json value;
    try {
      value = nlohmann::json::parse(json_value);
    } catch (const nlohmann::json::exception&) {
      ttshield::Fail(ErrorCode::kParse,
                     std::string(key) + ": value is not valid JSON: " + json_value);
    }
    doc[key] = value;
    config->value = ttshield::harness::ConfigFromJson(doc);
  });
}

int ttshield_config_to_json(const ttshield_config* config, char** out) {
  return Guard([&] {
    RequirePointer(config, "config");
    RequirePointer(out, "out");
    *out = Duplicate(ttshield::harness::ConfigToJson(config->value).dump(2));
  });
}

int ttshield_config_hash(const ttshield_config* config, char** out) {
  return Guard([&] {
    RequirePointer(config, "config");
    RequirePointer(out, "out");
    *out = Duplicate(ttshield::harness::ConfigHash(config->value));
  });
}

void ttshield_config_free(ttshield_config* config) { delete config; }

int ttshield_run(const ttshield_config* config, const char* command, const char* options_json,
                 char** summary_json, char** text) {
  return Guard([&] {
    namespace h = ttshield::harness;
    RequirePointer(config, "config");
    RequirePointer(command, "command");
    const nlohmann::json options = ParseOptions(options_json);
    const std::string name = command;
    const h::ExperimentConfig& c = config->value;
    h::CommandResult result;
    if (name == "gen") {
      result = h::CommandGen(c);
    } else if (name == "train") {
      h::TrainRequest request;
      request.model = options.value("model", request.model);
      request.mechanism = options.value("mechanism", request.mechanism);
      request.members = options.value("members", request.members);
      request.grid_index = options.value("grid_index", request.grid_index);
      result = h::CommandTrain(c, request);
    } else if (name == "tensorize") {
      result = h::CommandTensorize(c, Source(options));
    } else if (name == "attack") {
      result = h::CommandAttack(c);
    } else if (name == "defend") {
      result = h::CommandDefend(c);
    } else if (name == "sensitivity") {
      result = h::CommandSensitivity(c, Source(options));
    } else if (name == "monotonicity") {
      result = h::CommandMonotonicity(c, Source(options));
    } else if (name == "report") {
      result = h::CommandReport(c, options.value("tables", std::vector<std::string>{}));
    } else {
      ttshield::Fail(ErrorCode::kArgument, "unknown command '" + name + "'");
    }
    std::unique_ptr<char, decltype(&std::free)> summary(
        summary_json ? Duplicate(result.summary.dump(2)) : nullptr, &std::free);
    if (text) *text = Duplicate(result.text);
    if (summary_json) *summary_json = summary.release();
  });
}

int ttshield_serve(const ttshield_config* config, const char* options_json,
                   ttshield_ready_fn on_ready, void* user) {
  return Guard([&] {
    RequirePointer(config, "config");
    const nlohmann::json options = ParseOptions(options_json);
    ttshield::harness::CommandServe(config->value, Source(options), [&](int port) {
      if (on_ready) on_ready(port, user);
    });
  });
}

int ttshield_model_load(const char* path, ttshield_model** out) {
  return Guard([&] {
    RequirePointer(path, "path");
    RequirePointer(out, "out");
    const nlohmann::json doc = nlohmann::json::parse(ttshield::harness::ReadTextFile(path));
    auto model = std::make_unique<ttshield_model>();
    if (doc.contains("cores")) {
      model->scorer = std::make_shared<ttshield::tensorize::TtScorer>(ttshield::tt::FromJson(doc));
    } else {
      model->scorer = std::make_shared<ttshield::predictors::ModelScorer>(
          ttshield::predictors::ModelFromJson(doc));
    }
    *out = model.release();
  });
}

size_t ttshield_model_feature_count(const ttshield_model* model) {
  return model ? model->scorer->feature_count() : 0;
}

int ttshield_model_predict(const ttshield_model* model, const double* x, size_t n,
                           double* probability) {
  return Guard([&] {
    RequirePointer(model, "model");
    RequirePointer(x, "x");
    RequirePointer(probability, "probability");
    ttshield::Require(n == model->scorer->feature_count(), ErrorCode::kShape,
                      "expected " + std::to_string(model->scorer->feature_count()) +
                          " features, got " + std::to_string(n));
    for (size_t j = 0; j < n; ++j)
      ttshield::Require(std::isfinite(x[j]), ErrorCode::kDomain,
                        "feature " + std::to_string(j) + " is not finite");
    *probability = model->scorer->Score({x, n});
  });
}

void ttshield_model_free(ttshield_model* model) { delete model; }

}  // extern "C"
