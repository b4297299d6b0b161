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
// Command-line front end. Talks to the library through the C API only.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include "json.hpp"

#include "ttshield/ttshield.h"

namespace {

struct Flags {
  std::string config;
  std::string seed;
  std::string out;
  std::string workers;
  std::string bins;
  std::string eps;
  std::string access;
  bool json = false;
  bool verbose = false;
  bool quiet = false;
};

struct CommandOptions {
  std::string model = "lr";
  std::string mechanism = "vanilla";
  std::string members;
  std::size_t grid_index = 0;
  std::string model_path;
  std::string tt_path;
  std::vector<std::string> tables;
  std::string decimals;
  std::string host;
  std::string port;
};

// Single machine-parsable line on stderr; the exit code is the status.
int Report(int status, const char* context) {
  std::fprintf(stderr, "error: status=%d code=%s context=%s message=%s\n", status,
               ttshield_status_name(status), context, ttshield_last_error());
  return status;
}

std::vector<std::string> Split(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// "2,6,10" -> [2,6,10]; strings are kept as JSON strings.
std::string JsonList(const std::string& text, bool numeric) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& item : Split(text)) {
    if (!numeric) {
      list.push_back(item);
      continue;
    }
    try {
      list.push_back(nlohmann::json::parse(item));
    } catch (const nlohmann::json::exception&) {
      list.push_back(item);  // rejected with a field name by the config check
    }
  }
  return list.dump();
}

int Set(ttshield_config* config, const char* key, const std::string& json_value) {
  const int status = ttshield_config_set(config, key, json_value.c_str());
  return status == TTSHIELD_OK ? status : Report(status, key);
}

int BuildConfig(const std::string& command, const Flags& flags, const CommandOptions& options,
                ttshield_config** out) {
  const int status = flags.config.empty() ? ttshield_config_default(out)
                                          : ttshield_config_load(flags.config.c_str(), out);
  if (status != TTSHIELD_OK) return Report(status, "config");
  ttshield_config* c = *out;
  std::string out_dir = flags.out;
  if (const char* env = std::getenv("TTSHIELD_OUT"); env && *env) out_dir = env;
  const std::vector<std::pair<const char*, std::string>> overrides = {
      {"seed", flags.seed},
      {"workers", flags.workers},
      {"out", out_dir.empty() ? "" : nlohmann::json(out_dir).dump()},
      {"bins", flags.bins.empty() ? "" : JsonList(flags.bins, true)},
      {"eps", flags.eps.empty() ? "" : JsonList(flags.eps, true)},
      {"access", flags.access.empty() ? "" : JsonList(flags.access, false)},
      {"decimals", options.decimals},
      {"host", options.host.empty() ? "" : nlohmann::json(options.host).dump()},
      {"port", options.port}};
  for (const auto& [key, value] : overrides) {
    if (value.empty()) continue;
    if (const int s = Set(c, key, value); s != TTSHIELD_OK) return s;
  }
  // Single-model commands tensorize once, at the one bin count given.
  const bool single = command == "tensorize" || command == "sensitivity" || command == "monotonicity";
  if (single && !flags.bins.empty()) {
    const auto bins = Split(flags.bins);
    if (bins.size() != 1) {
      std::fprintf(stderr, "error: status=%d code=argument context=bins message=bins: %s takes one bin count\n",
                   TTSHIELD_E_ARGUMENT, command.c_str());
      return TTSHIELD_E_ARGUMENT;
    }
    return Set(c, "tensorize_bins", bins.front());
  }
  return TTSHIELD_OK;
}

nlohmann::json OptionsJson(const std::string& command, const CommandOptions& o) {
  nlohmann::json doc = nlohmann::json::object();
  if (command == "train") {
    doc["model"] = o.model;
    doc["mechanism"] = o.mechanism;
    doc["grid_index"] = o.grid_index;
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : Split(o.members)) members.push_back(std::stoul(m));
    doc["members"] = members;
  }
  if (!o.model_path.empty()) doc["model_path"] = o.model_path;
  if (!o.tt_path.empty()) doc["tt_path"] = o.tt_path;
  if (!o.tables.empty()) doc["tables"] = o.tables;
  return doc;
}

void OnReady(int port, void* user) {
  const auto* host = static_cast<const std::string*>(user);
  std::printf("serving on http://%s:%d (GET /predict, GET /health)\n", host->c_str(), port);
  std::fflush(stdout);
}

int Run(const std::string& command, const Flags& flags, const CommandOptions& options) {
  ttshield_set_log_level(flags.quiet ? 3 : flags.verbose ? 1 : 2);
  ttshield_config* config = nullptr;
  if (const int s = BuildConfig(command, flags, options, &config); s != TTSHIELD_OK) {
    ttshield_config_free(config);
    return s;
  }
  std::string options_json;
  try {
    options_json = OptionsJson(command, options).dump();
  } catch (const std::exception&) {
    ttshield_config_free(config);
    std::fprintf(stderr, "error: status=%d code=argument context=members message=members: not a list of indices\n",
                 TTSHIELD_E_ARGUMENT);
    return TTSHIELD_E_ARGUMENT;
  }
  int status = TTSHIELD_OK;
  if (command == "serve") {
    char* cfg_json = nullptr;
    std::string host = "127.0.0.1";
    if (ttshield_config_to_json(config, &cfg_json) == TTSHIELD_OK) {
      host = nlohmann::json::parse(cfg_json).value("host", host);
      ttshield_string_free(cfg_json);
    }
    status = ttshield_serve(config, options_json.c_str(), &OnReady, &host);
    if (status != TTSHIELD_OK) Report(status, "serve");
  } else {
    char* summary = nullptr;
    char* text = nullptr;
    status = ttshield_run(config, command.c_str(), options_json.c_str(), &summary, &text);
    if (status == TTSHIELD_OK) {
      std::fputs(flags.json ? summary : text, stdout);
      if (flags.json) std::fputc('\n', stdout);
    } else {
      Report(status, command.c_str());
    }
    ttshield_string_free(summary);
    ttshield_string_free(text);
  }
  ttshield_config_free(config);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ttshield: tensorized classifiers and cohort membership attacks"};
  app.require_subcommand(1);
  Flags flags;
  CommandOptions options;

  struct Spec {
    const char* name;
    const char* help;
  };
  const std::vector<Spec> commands = {
      {"gen", "Generate the synthetic cohorts and write them as CSV"},
      {"train", "Train one LR or MLP on a union of cohorts"},
      {"tensorize", "Tensorize a model from weak black-box access"},
      {"attack", "Shadow-model membership attack on the configured rows"},
      {"defend", "Attack DP and tensor-train defenses and score their utility"},
      {"sensitivity", "Feature sensitivities of a tensorized model"},
      {"monotonicity", "Calibration curves of a model and its tensor train"},
      {"serve", "Serve a model or tensor train over HTTP"},
      {"report", "Print score tables in the Hamming-score layout"}};
  std::string chosen;
  for (const auto& spec : commands) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("--config", flags.config, "JSON experiment config")->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "Master seed");
    sub->add_option("--out", flags.out, "Output directory (TTSHIELD_OUT overrides)");
    sub->add_option("--workers", flags.workers, "Worker threads (0 = all cores)");
    sub->add_option("--bins", flags.bins, "Bin counts, e.g. 2,6,10");
    sub->add_option("--eps", flags.eps, "DP-LR budgets, e.g. 0.1,1,10,100");
    sub->add_option("--access", flags.access, "Access levels, e.g. wbb2,wbb6,wbb10,sbb,wb");
    sub->add_flag("--json", flags.json, "Print the JSON summary instead of text");
    sub->add_flag("-v,--verbose", flags.verbose, "Progress messages");
    sub->add_flag("-q,--quiet", flags.quiet, "Errors only");
    const std::string name = spec.name;
    if (name == "train") {
      sub->add_option("--model", options.model, "lr or mlp")
          ->check(CLI::IsMember({"lr", "mlp"}));
      sub->add_option("--mechanism", options.mechanism, "vanilla or averaged")
          ->check(CLI::IsMember({"vanilla", "averaged"}));
      sub->add_option("--members", options.members, "Cohort indices, e.g. 0,2 (default all)");
      sub->add_option("--grid-index", options.grid_index, "Entry of the hyperparameter grid");
    }
    if (name == "tensorize" || name == "sensitivity" || name == "monotonicity" || name == "serve")
      sub->add_option("--model-path", options.model_path, "Model JSON (default: LR on all cohorts)")
          ->check(CLI::ExistingFile);
    if (name == "serve") {
      sub->add_option("--tt-path", options.tt_path, "Tensor train JSON")->check(CLI::ExistingFile);
      sub->add_option("--decimals", options.decimals, "Rounding of served probabilities");
      sub->add_option("--host", options.host, "Bind address");
      sub->add_option("--port", options.port, "Port (0 = any free port)");
    }
    if (name == "report")
      sub->add_option("--table", options.tables, "Score table JSON (repeatable)")
          ->check(CLI::ExistingFile);
    sub->callback([&chosen, name] { chosen = name; });
  }
  CLI11_PARSE(app, argc, argv);
  return Run(chosen, flags, options);
}
