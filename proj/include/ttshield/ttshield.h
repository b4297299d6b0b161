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
#ifndef TTSHIELD_TTSHIELD_H_
#define TTSHIELD_TTSHIELD_H_

#include <stddef.h>
#include <stdint.h>

#if defined(TTSHIELD_BUILDING_LIBRARY)
#define TTSHIELD_API __attribute__((visibility("default")))
#else
#define TTSHIELD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

// Status codes returned by every fallible call.
typedef enum ttshield_status {
  TTSHIELD_OK = 0,
  TTSHIELD_E_SHAPE = 1,
  TTSHIELD_E_DOMAIN = 2,
  TTSHIELD_E_ARGUMENT = 3,
  TTSHIELD_E_DEGENERATE = 4,
  TTSHIELD_E_TRAINING = 5,
  TTSHIELD_E_PARSE = 6,
  TTSHIELD_E_VALIDATION = 7,
  TTSHIELD_E_ACCESS = 8,
  TTSHIELD_E_UNSUPPORTED = 9,
  TTSHIELD_E_IO = 10,
  TTSHIELD_E_RECOVERY = 11,
  TTSHIELD_E_METRIC = 12,
  TTSHIELD_E_INTERNAL = 13,
} ttshield_status;

typedef struct ttshield_config ttshield_config;
typedef struct ttshield_model ttshield_model;

TTSHIELD_API const char* ttshield_version(void);
// "ok", "shape", "argument", ... for a status value.
TTSHIELD_API const char* ttshield_status_name(int status);
// Message of the last failed call on this thread; "" if none.
TTSHIELD_API const char* ttshield_last_error(void);
// Frees strings returned through char** out-parameters.
TTSHIELD_API void ttshield_string_free(char* text);

// 0 debug, 1 info, 2 warning (default), 3 error, 4 silent.
TTSHIELD_API void ttshield_set_log_level(int level);

TTSHIELD_API int ttshield_config_default(ttshield_config** out);
// JSON experiment config; unknown fields are rejected.
TTSHIELD_API int ttshield_config_load(const char* path, ttshield_config** out);
// Replaces one top-level field with a JSON value, e.g. ("bins", "[2,6]").
TTSHIELD_API int ttshield_config_set(ttshield_config* config, const char* key,
                                     const char* json_value);
TTSHIELD_API int ttshield_config_to_json(const ttshield_config* config, char** out);
TTSHIELD_API int ttshield_config_hash(const ttshield_config* config, char** out);
TTSHIELD_API void ttshield_config_free(ttshield_config* config);

// Runs one command: "gen", "train", "tensorize", "attack", "defend",
// "sensitivity", "monotonicity" or "report". `options_json` may be NULL or a
// JSON object with command options:
//   train:       {"model": "lr"|"mlp", "mechanism": "vanilla"|"averaged",
//                 "members": [0, 2], "grid_index": 0}
//   tensorize, sensitivity, monotonicity: {"model_path": "..."}
//   report:      {"tables": ["...json", ...]}
// On success *summary_json (machine-readable) and *text (human-readable) are
// set; either pointer may be NULL.
TTSHIELD_API int ttshield_run(const ttshield_config* config, const char* command,
                              const char* options_json, char** summary_json, char** text);

// Serves a model or TT ({"model_path": ...} or {"tt_path": ...}) on the
// config's host, port and decimals. Blocks; `on_ready` is called with the
// bound port once requests are accepted.
typedef void (*ttshield_ready_fn)(int port, void* user);
TTSHIELD_API int ttshield_serve(const ttshield_config* config, const char* options_json,
                                ttshield_ready_fn on_ready, void* user);

// Loads a model JSON or a TT JSON (detected from its fields).
TTSHIELD_API int ttshield_model_load(const char* path, ttshield_model** out);
TTSHIELD_API size_t ttshield_model_feature_count(const ttshield_model* model);
// p(y = 1 | x) for raw features x[0..n).
TTSHIELD_API int ttshield_model_predict(const ttshield_model* model, const double* x, size_t n,
                                        double* probability);
TTSHIELD_API void ttshield_model_free(ttshield_model* model);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // TTSHIELD_TTSHIELD_H_
