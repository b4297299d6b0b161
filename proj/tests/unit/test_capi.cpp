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
#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "ttshield/ttshield.h"

namespace {

namespace fs = std::filesystem;

std::string Take(char* text) {
  std::string s = text ? text : "";
  ttshield_string_free(text);
  return s;
}

// Pulls a string field out of a flat JSON summary without a JSON library,
// so this test sees nothing beyond the C header.
std::string Field(const std::string& json, const std::string& key) {
  const auto at = json.find("\"" + key + "\"");
  if (at == std::string::npos) return "";
  const auto open = json.find('"', json.find(':', at) + 1);
  return json.substr(open + 1, json.find('"', open + 1) - open - 1);
}

class CApi : public ::testing::Test {
 protected:
  void SetUp() override {
    ttshield_set_log_level(4);
    dir_ = fs::temp_directory_path() / ("ttshield-capi-" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    ASSERT_EQ(ttshield_config_default(&config_), TTSHIELD_OK);
    const std::string out = "\"" + dir_.string() + "\"";
    ASSERT_EQ(ttshield_config_set(config_, "out", out.c_str()), TTSHIELD_OK);
  }
  void TearDown() override {
    ttshield_config_free(config_);
    fs::remove_all(dir_);
  }

  fs::path dir_;
  ttshield_config* config_ = nullptr;
};

TEST(CApiBasics, StatusNamesAndVersion) {
  EXPECT_STREQ(ttshield_status_name(TTSHIELD_OK), "ok");
  EXPECT_STREQ(ttshield_status_name(TTSHIELD_E_SHAPE), "shape");
  EXPECT_STREQ(ttshield_status_name(TTSHIELD_E_PARSE), "parse");
  EXPECT_STREQ(ttshield_status_name(TTSHIELD_E_RECOVERY), "recovery");
  EXPECT_NE(std::string(ttshield_status_name(99)), "ok");
  EXPECT_GT(std::string(ttshield_version()).size(), 0u);
}

TEST(CApiBasics, NullArgumentsAreRejected) {
  EXPECT_EQ(ttshield_config_default(nullptr), TTSHIELD_E_ARGUMENT);
  EXPECT_GT(std::string(ttshield_last_error()).size(), 0u);
  EXPECT_EQ(ttshield_model_load(nullptr, nullptr), TTSHIELD_E_ARGUMENT);
  ttshield_config_free(nullptr);
  ttshield_model_free(nullptr);
  ttshield_string_free(nullptr);
}

TEST_F(CApi, ConfigSetChangesHashAndJson) {
  char* raw = nullptr;
  ASSERT_EQ(ttshield_config_hash(config_, &raw), TTSHIELD_OK);
  const std::string before = Take(raw);
  EXPECT_EQ(before.size(), 16u);
  ASSERT_EQ(ttshield_config_set(config_, "bins", "[2,6]"), TTSHIELD_OK);
  ASSERT_EQ(ttshield_config_hash(config_, &raw), TTSHIELD_OK);
  EXPECT_NE(Take(raw), before);
  ASSERT_EQ(ttshield_config_to_json(config_, &raw), TTSHIELD_OK);
  const std::string json = Take(raw);
  EXPECT_NE(json.find("\"bins\""), std::string::npos);
}

TEST_F(CApi, BadConfigValuesReportCodes) {
  EXPECT_EQ(ttshield_config_set(config_, "no_such_key", "1"), TTSHIELD_E_PARSE);
  EXPECT_EQ(ttshield_config_set(config_, "bins", "[2,"), TTSHIELD_E_PARSE);
  EXPECT_GT(std::string(ttshield_last_error()).size(), 0u);
  ttshield_config* loaded = nullptr;
  EXPECT_EQ(ttshield_config_load((dir_ / "missing.json").c_str(), &loaded), TTSHIELD_E_IO);
  EXPECT_EQ(loaded, nullptr);
}

TEST_F(CApi, UnknownCommandIsAnArgumentError) {
  EXPECT_EQ(ttshield_run(config_, "bake", nullptr, nullptr, nullptr), TTSHIELD_E_ARGUMENT);
  EXPECT_EQ(ttshield_run(config_, "train", "{\"model\": \"svm\"}", nullptr, nullptr),
            TTSHIELD_E_ARGUMENT);
  EXPECT_EQ(ttshield_run(config_, "train", "{not json", nullptr, nullptr), TTSHIELD_E_PARSE);
}

TEST_F(CApi, TrainLoadAndPredict) {
  char* summary = nullptr;
  char* text = nullptr;
  ASSERT_EQ(ttshield_run(config_, "train", "{\"model\": \"lr\"}", &summary, &text), TTSHIELD_OK)
      << ttshield_last_error();
  const std::string s = Take(summary);
  EXPECT_NE(Take(text).find("parameters"), std::string::npos);
  const std::string file = Field(s, "model");
  ASSERT_FALSE(file.empty()) << s;

  ttshield_model* model = nullptr;
  ASSERT_EQ(ttshield_model_load((dir_ / file).c_str(), &model), TTSHIELD_OK);
  ASSERT_EQ(ttshield_model_feature_count(model), 21u);
  std::vector<double> x(21, 0.0);
  x[0] = 10.0;
  x[2] = 4.0;
  x[3] = 3.0;
  x[4] = 60.0;
  x[5] = 1.0;
  double p = -1.0;
  ASSERT_EQ(ttshield_model_predict(model, x.data(), x.size(), &p), TTSHIELD_OK);
  EXPECT_GT(p, 0.0);
  EXPECT_LT(p, 1.0);
  double again = -1.0;
  ASSERT_EQ(ttshield_model_predict(model, x.data(), x.size(), &again), TTSHIELD_OK);
  EXPECT_EQ(p, again);
  EXPECT_EQ(ttshield_model_predict(model, x.data(), 20, &p), TTSHIELD_E_SHAPE);
  x[1] = std::nan("");
  EXPECT_EQ(ttshield_model_predict(model, x.data(), x.size(), &p), TTSHIELD_E_DOMAIN);
  ttshield_model_free(model);

  ASSERT_EQ(ttshield_run(config_, "tensorize", ("{\"model_path\": \"" + (dir_ / file).string() + "\"}").c_str(),
                         &summary, nullptr),
            TTSHIELD_OK)
      << ttshield_last_error();
  const std::string tt_file = Field(Take(summary), "tt");
  ASSERT_FALSE(tt_file.empty());
  ASSERT_EQ(ttshield_model_load((dir_ / tt_file).c_str(), &model), TTSHIELD_OK);
  EXPECT_EQ(ttshield_model_feature_count(model), 21u);
  x[1] = 0.0;
  ASSERT_EQ(ttshield_model_predict(model, x.data(), x.size(), &p), TTSHIELD_OK);
  EXPECT_GE(p, 0.0);
  EXPECT_LE(p, 1.0);
  ttshield_model_free(model);
}

TEST_F(CApi, LoadRejectsGarbage) {
  fs::create_directories(dir_);
  const auto path = dir_ / "junk.json";
  FILE* f = std::fopen(path.c_str(), "w");
  std::fputs("{\"hello\": 1}", f);
  std::fclose(f);
  ttshield_model* model = nullptr;
  EXPECT_EQ(ttshield_model_load(path.c_str(), &model), TTSHIELD_E_PARSE);
  EXPECT_EQ(model, nullptr);
}

}  // namespace
