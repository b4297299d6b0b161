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

#include <filesystem>
#include <fstream>

#include "cohorts/generator.hpp"
#include "common/error.hpp"
#include "harness/artifacts.hpp"
#include "harness/config.hpp"
#include "harness/experiment.hpp"
#include "harness/report.hpp"
#include "harness/serve.hpp"
#include "httplib.h"
#include "predictors/model.hpp"
#include "privacy/recovery.hpp"
#include "tensorize/tensorize.hpp"

namespace ttshield::harness {
namespace {

namespace fs = std::filesystem;

class ConstantScorer final : public predictors::Scorer {
 public:
  explicit ConstantScorer(double v) : v_(v) {}
  double Score(std::span<const double>) const override { return v_; }
  std::size_t feature_count() const override { return 21; }

 private:
  double v_;
};

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

std::string TempDir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() /
                     ("ttshield-test-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

std::vector<double> SampleRow(int type) {
  std::vector<double> x(21, 0.0);
  x[0] = 7.5;
  x[1] = 1.0;
  x[2] = 3.9;
  x[3] = 4.2;
  x[4] = 61.0;
  x[cohorts::CancerTypeFeature(type)] = 1.0;
  return x;
}

TEST(Config, JsonRoundTripKeepsHash) {
  ExperimentConfig c;
  c.seed = 7;
  c.drift = 0.5;
  c.bins = {2, 10};
  const auto back = ConfigFromJson(ConfigToJson(c));
  EXPECT_EQ(ConfigToJson(back), ConfigToJson(c));
  EXPECT_EQ(ConfigHash(back), ConfigHash(c));
  ExperimentConfig d = c;
  d.seed = 8;
  EXPECT_NE(ConfigHash(d), ConfigHash(c));
  d = c;
  d.out = "elsewhere";
  d.workers = 3;
  EXPECT_EQ(ConfigHash(d), ConfigHash(c));
}

TEST(Config, UnknownFieldIsAParseError) {
  auto doc = ConfigToJson(ExperimentConfig{});
  doc["replicas"] = 3;
  EXPECT_EQ(CodeOf([&] { ConfigFromJson(doc); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ConfigFromJson(nlohmann::json::array()); }), ErrorCode::kParse);
}

TEST(Config, LoadFromFile) {
  const std::string dir = TempDir("cfg");
  const std::string path = dir + "/c.json";
  std::ofstream(path) << R"({"seed": 5, "eps": [1, 10], "access": ["sbb"]})";
  const auto c = LoadConfig(path);
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.epsilons, (std::vector<double>{1, 10}));
  EXPECT_EQ(c.AccessLevels().size(), 1u);
  EXPECT_EQ(CodeOf([&] { LoadConfig(dir + "/missing.json"); }), ErrorCode::kIo);
  fs::remove_all(dir);
}

TEST(Config, SubSeedsAreStableAndDistinct) {
  ExperimentConfig c;
  EXPECT_EQ(SubSeed(c, "cohorts"), SubSeed(c, "cohorts"));
  EXPECT_NE(SubSeed(c, "cohorts"), SubSeed(c, "heldout"));
  ExperimentConfig d;
  d.seed = c.seed + 1;
  EXPECT_NE(SubSeed(c, "cohorts"), SubSeed(d, "cohorts"));
}

TEST(Config, ContentHashIsFnv1a) {
  EXPECT_EQ(ContentHash(""), "cbf29ce484222325");
  EXPECT_EQ(ContentHash("a"), "af63dc4c8601ec8c");
}

TEST(Config, DefaultRowsAndSplitList) {
  ExperimentConfig c;
  const auto defend = c.DefendRows();
  std::vector<std::string> names;
  for (const auto& r : defend) names.push_back(r.Name());
  EXPECT_NE(std::find(names.begin(), names.end(), "dp-lr/eps=0.1"), names.end());
  EXPECT_NE(std::find(names.begin(), names.end(), "tt-lr/b=6"), names.end());
  EXPECT_NE(std::find(names.begin(), names.end(), "tt-mlp/b=2"), names.end());
  EXPECT_EQ(SplitList("a, b,,c"), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(RowSpec, ParseAndName) {
  for (const std::string n : {"lr/vanilla", "lr/averaged", "mlp/vanilla", "tt-lr/b=2",
                              "tt-mlp/b=10", "dp-lr/eps=0.1", "dp-sgd/sigma=5"})
    EXPECT_EQ(RowSpec::Parse(n).Name(), n);
  EXPECT_TRUE(RowSpec::Parse("tt-mlp/b=2").is_mlp());
  EXPECT_FALSE(RowSpec::Parse("dp-lr/eps=1").is_mlp());
  EXPECT_EQ(CodeOf([] { RowSpec::Parse("svm/vanilla"); }), ErrorCode::kArgument);
}

TEST(Artifacts, ContentNamedAndAppendOnly) {
  const std::string dir = TempDir("store");
  ArtifactStore store(dir);
  const std::string a = store.Put("table", "txt", "hello\n");
  EXPECT_EQ(a, "table-" + ContentHash("hello\n").substr(0, 12) + ".txt");
  EXPECT_EQ(store.Put("table", "txt", "hello\n"), a);
  EXPECT_EQ(ReadTextFile(store.Path(a)), "hello\n");
  const std::string b = store.Put("table", "txt", "other\n");
  EXPECT_NE(a, b);
  EXPECT_EQ(ReadTextFile(store.Path(a)), "hello\n");
  std::ofstream(store.Path(a)) << "tampered";
  EXPECT_EQ(CodeOf([&] { store.Put("table", "txt", "hello\n"); }), ErrorCode::kIo);
  for (const auto& e : fs::directory_iterator(dir))
    EXPECT_EQ(e.path().string().find(".partial"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Artifacts, ManifestRecordsSeedsAndFiles) {
  Manifest m("attack", "abc");
  m.AddSeed("master", 7);
  m.AddArtifact("scores", "scores-1.json");
  const auto j = m.ToJson();
  EXPECT_EQ(j.at("command"), "attack");
  EXPECT_EQ(j.at("config_hash"), "abc");
  EXPECT_EQ(j.at("seeds").at("master"), 7);
  EXPECT_EQ(j.at("artifacts").size(), 1u);
}

ScoreTable DemoTable() {
  ScoreTable t;
  t.columns = {"wbb2", "sbb", "wb"};
  t.rows.push_back({"lr/vanilla", {ScoreCell{0.9167, 0.0123, 240}, std::nullopt, ScoreCell{0.94, 0.01, 240}}, 0});
  t.rows.push_back({"lr/averaged", {ScoreCell{0.99, 0.001, 240}, ScoreCell{1.0, 0.0, 240}, std::nullopt}, 2});
  return t;
}

TEST(Report, FormatsMeanPlusMinusStd) {
  const std::string s = FormatTable(DemoTable());
  EXPECT_NE(s.find("2-WBB"), std::string::npos);
  EXPECT_NE(s.find("SBB"), std::string::npos);
  EXPECT_NE(s.find("0.917 ± 0.012"), std::string::npos) << s;
  EXPECT_NE(s.find("1.000 ± 0.000"), std::string::npos);
  EXPECT_NE(s.find(" - "), std::string::npos);
  EXPECT_EQ(ColumnTitle("wbb10"), "10-WBB");
  EXPECT_EQ(ColumnTitle("wb"), "WB");
}

TEST(Report, JsonRoundTripAndMerge) {
  const auto t = DemoTable();
  const auto back = TableFromJson(TableToJson(t));
  EXPECT_EQ(TableToJson(back), TableToJson(t));
  EXPECT_EQ(TableToCsv(back), TableToCsv(t));
  ASSERT_TRUE(back.Cell("lr/vanilla", "wbb2").has_value());
  EXPECT_EQ(back.Cell("lr/vanilla", "wbb2")->mean, 0.9167);
  EXPECT_FALSE(back.Cell("lr/vanilla", "sbb").has_value());
  EXPECT_EQ(back.Find("lr/averaged")->failures, 2u);

  ScoreTable extra;
  extra.columns = {"wbb6"};
  extra.rows.push_back({"dp-lr/eps=1", {ScoreCell{0.7, 0.02, 240}}, 0});
  const auto merged = MergeTables({t, extra});
  EXPECT_EQ(merged.rows.size(), 3u);
  EXPECT_TRUE(merged.Cell("dp-lr/eps=1", "wbb6").has_value());
  EXPECT_FALSE(merged.Cell("dp-lr/eps=1", "wbb2").has_value());
}

TEST(Serve, ProbabilityFormatting) {
  EXPECT_EQ(FormatProbability(0.7, 2), "0.70");
  EXPECT_EQ(FormatProbability(0.123456, 4), "0.1235");
  EXPECT_EQ(FormatProbability(1.0, 1), "1.0");
}

TEST(Serve, QueryTranslation) {
  const auto x = SampleRow(4);
  const auto q = QueryFromFeatures(x);
  EXPECT_EQ(q.at("cancer_type"), "4");
  EXPECT_EQ(FeaturesFromQuery(q), x);
  auto bad = q;
  bad["tmb"] = "abc";
  try {
    FeaturesFromQuery(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kArgument);
    EXPECT_EQ(std::string(e.what()).rfind("tmb", 0), 0u) << e.what();
  }
  bad = q;
  bad["cancer_type"] = "17";
  EXPECT_EQ(CodeOf([&] { FeaturesFromQuery(bad); }), ErrorCode::kArgument);
  bad = q;
  bad.erase("age");
  EXPECT_EQ(CodeOf([&] { FeaturesFromQuery(bad); }), ErrorCode::kArgument);
  auto two = x;
  two[cohorts::CancerTypeFeature(5)] = 1.0;
  EXPECT_EQ(CodeOf([&] { QueryFromFeatures(two); }), ErrorCode::kArgument);
}

TEST(Serve, ConstantModelAnswersAtTwoDecimals) {
  PredictionServer server(std::make_shared<ConstantScorer>(0.7), 2);
  const int port = server.Bind("127.0.0.1", 0);
  server.Start();
  httplib::Client client("127.0.0.1", port);
  for (int type : {1, 9, 16}) {
    httplib::Params p;
    for (const auto& [k, v] : QueryFromFeatures(SampleRow(type))) p.emplace(k, v);
    const auto res = client.Get("/predict", p, httplib::Headers{});
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(res->body, R"({"probability":0.70})");
  }
  const auto health = client.Get("/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);

  httplib::Params bad;
  for (const auto& [k, v] : QueryFromFeatures(SampleRow(2))) bad.emplace(k, v);
  bad.erase("albumin");
  bad.emplace("albumin", "x1");
  auto res = client.Get("/predict", bad, httplib::Headers{});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(nlohmann::json::parse(res->body).at("field"), "albumin");
  bad.erase("albumin");
  bad.emplace("albumin", "3.5");
  bad.erase("cancer_type");
  bad.emplace("cancer_type", "0");
  res = client.Get("/predict", bad, httplib::Headers{});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(nlohmann::json::parse(res->body).at("field"), "cancer_type");
  EXPECT_EQ(server.request_count(), 6u);
  EXPECT_EQ(server.error_count(), 2u);
  server.Stop();
}

TEST(Serve, RecoveryThroughTheEndpoint) {
  const auto cs = cohorts::GenerateCohorts(cohorts::Preset("desk"), 3);
  const Dataset pool = cohorts::Pool(cs);
  const auto lr = predictors::TrainLogistic(pool, {}, 1);
  PredictionServer server(std::make_shared<predictors::ModelScorer>(lr), 4);
  const int port = server.Bind("127.0.0.1", 0);
  server.Start();
  const HttpScorer remote("127.0.0.1", port);
  ASSERT_TRUE(remote.Healthy());
  privacy::RecoveryOptions o;
  o.candidates = pool.features.topRows(50);
  for (std::size_t j = 0; j < 21; ++j) o.binary.push_back(cohorts::IsBinaryFeature(j));
  o.one_hot = std::make_pair(cohorts::kFirstCancerType, cohorts::kCancerTypes);
  const auto got = privacy::RecoverLrCoefficients(
      [&](std::span<const double> x) { return remote.Score(x); }, 21, o);
  auto truth = lr.Parameters();
  privacy::CanonicalizeOneHot(truth, cohorts::kFirstCancerType, cohorts::kCancerTypes);
  EXPECT_LE(privacy::RelativeError(got.Parameters(), truth), 1e-2);
  server.Stop();
}

TEST(Serve, TensorTrainAnswersMatchInProcess) {
  const auto cs = cohorts::GenerateCohorts(cohorts::Preset("desk"), 4);
  const Dataset pool = cohorts::Pool(cs);
  auto lr = std::make_shared<predictors::ModelScorer>(predictors::TrainLogistic(pool, {}, 1));
  const auto tt = tensorize::TensorizeModel(lr, pool.features, {}).tt;
  auto local = std::make_shared<tensorize::TtScorer>(tt);
  PredictionServer server(local, 3);
  const int port = server.Bind("127.0.0.1", 0);
  server.Start();
  const HttpScorer remote("127.0.0.1", port);
  for (std::size_t i = 0; i < 30; ++i)
    EXPECT_NEAR(remote.Score(pool.row(i)), local->Score(pool.row(i)), 0.5e-3 + 1e-12);
  server.Stop();
}

TEST(Serve, RejectsBadSetup) {
  EXPECT_EQ(CodeOf([] { PredictionServer s(std::make_shared<ConstantScorer>(0.5), 0); }),
            ErrorCode::kArgument);
  EXPECT_EQ(CodeOf([] { HttpScorer("127.0.0.1", 1).Score(SampleRow(1)); }), ErrorCode::kIo);
}

TEST(Commands, AttackIsDeterministicAcrossRuns) {
  ExperimentConfig c;
  c.seed = 11;
  c.attack_rows = {"lr/vanilla"};
  c.access = {"wbb2", "wb"};
  c.replicates = 2;
  c.probes = 10;
  c.repeats = 1;
  c.folds = 2;
  c.adversary.epochs = 3;
  c.lr_grid = {predictors::LrHyper{}};
  std::string text[2];
  for (int run = 0; run < 2; ++run) {
    c.out = TempDir("attack" + std::to_string(run));
    const auto r = CommandAttack(c);
    text[run] = r.text;
    EXPECT_TRUE(fs::exists(c.out + "/" + r.summary.at("manifest").get<std::string>()));
  }
  EXPECT_EQ(text[0], text[1]);
  EXPECT_NE(text[0].find("lr/vanilla"), std::string::npos);
  const auto report = CommandReport(c, {});
  EXPECT_NE(report.text.find(text[0]), std::string::npos) << report.text;
  for (int run = 0; run < 2; ++run) fs::remove_all(TempDir("attack" + std::to_string(run)));
}

}  // namespace
}  // namespace ttshield::harness
