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
#include "harness/serve.hpp"

#include <cmath>
#include <cstdio>

#include <httplib.h>
#include "json.hpp"

#include "cohorts/cohort.hpp"
#include "cohorts/csv.hpp"
#include "common/error.hpp"

namespace ttshield::harness {
namespace {

double ParseField(const std::map<std::string, std::string>& params, const std::string& field) {
  const auto it = params.find(field);
  Require(it != params.end(), ErrorCode::kArgument, field + ": missing");
  const std::string& text = it->second;
  double v = 0.0;
  std::size_t used = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  Require(!text.empty() && used == text.size() && std::isfinite(v), ErrorCode::kArgument,
          field + ": not a finite number");
  return v;
}

std::string JsonError(const std::string& message) {
  const auto colon = message.find(':');
  nlohmann::json doc = {{"error", message}};
  if (colon != std::string::npos) doc["field"] = message.substr(0, colon);
  return doc.dump();
}

}  // namespace

std::string FormatProbability(double p, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, p);
  return buf;
}

std::vector<double> FeaturesFromQuery(const std::map<std::string, std::string>& params) {
  std::vector<double> x(cohorts::kFeatureCount, 0.0);
  for (std::size_t j = 0; j < cohorts::kContinuousBlock; ++j)
    x[j] = ParseField(params, kPredictFields[j]);
  Require(x[cohorts::kPsth] == 0.0 || x[cohorts::kPsth] == 1.0, ErrorCode::kArgument,
          "psth: must be 0 or 1");
  const double type = ParseField(params, "cancer_type");
  Require(type == std::floor(type) && type >= 1.0 && type <= cohorts::kCancerTypes,
          ErrorCode::kArgument, "cancer_type: must be an integer in 1..16");
  x[cohorts::CancerTypeFeature(static_cast<int>(type))] = 1.0;
  return x;
}

std::map<std::string, std::string> QueryFromFeatures(std::span<const double> x) {
  Require(x.size() == cohorts::kFeatureCount, ErrorCode::kShape,
          "endpoint queries need " + std::to_string(cohorts::kFeatureCount) + " features");
  std::map<std::string, std::string> q;
  for (std::size_t j = 0; j < cohorts::kContinuousBlock; ++j)
    q[kPredictFields[j]] = cohorts::FormatDouble(x[j]);
  int type = 0;
  for (int t = 1; t <= static_cast<int>(cohorts::kCancerTypes); ++t) {
    const double flag = x[cohorts::CancerTypeFeature(t)];
    Require(flag == 0.0 || flag == 1.0, ErrorCode::kArgument, "cancer type flags must be 0/1");
    if (flag == 1.0) {
      Require(type == 0, ErrorCode::kArgument, "more than one cancer type flag set");
      type = t;
    }
  }
  Require(type != 0, ErrorCode::kArgument, "no cancer type flag set");
  q["cancer_type"] = std::to_string(type);
  return q;
}

struct PredictionServer::Impl {
  httplib::Server server;
};

PredictionServer::PredictionServer(std::shared_ptr<const predictors::Scorer> scorer,
                                   int decimals)
    : impl_(std::make_unique<Impl>()), scorer_(std::move(scorer)), decimals_(decimals) {
  Require(scorer_ != nullptr, ErrorCode::kArgument, "no model to serve");
  Require(scorer_->feature_count() == cohorts::kFeatureCount, ErrorCode::kShape,
          "served models must take the 21 cohort features");
  Require(decimals_ >= 1 && decimals_ <= 15, ErrorCode::kArgument, "decimals must be in 1..15");
  impl_->server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    ++requests_;
    res.set_content("{\"status\":\"ok\"}", "application/json");
  });
  impl_->server.Get("/predict", [this](const httplib::Request& req, httplib::Response& res) {
    ++requests_;
    std::map<std::string, std::string> params;
    for (const auto& [k, v] : req.params) params[k] = v;
    try {
      const auto x = FeaturesFromQuery(params);
      const double p = scorer_->Score(x);
      res.set_content("{\"probability\":" + FormatProbability(p, decimals_) + "}",
                      "application/json");
    } catch (const Error& e) {
      ++errors_;
      res.status = 400;
      res.set_content(JsonError(e.what()), "application/json");
    }
  });
}

PredictionServer::~PredictionServer() { Stop(); }

int PredictionServer::Bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    Require(bound > 0, ErrorCode::kIo, "cannot bind " + host);
    return bound;
  }
  Require(impl_->server.bind_to_port(host, port), ErrorCode::kIo,
          "cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void PredictionServer::Listen() {
  Require(impl_->server.listen_after_bind(), ErrorCode::kIo, "endpoint stopped with an error");
}

void PredictionServer::Start() {
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void PredictionServer::Stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

HttpScorer::HttpScorer(std::string host, int port) : host_(std::move(host)), port_(port) {}

std::size_t HttpScorer::feature_count() const { return cohorts::kFeatureCount; }

double HttpScorer::Score(std::span<const double> x) const {
  httplib::Params params;
  for (const auto& [k, v] : QueryFromFeatures(x)) params.emplace(k, v);
  httplib::Client client(host_, port_);
  client.set_connection_timeout(5);
  const auto res = client.Get("/predict", params, httplib::Headers{});
  Require(static_cast<bool>(res), ErrorCode::kIo,
          "no answer from " + host_ + ":" + std::to_string(port_));
  Require(res->status == 200, ErrorCode::kIo, "endpoint returned " + std::to_string(res->status) +
                                                  ": " + res->body);
  try {
    return nlohmann::json::parse(res->body).at("probability").get<double>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("endpoint answer: ") + e.what());
  }
}

bool HttpScorer::Healthy() const {
  httplib::Client client(host_, port_);
  client.set_connection_timeout(2);
  const auto res = client.Get("/health");
  return res && res->status == 200;
}

}  // namespace ttshield::harness
