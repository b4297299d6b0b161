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
#ifndef TTSHIELD_HARNESS_SERVE_HPP_
#define TTSHIELD_HARNESS_SERVE_HPP_

#include <atomic>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "predictors/scorer.hpp"

namespace ttshield::harness {

// Query parameters of GET /predict, in feature order before the type.
inline constexpr const char* kPredictFields[] = {"tmb", "psth", "albumin", "nlr", "age"};

// "%.<decimals>f" of p.
std::string FormatProbability(double p, int decimals);

// Builds the 21-feature vector from query parameters. Throws kArgument whose
// message starts with the offending field name.
std::vector<double> FeaturesFromQuery(const std::map<std::string, std::string>& params);
// Inverse of FeaturesFromQuery; the vector must have exactly one type flag.
std::map<std::string, std::string> QueryFromFeatures(std::span<const double> x);

// Public prediction endpoint over a fixed scorer:
//   GET /predict?tmb=&psth=&albumin=&nlr=&age=&cancer_type=  -> {"probability": r}
//   GET /health                                              -> {"status": "ok"}
// Only aggregate request counts are kept.
class PredictionServer {
 public:
  PredictionServer(std::shared_ptr<const predictors::Scorer> scorer, int decimals);
  ~PredictionServer();
  PredictionServer(const PredictionServer&) = delete;
  PredictionServer& operator=(const PredictionServer&) = delete;

  // Binds (port 0 picks a free one) and returns the bound port.
  int Bind(const std::string& host, int port);
  // Serves until Stop(); blocks.
  void Listen();
  // Listen() on a background thread; returns once the server accepts requests.
  void Start();
  void Stop();

  std::size_t request_count() const { return requests_.load(); }
  std::size_t error_count() const { return errors_.load(); }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::shared_ptr<const predictors::Scorer> scorer_;
  int decimals_;
  std::atomic<std::size_t> requests_{0};
  std::atomic<std::size_t> errors_{0};
  std::thread thread_;
};

// Scorer answering through a remote /predict endpoint. Answers carry the
// server's rounding. Safe to call concurrently.
class HttpScorer final : public predictors::Scorer {
 public:
  HttpScorer(std::string host, int port);
  double Score(std::span<const double> x) const override;
  std::size_t feature_count() const override;
  bool Healthy() const;

 private:
  std::string host_;
  int port_;
};

}  // namespace ttshield::harness

#endif  // TTSHIELD_HARNESS_SERVE_HPP_
