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
#include "interpret/sensitivity.hpp"

#include <cmath>
#include <cstdio>

#include "cohorts/cohort.hpp"
#include "common/error.hpp"
#include "common/parallel.hpp"

namespace ttshield::interpret {
namespace {

struct Prepared {
  tt::TensorTrain tt;  // in frame coordinates
  Standardizer frame;
  std::vector<double> base;
  std::vector<bool> binary;
  std::vector<std::string> names;
};

Prepared Prepare(const tt::TensorTrain& tt, const SensitivityOptions& o) {
  Require(tt.output_site().has_value() && tt.class_count() == 2, ErrorCode::kArgument,
          "sensitivity needs a TT with a binary output site");
  const std::size_t p = tt.input_count();
  Require(p >= 1, ErrorCode::kArgument, "TT has no inputs");
  Standardizer frame = o.frame ? *o.frame : Standardizer::Identity(p);
  Require(frame.size() == p, ErrorCode::kShape, "frame length does not match TT inputs");
  tt::TensorTrain framed = tt;
  if (tt.input_scale() == tt::InputScale::kRaw) {
    framed = tt::Unscale(tt, frame);
  } else {
    Require(!o.frame, ErrorCode::kArgument, "a frame needs a raw-scale TT");
  }
  std::vector<double> base = o.base.empty() ? frame.mean() : o.base;
  Require(base.size() == p, ErrorCode::kShape, "base point length mismatch");
  std::vector<bool> binary = o.binary;
  if (binary.empty()) {
    binary.assign(p, false);
    if (p == cohorts::kFeatureCount)
      for (std::size_t j = 0; j < p; ++j) binary[j] = cohorts::IsBinaryFeature(j);
  }
  Require(binary.size() == p, ErrorCode::kShape, "binary mask length mismatch");
  std::vector<std::string> names = o.names;
  if (names.empty()) {
    if (p == cohorts::kFeatureCount) {
      names = cohorts::FeatureNames();
    } else {
      for (std::size_t j = 0; j < p; ++j) names.push_back("x" + std::to_string(j));
    }
  }
  Require(names.size() == p, ErrorCode::kShape, "feature name count mismatch");
  return {std::move(framed), std::move(frame), std::move(base), std::move(binary),
          std::move(names)};
}

// Score of input j at raw value v; nullopt if the marginal has no mass.
std::optional<double> ScoreAt(const Prepared& pr, ScoreKind kind, std::size_t j, double v) {
  const double z = (v - pr.frame.mean()[j]) / pr.frame.sd()[j];
  const std::size_t site = pr.tt.input_sites()[j];
  if (kind == ScoreKind::kAmplitude) {
    std::vector<double> x(pr.tt.input_count(), 0.0);
    x[j] = z;
    return tt::EvaluateAll(pr.tt, x)[1];
  }
  const tt::TensorTrain cond = tt::ConditionValue(pr.tt, site, z);
  const std::size_t out = *cond.output_site();
  const tt::MarginalTable m = tt::Marginal(cond, std::span<const std::size_t>(&out, 1));
  const double total = m.values[0] + m.values[1];
  if (!(total > 0.0)) return std::nullopt;
  return m.values[1] / total;
}

}  // namespace

std::vector<double> SensitivityReport::raw_scores() const {
  std::vector<double> v;
  for (const auto& e : entries) v.push_back(e.raw);
  return v;
}

std::vector<double> SensitivityReport::normalized_scores() const {
  std::vector<double> v;
  for (const auto& e : entries) v.push_back(e.normalized);
  return v;
}

SensitivityReport Normalize(SensitivityReport report) {
  double m = 0.0;
  for (const auto& e : report.entries) m = std::max(m, std::abs(e.raw));
  report.normalization = m;
  for (auto& e : report.entries) e.normalized = m > 0.0 ? e.raw / m : 0.0;
  return report;
}

SensitivityReport FeatureSensitivity(const tt::TensorTrain& tt,
                                     const SensitivityOptions& options) {
  const Prepared pr = Prepare(tt, options);
  const std::size_t p = tt.input_count();
  SensitivityReport report;
  report.context = options.context;
  report.source = options.source;
  report.entries.resize(p);
  ParallelFor(p, [&](std::size_t j) {
    const double lo = pr.binary[j] ? 0.0 : pr.base[j];
    const double hi = pr.binary[j] ? 1.0 : pr.base[j] + 1.0;
    const auto a = ScoreAt(pr, options.kind, j, lo);
    const auto b = ScoreAt(pr, options.kind, j, hi);
    SensitivityEntry& e = report.entries[j];
    e.feature = pr.names[j];
    e.degenerate = !a || !b;
    e.raw = e.degenerate ? 0.0 : *b - *a;
  });
  return Normalize(std::move(report));
}

tt::TensorTrain ConditionCancerType(const tt::TensorTrain& tt, int cancer_type) {
  Require(tt.input_count() == cohorts::kFeatureCount, ErrorCode::kArgument,
          "cancer-type conditioning needs a 21-input TT");
  const std::size_t target = cohorts::CancerTypeFeature(cancer_type);
  const auto sites = tt.input_sites();
  tt::TensorTrain out = tt;
  // Highest site first so the remaining site indices stay valid.
  for (std::size_t t = cohorts::kCancerTypes; t-- > 0;) {
    const std::size_t j = cohorts::kFirstCancerType + t;
    out = tt::ConditionValue(out, sites[j], j == target ? 1.0 : 0.0);
  }
  return out;
}

SensitivityReport SensitivityByType(const tt::TensorTrain& tt, int cancer_type,
                                    const SensitivityOptions& options) {
  const tt::TensorTrain cond = ConditionCancerType(tt, cancer_type);
  const std::size_t keep = cohorts::kContinuousBlock;
  SensitivityOptions sub = options;
  if (options.frame) {
    const auto& m = options.frame->mean();
    const auto& s = options.frame->sd();
    Require(m.size() == cohorts::kFeatureCount, ErrorCode::kShape, "frame length mismatch");
    sub.frame = Standardizer({m.begin(), m.begin() + keep}, {s.begin(), s.begin() + keep});
  }
  if (!options.base.empty()) sub.base.assign(options.base.begin(), options.base.begin() + keep);
  if (!options.binary.empty())
    sub.binary.assign(options.binary.begin(), options.binary.begin() + keep);
  else
    for (std::size_t j = 0; j < keep; ++j) sub.binary.push_back(cohorts::IsBinaryFeature(j));
  const auto& names = cohorts::FeatureNames();
  sub.names.assign(names.begin(), names.begin() + keep);
  char label[32];
  std::snprintf(label, sizeof(label), "cancer_type=%02d", cancer_type);
  sub.context = label;
  return FeatureSensitivity(cond, sub);
}

double Pearson(std::span<const double> a, std::span<const double> b) {
  Require(a.size() == b.size() && a.size() >= 2, ErrorCode::kShape,
          "Pearson needs two equal-length series");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  Require(saa > 0.0 && sbb > 0.0, ErrorCode::kDegenerate, "Pearson of a constant series");
  return sab / std::sqrt(saa * sbb);
}

}  // namespace ttshield::interpret
