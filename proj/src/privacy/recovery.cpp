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
#include "privacy/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "common/error.hpp"
#include "common/standardizer.hpp"
#include "predictors/network.hpp"

namespace ttshield::privacy {
namespace {

double DefaultLogit(double p) { return std::log(p / (1.0 - p)); }

bool Saturated(double p) { return !(p > 0.0 && p < 1.0); }

}  // namespace

predictors::LogisticModel RecoverLrCoefficients(const ProbabilityQuery& query,
                                                std::size_t feature_count,
                                                const RecoveryOptions& options) {
  Require(static_cast<bool>(query), ErrorCode::kArgument, "no query function");
  Require(options.candidates.rows() >= 1 &&
              static_cast<std::size_t>(options.candidates.cols()) == feature_count,
          ErrorCode::kArgument, "recovery needs candidate base points of the feature width");
  Require(options.binary.empty() || options.binary.size() == feature_count,
          ErrorCode::kShape, "binary mask length mismatch");
  if (options.one_hot)
    Require(options.one_hot->first + options.one_hot->second <= feature_count &&
                options.one_hot->second >= 1,
            ErrorCode::kArgument, "one-hot block out of range");
  const auto to_logit = options.to_logit ? options.to_logit : DefaultLogit;
  auto answer = [&](std::span<const double> x) {
    const double p = query(x);
    Require(std::isfinite(p), ErrorCode::kRecovery, "query returned a non-finite value");
    return p;
  };

  // Base point: the candidate whose answer is closest to 0.5.
  std::vector<double> x0;
  double p0 = 0.0;
  double best = 2.0;
  for (Eigen::Index r = 0; r < options.candidates.rows(); ++r) {
    std::vector<double> x(options.candidates.row(r).data(),
                          options.candidates.row(r).data() + feature_count);
    const double p = answer(x);
    if (Saturated(p)) continue;
    if (std::abs(p - 0.5) < best) {
      best = std::abs(p - 0.5);
      x0 = std::move(x);
      p0 = p;
      if (p >= options.low && p <= options.high) break;
    }
  }
  Require(!x0.empty(), ErrorCode::kRecovery,
          "every candidate base point returned a saturated probability");
  const double l0 = to_logit(p0);

  auto in_group = [&](std::size_t j) {
    return options.one_hot && j >= options.one_hot->first &&
           j < options.one_hot->first + options.one_hot->second;
  };
  std::size_t reference = feature_count;
  if (options.one_hot) {
    for (std::size_t j = options.one_hot->first;
         j < options.one_hot->first + options.one_hot->second; ++j)
      if (x0[j] == 1.0) reference = j;
    Require(reference < feature_count, ErrorCode::kRecovery,
            "base point has no flag set in the one-hot block");
  }

  // Logit change from `from` to `to` for a flag feature. The change does not
  // depend on the other inputs, so when the flip saturates at the base point
  // it is measured at the first candidate whose two answers both lie in
  // [low, high], or failing that at any candidate with two unsaturated answers.
  auto flag_change = [&](const std::function<void(std::vector<double>&)>& from,
                         const std::function<void(std::vector<double>&)>& to,
                         const std::string& what) {
    std::vector<double> x = x0;
    to(x);
    const double p = answer(x);
    if (!Saturated(p)) return to_logit(p) - l0;
    std::optional<double> fallback;
    for (Eigen::Index r = 0; r < options.candidates.rows(); ++r) {
      std::vector<double> a(options.candidates.row(r).data(),
                            options.candidates.row(r).data() + feature_count);
      std::vector<double> c = a;
      from(a);
      to(c);
      const double pa = answer(a);
      if (Saturated(pa)) continue;
      const double pc = answer(c);
      if (Saturated(pc)) continue;
      const double change = to_logit(pc) - to_logit(pa);
      if (pa >= options.low && pa <= options.high && pc >= options.low && pc <= options.high)
        return change;
      if (!fallback) fallback = change;
    }
    Require(fallback.has_value(), ErrorCode::kRecovery, "saturated answers for " + what);
    return *fallback;
  };

  std::vector<double> w(feature_count, 0.0);
  std::vector<double> x = x0;
  for (std::size_t j = 0; j < feature_count; ++j) {
    x = x0;
    if (in_group(j)) {
      if (j == reference) continue;
      const std::size_t first = options.one_hot->first, count = options.one_hot->second;
      auto set_flag = [&](std::size_t k) {
        return [first, count, k](std::vector<double>& v) {
          std::fill(v.begin() + static_cast<std::ptrdiff_t>(first),
                    v.begin() + static_cast<std::ptrdiff_t>(first + count), 0.0);
          v[k] = 1.0;
        };
      };
      w[j] = flag_change(set_flag(reference), set_flag(j),
                         "one-hot feature " + std::to_string(j));
      continue;
    }
    if (!options.binary.empty() && options.binary[j]) {
      const double from = x0[j], to = x0[j] == 1.0 ? 0.0 : 1.0;
      w[j] = flag_change([j, from](std::vector<double>& v) { v[j] = from; },
                         [j, to](std::vector<double>& v) { v[j] = to; },
                         "binary feature " + std::to_string(j)) /
             (to - from);
      continue;
    }
    // Step along +h or -h until the answer lies in [low, high]; grow the step
    // while the logit change stays small.
    double h = options.initial_step;
    bool shrunk = false;
    double dl = 0.0;
    double step = 0.0;
    for (int it = 0; it < options.max_step_adjustments; ++it) {
      bool hit = false;
      for (double sign : {1.0, -1.0}) {
        x[j] = x0[j] + sign * h;
        const double p = answer(x);
        if (Saturated(p) || p < options.low || p > options.high) continue;
        dl = to_logit(p) - l0;
        step = sign * h;
        hit = true;
        break;
      }
      if (!hit) {
        h *= 0.5;
        shrunk = true;
        continue;
      }
      if (!shrunk && std::abs(dl) < options.target_logit_change) {
        h *= 2.0;
        continue;
      }
      break;
    }
    if (step == 0.0) {
      // The band was never reached; accept any unsaturated answer at the full step.
      for (double sign : {1.0, -1.0}) {
        x[j] = x0[j] + sign * options.initial_step;
        const double p = answer(x);
        if (Saturated(p)) continue;
        dl = to_logit(p) - l0;
        step = sign * options.initial_step;
        break;
      }
      Require(step != 0.0, ErrorCode::kRecovery,
              "persistent saturation while probing feature " + std::to_string(j));
    }
    w[j] = dl / step;
  }
  double b = l0;
  for (std::size_t j = 0; j < feature_count; ++j) b -= w[j] * x0[j];

  std::vector<double> params = w;
  params.push_back(b);
  if (options.one_hot) CanonicalizeOneHot(params, options.one_hot->first, options.one_hot->second);
  return predictors::LogisticModel::FromParameters(params, predictors::LrHyper{},
                                                   Standardizer::Identity(feature_count));
}

void CanonicalizeOneHot(std::vector<double>& params, std::size_t first, std::size_t count) {
  Require(count >= 1 && first + count < params.size(), ErrorCode::kArgument,
          "one-hot block out of range");
  double mean = 0.0;
  for (std::size_t j = first; j < first + count; ++j) mean += params[j];
  mean /= static_cast<double>(count);
  for (std::size_t j = first; j < first + count; ++j) params[j] -= mean;
  params.back() += mean;
}

double RelativeError(std::span<const double> estimate, std::span<const double> truth) {
  Require(estimate.size() == truth.size(), ErrorCode::kShape, "length mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    num += (estimate[i] - truth[i]) * (estimate[i] - truth[i]);
    den += truth[i] * truth[i];
  }
  Require(den > 0.0, ErrorCode::kArgument, "reference vector is zero");
  return std::sqrt(num / den);
}

InverseResult InvertMonotoneMap(std::span<const std::pair<double, double>> cal,
                                double observed) {
  Require(!cal.empty(), ErrorCode::kArgument, "empty calibration");
  for (std::size_t k = 0; k < cal.size(); ++k) {
    Require(std::isfinite(cal[k].first) && std::isfinite(cal[k].second), ErrorCode::kArgument,
            "non-finite calibration pair");
    if (k > 0)
      Require(cal[k].first >= cal[k - 1].first && cal[k].second >= cal[k - 1].second,
              ErrorCode::kArgument, "calibration is not monotone non-decreasing");
  }
  if (observed < cal.front().second) return {cal.front().first, true};
  if (observed > cal.back().second) return {cal.back().first, true};
  // First index with displayed >= observed, and the end of its flat stretch.
  std::size_t lo = 0;
  while (cal[lo].second < observed) ++lo;
  if (cal[lo].second == observed) {
    std::size_t hi = lo;
    while (hi + 1 < cal.size() && cal[hi + 1].second == observed) ++hi;
    return {0.5 * (cal[lo].first + cal[hi].first), false};
  }
  const auto& a = cal[lo - 1];
  const auto& c = cal[lo];
  const double t = (observed - a.second) / (c.second - a.second);
  return {a.first + t * (c.first - a.first), false};
}

std::vector<std::pair<double, double>> SigmoidCalibration(double lo, double hi,
                                                          std::size_t points) {
  Require(points >= 2 && hi > lo, ErrorCode::kArgument, "bad calibration grid");
  std::vector<std::pair<double, double>> out;
  for (std::size_t k = 0; k < points; ++k) {
    const double s = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
    out.emplace_back(s, predictors::Sigmoid(s));
  }
  return out;
}

}  // namespace ttshield::privacy
