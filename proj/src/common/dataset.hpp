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
#ifndef TTSHIELD_COMMON_DATASET_HPP_
#define TTSHIELD_COMMON_DATASET_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ttshield {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Labeled samples: one feature row per sample, binary labels.
struct Dataset {
  Matrix features;
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
  std::size_t feature_count() const {
    return static_cast<std::size_t>(features.cols());
  }
  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * features.cols(),
            static_cast<std::size_t>(features.cols())};
  }
  std::size_t positives() const {
    std::size_t n = 0;
    for (int y : labels) n += (y == 1);
    return n;
  }

  Dataset Subset(std::span<const std::size_t> indices) const {
    Dataset out;
    out.features.resize(static_cast<Eigen::Index>(indices.size()), features.cols());
    out.labels.reserve(indices.size());
    for (std::size_t k = 0; k < indices.size(); ++k) {
      out.features.row(static_cast<Eigen::Index>(k)) =
          features.row(static_cast<Eigen::Index>(indices[k]));
      out.labels.push_back(labels[indices[k]]);
    }
    return out;
  }
};

inline std::span<const double> AsSpan(const Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

inline Eigen::Map<const Vector> AsEigen(std::span<const double> s) {
  return {s.data(), static_cast<Eigen::Index>(s.size())};
}

}  // namespace ttshield

#endif  // TTSHIELD_COMMON_DATASET_HPP_
