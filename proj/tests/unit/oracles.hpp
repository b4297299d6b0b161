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
#ifndef TTSHIELD_TESTS_ORACLES_HPP_
#define TTSHIELD_TESTS_ORACLES_HPP_

// Brute-force reference computations used by the unit tests. They read raw
// core data and share no code with the library's contraction routines.

#include <cmath>
#include <cstddef>
#include <vector>

#include "tt/tensor_train.hpp"

namespace ttshield::testing {

// Entry T(i_1..i_N) by left-to-right vector-matrix products over raw data.
inline double BruteEntry(const tt::TensorTrain& t, const std::vector<std::size_t>& idx) {
  std::vector<double> v{1.0};
  for (std::size_t n = 0; n < t.size(); ++n) {
    const tt::Core& c = t.core(n);
    std::vector<double> next(c.right, 0.0);
    for (std::size_t a = 0; a < c.left; ++a)
      for (std::size_t b = 0; b < c.right; ++b)
        next[b] += v[a] * c.data[(a * c.dim + idx[n]) * c.right + b];
    v = next;
  }
  return v[0];
}

// Calls fn(index) for every index string of the TT, last site fastest.
template <typename Fn>
void ForEachIndex(const tt::TensorTrain& t, Fn&& fn) {
  const auto dims = t.dims();
  std::vector<std::size_t> idx(dims.size(), 0);
  for (;;) {
    fn(idx);
    std::size_t k = dims.size();
    while (k > 0) {
      --k;
      if (++idx[k] < dims[k]) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (dims.empty()) return;
  }
}

inline double BrutePartition(const tt::TensorTrain& t) {
  double z = 0.0;
  ForEachIndex(t, [&](const std::vector<std::size_t>& idx) {
    const double e = BruteEntry(t, idx);
    z += e * e;
  });
  return z;
}

// f(x, y) by expanding the [1, x] embedding into index sums.
inline double BruteEvaluate(const tt::TensorTrain& t, const std::vector<double>& x, std::size_t y) {
  double total = 0.0;
  const auto out = t.output_site();
  ForEachIndex(t, [&](const std::vector<std::size_t>& idx) {
    double w = 1.0;
    std::size_t j = 0;
    for (std::size_t n = 0; n < t.size(); ++n) {
      if (out && n == *out) {
        if (idx[n] != y) return;
        continue;
      }
      w *= idx[n] == 0 ? 1.0 : x[j];
      ++j;
    }
    total += w * BruteEntry(t, idx);
  });
  return total;
}

inline bool RelClose(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace ttshield::testing

#endif  // TTSHIELD_TESTS_ORACLES_HPP_
