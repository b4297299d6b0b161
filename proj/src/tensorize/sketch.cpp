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
#include "tensorize/sketch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "common/error.hpp"
#include "common/log.hpp"
#include "common/parallel.hpp"
#include "common/random.hpp"

namespace ttshield::tensorize {
namespace {

constexpr std::size_t kDim = 2;
constexpr std::size_t kClasses = 2;

bool IsBinaryColumn(const Matrix& data, Eigen::Index j) {
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const double v = data(i, j);
    if (v != 0.0 && v != 1.0) return false;
  }
  return true;
}

// (A^T A + lambda I)^{-1} A^T rhs with lambda relative to max diag(A^T A).
Matrix RidgeSolve(const Matrix& a, const Matrix& rhs, double ridge) {
  Eigen::MatrixXd gram = a.transpose() * a;
  const double scale = gram.diagonal().maxCoeff();
  const double lambda = ridge * (scale > 0.0 ? scale : 1.0);
  gram.diagonal().array() += lambda;
  const Eigen::MatrixXd atb = a.transpose() * rhs;
  return gram.ldlt().solve(atb);
}

}  // namespace

void ValidateConfig(const TensorizeConfig& config) {
  Require(config.rank >= 1, ErrorCode::kArgument, "TT rank must be >= 1");
  Require(config.pivot_count >= config.rank, ErrorCode::kArgument,
          "pivot count must be >= rank");
  Require(config.bins == 0 || config.bins >= 2, ErrorCode::kArgument,
          "bins must be 0 (raw scores) or >= 2");
  Require(config.ridge >= 0.0 && config.rank_tolerance >= 0.0, ErrorCode::kArgument,
          "ridge and rank tolerance must be >= 0");
}

std::vector<std::size_t> SelectPivots(std::size_t population, std::size_t count,
                                      std::uint64_t seed) {
  Require(count <= population, ErrorCode::kArgument,
          "cannot draw " + std::to_string(count) + " pivots from " +
              std::to_string(population) + " samples");
  Rng rng(seed);
  return SampleWithoutReplacement(population, count, rng);
}

std::vector<std::array<double, 2>> LocalPoints(const Matrix& data,
                                               const Standardizer& standardizer) {
  Require(standardizer.size() == static_cast<std::size_t>(data.cols()), ErrorCode::kShape,
          "standardizer width does not match data");
  std::vector<std::array<double, 2>> points(standardizer.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (IsBinaryColumn(data, static_cast<Eigen::Index>(j))) {
      points[j] = {0.0, 1.0};
    } else {
      const double m = standardizer.mean()[j];
      const double s = standardizer.sd()[j];
      points[j] = {m - s, m + s};
    }
  }
  return points;
}

std::size_t QueryBudget(std::size_t pivots, std::size_t features) {
  return kDim * pivots * pivots * features;
}

tt::TensorTrain SketchBuild(const AmplitudeFunction& amplitudes,
                            const SketchProblem& problem, std::size_t rank,
                            double ridge, double rank_tolerance, SketchStats* stats) {
  const Matrix& pivots = problem.pivots;
  const std::size_t P = static_cast<std::size_t>(pivots.rows());
  const std::size_t p = static_cast<std::size_t>(pivots.cols());
  Require(P >= 1 && p >= 1, ErrorCode::kArgument, "sketch needs pivots and features");
  Require(problem.points.size() == p && problem.standardizer.size() == p,
          ErrorCode::kShape, "local points / standardizer do not match pivot width");
  Require(rank >= 1, ErrorCode::kArgument, "rank must be >= 1");

  const Matrix z = problem.standardizer.Apply(pivots);
  std::atomic<std::size_t> queries{0};
  std::vector<tt::Core> cores;
  cores.reserve(p + 1);
  SketchStats local;

  // Left interface: row a holds the contraction of the built cores with the
  // prefix of pivot a (a single row of ones before the first site).
  Matrix left = Matrix::Ones(1, 1);

  for (std::size_t k = 0; k < p; ++k) {
    const std::size_t rows = k == 0 ? 1 : P;
    const std::size_t suffixes = k + 1 == p ? 1 : P;
    const std::size_t cols = kDim * suffixes * kClasses;
    Matrix phi(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    ParallelFor(rows, [&](std::size_t a) {
      std::vector<double> x(p);
      for (std::size_t j = 0; j < k; ++j)
        x[j] = pivots(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j));
      for (std::size_t i = 0; i < kDim; ++i) {
        x[k] = problem.points[k][i];
        for (std::size_t b = 0; b < suffixes; ++b) {
          for (std::size_t j = k + 1; j < p; ++j)
            x[j] = pivots(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(j));
          const std::array<double, 2> f = amplitudes(x);
          queries.fetch_add(1, std::memory_order_relaxed);
          for (std::size_t y = 0; y < kClasses; ++y) {
            Require(std::isfinite(f[y]), ErrorCode::kDomain, "oracle returned non-finite value");
            phi(static_cast<Eigen::Index>(a),
                static_cast<Eigen::Index>((i * suffixes + b) * kClasses + y)) = f[y];
          }
        }
      }
    });

    const std::size_t r_prev = static_cast<std::size_t>(left.cols());
    Matrix c = k == 0 ? phi : Matrix(RidgeSolve(left, phi, ridge));
    // Row-major reshape: (alpha, (i, b, y)) -> ((alpha, i), (b, y)).
    const Eigen::Map<const Matrix> unfolded(c.data(), static_cast<Eigen::Index>(r_prev * kDim),
                                            static_cast<Eigen::Index>(suffixes * kClasses));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(unfolded),
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    std::size_t keep = std::min<std::size_t>(rank, static_cast<std::size_t>(sv.size()));
    std::size_t numeric = 0;
    for (Eigen::Index s = 0; s < sv.size(); ++s)
      if (sv(s) > rank_tolerance * sv(0)) ++numeric;
    if (numeric < keep) {
      LogWarning("rank-deficient sketch at bond " + std::to_string(k + 1) + ": rank " +
                 std::to_string(std::max<std::size_t>(numeric, 1)) + " < " +
                 std::to_string(keep));
      keep = std::max<std::size_t>(numeric, 1);
    }
    if (keep < rank) local.reduced_bonds.push_back(k + 1);

    // Point basis -> embedding basis: values at the two local points are
    // E g with E(i, :) = [1, zeta_i].
    const double z0 = (problem.points[k][0] - problem.standardizer.mean()[k]) /
                      problem.standardizer.sd()[k];
    const double z1 = (problem.points[k][1] - problem.standardizer.mean()[k]) /
                      problem.standardizer.sd()[k];
    Require(z1 != z0, ErrorCode::kArgument,
            "local points of feature " + std::to_string(k) + " coincide");
    const double inv = 1.0 / (z1 - z0);
    tt::Core core(r_prev, kDim, keep);
    const Eigen::MatrixXd& u = svd.matrixU();
    for (std::size_t al = 0; al < r_prev; ++al) {
      for (std::size_t be = 0; be < keep; ++be) {
        const double v0 = u(static_cast<Eigen::Index>(al * kDim), static_cast<Eigen::Index>(be));
        const double v1 =
            u(static_cast<Eigen::Index>(al * kDim + 1), static_cast<Eigen::Index>(be));
        core(al, 0, be) = inv * (z1 * v0 - z0 * v1);
        core(al, 1, be) = inv * (v1 - v0);
      }
    }

    if (k + 1 == p) {
      tt::Core out(keep, kClasses, 1);
      const Eigen::MatrixXd& v = svd.matrixV();
      for (std::size_t be = 0; be < keep; ++be)
        for (std::size_t y = 0; y < kClasses; ++y)
          out(be, y, 0) = sv(static_cast<Eigen::Index>(be)) *
                          v(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(be));
      cores.push_back(std::move(core));
      cores.push_back(std::move(out));
      break;
    }

    Matrix next(static_cast<Eigen::Index>(P), static_cast<Eigen::Index>(keep));
    const Matrix g0 = core.Slice(0);
    const Matrix g1 = core.Slice(1);
    for (std::size_t a = 0; a < P; ++a) {
      const auto row = left.row(k == 0 ? 0 : static_cast<Eigen::Index>(a));
      const double za = z(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k));
      next.row(static_cast<Eigen::Index>(a)) = row * (g0 + za * g1);
    }
    left = std::move(next);
    cores.push_back(std::move(core));
  }

  local.queries = queries.load();
  if (stats) *stats = local;
  return tt::TensorTrain(std::move(cores), p, tt::InputScale::kStandardized);
}

tt::TensorTrain PadRanks(const tt::TensorTrain& tt, std::size_t rank) {
  const std::size_t n = tt.size();
  std::vector<tt::Core> cores;
  cores.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    const tt::Core& c = tt.core(s);
    const std::size_t l = s == 0 ? 1 : std::max(rank, c.left);
    const std::size_t r = s + 1 == n ? 1 : std::max(rank, c.right);
    tt::Core padded(l, c.dim, r);
    for (std::size_t a = 0; a < c.left; ++a)
      for (std::size_t i = 0; i < c.dim; ++i)
        for (std::size_t b = 0; b < c.right; ++b) padded(a, i, b) = c(a, i, b);
    cores.push_back(std::move(padded));
  }
  return tt::TensorTrain(std::move(cores), tt.output_site(), tt.input_scale(), tt.embedding());
}

}  // namespace ttshield::tensorize
