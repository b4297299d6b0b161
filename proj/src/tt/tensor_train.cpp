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
#include "tt/tensor_train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

#include "common/error.hpp"

namespace ttshield::tt {
namespace {

constexpr double kMaxGaugeCondition = 100.0;

// Matrix chain v <- v * sum_i w_i G(i) for a row vector v.
void ApplyWeighted(const Core& core, std::span<const double> weights,
                   std::vector<double>& v) {
  std::vector<double> out(core.right, 0.0);
  for (std::size_t a = 0; a < core.left; ++a) {
    const double va = v[a];
    if (va == 0.0) continue;
    for (std::size_t i = 0; i < core.dim; ++i) {
      const double s = va * weights[i];
      if (s == 0.0) continue;
      const double* g = &core.data[(a * core.dim + i) * core.right];
      for (std::size_t b = 0; b < core.right; ++b) out[b] += s * g[b];
    }
  }
  v.swap(out);
}

void ApplyIndex(const Core& core, std::size_t i, std::vector<double>& v) {
  std::vector<double> out(core.right, 0.0);
  for (std::size_t a = 0; a < core.left; ++a) {
    const double va = v[a];
    if (va == 0.0) continue;
    const double* g = &core.data[(a * core.dim + i) * core.right];
    for (std::size_t b = 0; b < core.right; ++b) out[b] += va * g[b];
  }
  v.swap(out);
}

void CheckInput(const TensorTrain& tt, std::span<const double> x) {
  Require(x.size() == tt.input_count(), ErrorCode::kShape,
          "input length " + std::to_string(x.size()) + " does not match " +
              std::to_string(tt.input_count()) + " input sites");
  for (std::size_t j = 0; j < x.size(); ++j) {
    Require(std::isfinite(x[j]), ErrorCode::kDomain,
            "non-finite input at feature " + std::to_string(j));
  }
}

// Doubled-bond update V <- sum_i G(i)^T V G(i).
Matrix TransferAll(const Core& core, const Matrix& v) {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(core.right),
                            static_cast<Eigen::Index>(core.right));
  for (std::size_t i = 0; i < core.dim; ++i) {
    const Matrix g = core.Slice(i);
    out.noalias() += g.transpose() * v * g;
  }
  return out;
}

Matrix TransferOne(const Core& core, std::size_t i, const Matrix& v) {
  const Matrix g = core.Slice(i);
  return g.transpose() * v * g;
}

double Condition(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

}  // namespace

Matrix Core::Slice(std::size_t i) const {
  Matrix m(static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(right));
  for (std::size_t a = 0; a < left; ++a)
    for (std::size_t b = 0; b < right; ++b)
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = (*this)(a, i, b);
  return m;
}

void Core::SetSlice(std::size_t i, const Matrix& m) {
  for (std::size_t a = 0; a < left; ++a)
    for (std::size_t b = 0; b < right; ++b)
      (*this)(a, i, b) = m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
}

TensorTrain::TensorTrain(std::vector<Core> cores,
                         std::optional<std::size_t> output_site,
                         InputScale input_scale, EmbeddingKind embedding)
    : cores_(std::move(cores)),
      output_site_(output_site),
      input_scale_(input_scale),
      embedding_(embedding) {
  Require(!cores_.empty(), ErrorCode::kShape, "tensor train needs at least one core");
  Require(cores_.front().left == 1 && cores_.back().right == 1, ErrorCode::kShape,
          "boundary ranks must be 1");
  for (std::size_t n = 0; n < cores_.size(); ++n) {
    const Core& c = cores_[n];
    Require(c.left >= 1 && c.dim >= 1 && c.right >= 1 &&
                c.data.size() == c.left * c.dim * c.right,
            ErrorCode::kShape, "core " + std::to_string(n) + " has inconsistent shape");
    if (n + 1 < cores_.size()) {
      Require(c.right == cores_[n + 1].left, ErrorCode::kShape,
              "rank mismatch between cores " + std::to_string(n) + " and " +
                  std::to_string(n + 1));
    }
    for (double v : c.data) {
      Require(std::isfinite(v), ErrorCode::kDomain,
              "non-finite entry in core " + std::to_string(n));
    }
  }
  if (output_site_) {
    Require(*output_site_ < cores_.size(), ErrorCode::kShape,
            "output site out of range");
  }
  for (std::size_t n = 0; n < cores_.size(); ++n) {
    if (output_site_ && n == *output_site_) continue;
    Require(cores_[n].dim == 2, ErrorCode::kUnsupported,
            "poly1 embedding requires input dimension 2 at site " + std::to_string(n));
  }
}

std::vector<std::size_t> TensorTrain::ranks() const {
  std::vector<std::size_t> r;
  r.reserve(cores_.size() + 1);
  r.push_back(cores_.front().left);
  for (const Core& c : cores_) r.push_back(c.right);
  return r;
}

std::vector<std::size_t> TensorTrain::dims() const {
  std::vector<std::size_t> d;
  for (const Core& c : cores_) d.push_back(c.dim);
  return d;
}

std::vector<std::size_t> TensorTrain::input_sites() const {
  std::vector<std::size_t> s;
  for (std::size_t n = 0; n < cores_.size(); ++n)
    if (!output_site_ || n != *output_site_) s.push_back(n);
  return s;
}

std::size_t TensorTrain::class_count() const {
  Require(output_site_.has_value(), ErrorCode::kArgument,
          "tensor train has no output site");
  return cores_[*output_site_].dim;
}

std::vector<double> TensorTrain::Flatten() const {
  std::vector<double> out;
  out.reserve(parameter_count());
  for (const Core& c : cores_) out.insert(out.end(), c.data.begin(), c.data.end());
  return out;
}

std::size_t TensorTrain::parameter_count() const {
  std::size_t n = 0;
  for (const Core& c : cores_) n += c.data.size();
  return n;
}

std::vector<double> Embed(EmbeddingKind kind, double x, std::size_t dim) {
  switch (kind) {
    case EmbeddingKind::kPoly1:
      Require(dim == 2, ErrorCode::kUnsupported, "poly1 embedding has dimension 2");
      return {1.0, x};
  }
  Fail(ErrorCode::kUnsupported, "unknown embedding");
}

double EvaluateIndex(const TensorTrain& tt, std::span<const std::size_t> index) {
  Require(index.size() == tt.size(), ErrorCode::kShape, "index length mismatch");
  std::vector<double> v{1.0};
  for (std::size_t n = 0; n < tt.size(); ++n) {
    Require(index[n] < tt.core(n).dim, ErrorCode::kShape,
            "index out of range at site " + std::to_string(n));
    ApplyIndex(tt.core(n), index[n], v);
  }
  return v[0];
}

std::vector<double> EvaluateAll(const TensorTrain& tt, std::span<const double> x) {
  Require(tt.output_site().has_value(), ErrorCode::kArgument,
          "tensor train has no output site");
  CheckInput(tt, x);
  const std::size_t out_site = *tt.output_site();
  // Contract everything left of the output site, then everything right of it.
  std::vector<double> left{1.0};
  std::size_t j = 0;
  for (std::size_t n = 0; n < out_site; ++n, ++j) {
    const auto w = Embed(tt.embedding(), x[j], tt.core(n).dim);
    ApplyWeighted(tt.core(n), w, left);
  }
  // Right environment as a column vector, contracted right-to-left.
  std::vector<double> right{1.0};
  for (std::size_t n = tt.size(); n-- > out_site + 1;) {
    const Core& c = tt.core(n);
    const auto w = Embed(tt.embedding(), x[n - 1], c.dim);
    std::vector<double> out(c.left, 0.0);
    for (std::size_t a = 0; a < c.left; ++a)
      for (std::size_t i = 0; i < c.dim; ++i)
        for (std::size_t b = 0; b < c.right; ++b) out[a] += c(a, i, b) * w[i] * right[b];
    right.swap(out);
  }
  const Core& oc = tt.core(out_site);
  std::vector<double> result(oc.dim, 0.0);
  for (std::size_t y = 0; y < oc.dim; ++y) {
    double s = 0.0;
    for (std::size_t a = 0; a < oc.left; ++a)
      for (std::size_t b = 0; b < oc.right; ++b) s += left[a] * oc(a, y, b) * right[b];
    result[y] = s;
  }
  return result;
}

double Evaluate(const TensorTrain& tt, std::span<const double> x, std::size_t y) {
  const auto all = EvaluateAll(tt, x);
  Require(y < all.size(), ErrorCode::kShape, "class index out of range");
  return all[y];
}

double Classify(const TensorTrain& tt, std::span<const double> x) {
  const auto f = EvaluateAll(tt, x);
  Require(f.size() == 2, ErrorCode::kUnsupported, "classification needs two classes");
  const double p0 = f[0] * f[0];
  const double p1 = f[1] * f[1];
  const double z = p0 + p1;
  Require(z > 0.0, ErrorCode::kDegenerate,
          "both class amplitudes are zero (untrained or collapsed tensor train)");
  return p1 / z;
}

double Partition(const TensorTrain& tt) {
  Matrix v = Matrix::Ones(1, 1);
  for (const Core& c : tt.cores()) v = TransferAll(c, v);
  return v(0, 0);
}

double MarginalTable::at(std::span<const std::size_t> index) const {
  Require(index.size() == dims.size(), ErrorCode::kShape, "marginal index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    Require(index[k] < dims[k], ErrorCode::kShape, "marginal index out of range");
    flat = flat * dims[k] + index[k];
  }
  return values[flat];
}

MarginalTable Marginal(const TensorTrain& tt, std::span<const std::size_t> keep) {
  Require(!keep.empty(), ErrorCode::kArgument, "marginal needs at least one kept site");
  std::vector<std::size_t> sites(keep.begin(), keep.end());
  std::sort(sites.begin(), sites.end());
  Require(std::adjacent_find(sites.begin(), sites.end()) == sites.end(),
          ErrorCode::kArgument, "duplicate site in keep set");
  Require(sites.back() < tt.size(), ErrorCode::kArgument, "kept site out of range");

  // One doubled-bond environment per partial assignment of the kept indices.
  std::vector<Matrix> states{Matrix::Ones(1, 1)};
  std::size_t next_keep = 0;
  MarginalTable table;
  table.sites = sites;
  for (std::size_t n = 0; n < tt.size(); ++n) {
    const Core& c = tt.core(n);
    if (next_keep < sites.size() && sites[next_keep] == n) {
      std::vector<Matrix> grown;
      grown.reserve(states.size() * c.dim);
      for (const Matrix& v : states)
        for (std::size_t i = 0; i < c.dim; ++i) grown.push_back(TransferOne(c, i, v));
      states.swap(grown);
      table.dims.push_back(c.dim);
      ++next_keep;
    } else {
      for (Matrix& v : states) v = TransferAll(c, v);
    }
  }
  table.values.reserve(states.size());
  for (const Matrix& v : states) table.values.push_back(v(0, 0));
  return table;
}

TensorTrain ConditionVector(const TensorTrain& tt, std::size_t site,
                            std::span<const double> weights) {
  Require(site < tt.size(), ErrorCode::kArgument, "conditioned site out of range");
  Require(!tt.output_site() || site != *tt.output_site(), ErrorCode::kArgument,
          "cannot condition the output site");
  Require(tt.size() >= 2, ErrorCode::kArgument, "conditioning needs at least two sites");
  const Core& c = tt.core(site);
  Require(weights.size() == c.dim, ErrorCode::kShape, "conditioning weight length mismatch");

  Matrix fixed = Matrix::Zero(static_cast<Eigen::Index>(c.left),
                              static_cast<Eigen::Index>(c.right));
  for (std::size_t i = 0; i < c.dim; ++i) fixed += weights[i] * c.Slice(i);

  std::vector<Core> cores = tt.cores();
  if (site > 0) {
    Core& nb = cores[site - 1];
    Core merged(nb.left, nb.dim, c.right);
    for (std::size_t i = 0; i < nb.dim; ++i) merged.SetSlice(i, nb.Slice(i) * fixed);
    nb = std::move(merged);
  } else {
    Core& nb = cores[site + 1];
    Core merged(c.left, nb.dim, nb.right);
    for (std::size_t i = 0; i < nb.dim; ++i) merged.SetSlice(i, fixed * nb.Slice(i));
    nb = std::move(merged);
  }
  cores.erase(cores.begin() + static_cast<std::ptrdiff_t>(site));
  std::optional<std::size_t> out = tt.output_site();
  if (out && *out > site) --*out;
  return TensorTrain(std::move(cores), out, tt.input_scale(), tt.embedding());
}

TensorTrain ConditionValue(const TensorTrain& tt, std::size_t site, double x) {
  Require(std::isfinite(x), ErrorCode::kDomain, "non-finite conditioning value");
  Require(site < tt.size(), ErrorCode::kArgument, "conditioned site out of range");
  const auto w = Embed(tt.embedding(), x, tt.core(site).dim);
  return ConditionVector(tt, site, w);
}

TensorTrain ConditionIndex(const TensorTrain& tt, std::size_t site, std::size_t index) {
  Require(site < tt.size(), ErrorCode::kArgument, "conditioned site out of range");
  Require(index < tt.core(site).dim, ErrorCode::kArgument, "conditioning index out of range");
  std::vector<double> w(tt.core(site).dim, 0.0);
  w[index] = 1.0;
  return ConditionVector(tt, site, w);
}

TensorTrain GaugeTransform(const TensorTrain& tt, std::span<const Matrix> bonds) {
  Require(bonds.size() + 1 == tt.size(), ErrorCode::kShape,
          "need one gauge matrix per internal bond");
  std::vector<Core> cores = tt.cores();
  for (std::size_t n = 0; n < bonds.size(); ++n) {
    const Matrix& m = bonds[n];
    const auto r = static_cast<Eigen::Index>(cores[n].right);
    Require(m.rows() == r && m.cols() == r, ErrorCode::kShape,
            "gauge matrix shape mismatch at bond " + std::to_string(n));
    if (m.isIdentity(0.0)) continue;
    Eigen::FullPivLU<Matrix> lu(m);
    Require(lu.isInvertible(), ErrorCode::kArgument,
            "singular gauge matrix at bond " + std::to_string(n));
    const Matrix inv = lu.inverse();
    Core& left = cores[n];
    for (std::size_t i = 0; i < left.dim; ++i) left.SetSlice(i, left.Slice(i) * m);
    Core& right = cores[n + 1];
    for (std::size_t i = 0; i < right.dim; ++i) right.SetSlice(i, inv * right.Slice(i));
  }
  return TensorTrain(std::move(cores), tt.output_site(), tt.input_scale(), tt.embedding());
}

Matrix DrawGaugeMatrix(std::size_t rank, Rng& rng) {
  const auto r = static_cast<Eigen::Index>(rank);
  for (;;) {
    Matrix m(r, r);
    for (Eigen::Index a = 0; a < r; ++a)
      for (Eigen::Index b = 0; b < r; ++b) m(a, b) = StandardNormal(rng);
    if (Condition(m) < kMaxGaugeCondition) return m;
  }
}

TensorTrain BalanceNorms(const TensorTrain& tt) {
  std::vector<Core> cores = tt.cores();
  std::vector<double> norms;
  double log_mean = 0.0;
  for (const Core& c : cores) {
    double sq = 0.0;
    for (double v : c.data) sq += v * v;
    if (sq == 0.0) return tt;
    norms.push_back(std::sqrt(sq));
    log_mean += std::log(norms.back()) / static_cast<double>(cores.size());
  }
  const double target = std::exp(log_mean);
  for (std::size_t n = 0; n < cores.size(); ++n)
    for (double& v : cores[n].data) v *= target / norms[n];
  return TensorTrain(std::move(cores), tt.output_site(), tt.input_scale(), tt.embedding());
}

TensorTrain GaugeRandomize(const TensorTrain& tt, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Matrix> bonds;
  bonds.reserve(tt.size() - 1);
  for (std::size_t n = 0; n + 1 < tt.size(); ++n)
    bonds.push_back(DrawGaugeMatrix(tt.core(n).right, rng));
  return BalanceNorms(GaugeTransform(tt, bonds));
}

namespace {

void CheckRescalable(const TensorTrain& tt, const Standardizer& s) {
  Require(tt.embedding() == EmbeddingKind::kPoly1, ErrorCode::kUnsupported,
          "rescaling requires the poly1 embedding");
  Require(s.size() == tt.input_count(), ErrorCode::kShape,
          "standardizer length does not match input count");
}

}  // namespace

TensorTrain Rescale(const TensorTrain& tt, const Standardizer& s) {
  CheckRescalable(tt, s);
  Require(tt.input_scale() == InputScale::kStandardized, ErrorCode::kArgument,
          "tensor train already consumes raw inputs");
  std::vector<Core> cores = tt.cores();
  const auto sites = tt.input_sites();
  for (std::size_t j = 0; j < sites.size(); ++j) {
    Core& c = cores[sites[j]];
    const double mu = s.mean()[j];
    const double sd = s.sd()[j];
    if (mu == 0.0 && sd == 1.0) continue;
    for (std::size_t a = 0; a < c.left; ++a)
      for (std::size_t b = 0; b < c.right; ++b) {
        const double g0 = c(a, 0, b);
        const double g1 = c(a, 1, b);
        c(a, 0, b) = g0 - (mu / sd) * g1;
        c(a, 1, b) = g1 / sd;
      }
  }
  return TensorTrain(std::move(cores), tt.output_site(), InputScale::kRaw, tt.embedding());
}

TensorTrain Unscale(const TensorTrain& tt, const Standardizer& s) {
  CheckRescalable(tt, s);
  Require(tt.input_scale() == InputScale::kRaw, ErrorCode::kArgument,
          "tensor train already consumes standardized inputs");
  std::vector<Core> cores = tt.cores();
  const auto sites = tt.input_sites();
  for (std::size_t j = 0; j < sites.size(); ++j) {
    Core& c = cores[sites[j]];
    const double mu = s.mean()[j];
    const double sd = s.sd()[j];
    if (mu == 0.0 && sd == 1.0) continue;
    for (std::size_t a = 0; a < c.left; ++a)
      for (std::size_t b = 0; b < c.right; ++b) {
        const double g0 = c(a, 0, b);
        const double g1 = c(a, 1, b);
        c(a, 0, b) = g0 + mu * g1;
        c(a, 1, b) = g1 * sd;
      }
  }
  return TensorTrain(std::move(cores), tt.output_site(), InputScale::kStandardized,
                     tt.embedding());
}

TensorTrain RandomTensorTrain(std::span<const std::size_t> dims,
                              std::span<const std::size_t> bond_ranks,
                              std::optional<std::size_t> output_site, Rng& rng) {
  Require(!dims.empty() && bond_ranks.size() + 1 == dims.size(), ErrorCode::kShape,
          "need N dims and N-1 bond ranks");
  std::vector<Core> cores;
  for (std::size_t n = 0; n < dims.size(); ++n) {
    const std::size_t l = n == 0 ? 1 : bond_ranks[n - 1];
    const std::size_t r = n + 1 == dims.size() ? 1 : bond_ranks[n];
    Core c(l, dims[n], r);
    for (double& v : c.data) v = StandardNormal(rng);
    cores.push_back(std::move(c));
  }
  return TensorTrain(std::move(cores), output_site);
}

}  // namespace ttshield::tt
