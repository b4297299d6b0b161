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
#ifndef TTSHIELD_PREDICTORS_MLP_MODEL_HPP_
#define TTSHIELD_PREDICTORS_MLP_MODEL_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "common/dataset.hpp"
#include "common/standardizer.hpp"
#include "predictors/network.hpp"

namespace ttshield::predictors {

struct MlpHyper {
  std::vector<std::size_t> hidden{19, 19};
  int epochs = 100;
  std::size_t batch_size = 32;
  double learning_rate = 1e-3;
  double weight_decay = 1e-5;
};

// Binary MLP classifier. `network` is stored raw-scale: the standardizer used
// in training is folded into the first layer, so Predict takes raw inputs.
struct MlpModel {
  Network network;
  MlpHyper hyper;
  Standardizer standardizer;

  double Predict(std::span<const double> x) const { return network.Forward1(x); }
  std::vector<double> Parameters() const { return network.params(); }
};

// First layer W <- W / sd (column-wise), b <- b - W~ (mean / sd).
Network FoldStandardizer(const Network& standardized, const Standardizer& s);

std::size_t MlpParameterCount(std::size_t inputs, std::span<const std::size_t> hidden);

// Trains on standardized inputs with Adam and binary cross-entropy.
MlpModel TrainMlp(const Dataset& data, const MlpHyper& hyper, std::uint64_t seed);

}  // namespace ttshield::predictors

#endif  // TTSHIELD_PREDICTORS_MLP_MODEL_HPP_
