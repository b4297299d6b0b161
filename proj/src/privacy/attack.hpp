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
#ifndef TTSHIELD_PRIVACY_ATTACK_HPP_
#define TTSHIELD_PRIVACY_ATTACK_HPP_

#include <cstdint>
#include <vector>

#include "privacy/adversary.hpp"
#include "privacy/corpus.hpp"

namespace ttshield::privacy {

struct AttackOptions {
  int repeats = 5;
  int folds = 5;
  std::uint64_t seed = 0;
  AdversaryOptions adversary;
};

struct AttackResult {
  double mean = 0.0;  // Hamming score over repeats
  double std = 0.0;   // population standard deviation over repeats
  std::vector<double> repeat_scores;
  std::vector<double> label_mean;  // per cohort
  std::vector<double> label_std;
  // Labels constant across the corpus; scored as trivially correct.
  std::vector<bool> degenerate_label;
};

// Each repeat draws a fresh k-fold partition of the records, trains one
// adversary per fold and predicts the held-out fold, then scores the
// out-of-fold predictions at threshold 0.5.
AttackResult RunAttack(const AttackCorpus& corpus, const AttackOptions& options);

// Copy of the corpus with label vectors permuted across records.
AttackCorpus ShuffleLabels(const AttackCorpus& corpus, std::uint64_t seed);

// The fold adversaries of one k-fold partition, averaged; used to attack
// targets outside the corpus.
class AttackEnsemble {
 public:
  static AttackEnsemble Train(const AttackCorpus& corpus, const AttackOptions& options);
  Matrix Predict(const Matrix& features) const;
  std::vector<double> Predict(std::span<const double> features) const;

 private:
  std::vector<Adversary> members_;
};

}  // namespace ttshield::privacy

#endif  // TTSHIELD_PRIVACY_ATTACK_HPP_
