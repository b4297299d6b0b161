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
#ifndef TTSHIELD_TENSORIZE_DISCRETIZE_HPP_
#define TTSHIELD_TENSORIZE_DISCRETIZE_HPP_

namespace ttshield::tensorize {

// Nearest point of the uniform grid {0, 1/(b-1), ..., 1}; exact midpoints go
// to the lower point. Scores outside [0, 1] are clamped with a warning.
double Discretize(double score, int bins);

}  // namespace ttshield::tensorize

#endif  // TTSHIELD_TENSORIZE_DISCRETIZE_HPP_
