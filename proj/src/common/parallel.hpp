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
#ifndef TTSHIELD_COMMON_PARALLEL_HPP_
#define TTSHIELD_COMMON_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace ttshield {

// Process-wide worker count used by ParallelFor; 0 means hardware concurrency.
void SetWorkerCount(std::size_t workers);
std::size_t WorkerCount();

// Runs fn(i) for i in [0, n). Jobs must write to disjoint outputs; results are
// independent of the worker count. The first exception thrown by any job is
// rethrown after all workers join.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ttshield

#endif  // TTSHIELD_COMMON_PARALLEL_HPP_
