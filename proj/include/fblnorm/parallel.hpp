// Copyright 2026 The fblnorm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FBLNORM_PARALLEL_HPP_
#define FBLNORM_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace fblnorm {

// requested > 0 wins; otherwise FBLNORM_THREADS, otherwise the hardware
// concurrency. Always >= 1.
int resolve_threads(int requested = 0);

// Runs fn(i) for i in [0, count) on up to `threads` workers. Callers write
// results into per-index slots, so output never depends on scheduling.
// Nested calls from inside a worker run serially. If several iterations
// throw, the exception from the lowest index is rethrown.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace fblnorm

#endif  // FBLNORM_PARALLEL_HPP_
