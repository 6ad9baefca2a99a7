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

#ifndef FBLNORM_RANDOM_HPP_
#define FBLNORM_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "fblnorm/family.hpp"
#include "fblnorm/lattice_expr.hpp"

namespace fblnorm {

using Rng = std::mt19937_64;

// Derives an independent stream seed from a base seed and integer tags
// (splitmix64 finalizer applied per tag).
std::uint64_t mix_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags);

// Coefficients with a common random sign and magnitudes in (0, 1]; each entry
// is zeroed with probability zero_probability, but never all of them.
std::vector<double> random_lambda(Rng& rng, std::size_t m,
                                  double zero_probability = 0.0);

// Standard Gaussian entries.
std::vector<double> random_point(Rng& rng, std::size_t n);
FunctionalFamily random_family(Rng& rng, const SpaceSpec& space, std::size_t count);

// Random tree over all node kinds with atoms drawn from unit and Gaussian
// vectors; depth counts edges from the root.
LatticeExpr random_expression(Rng& rng, std::size_t n, int max_depth);

}  // namespace fblnorm

#endif  // FBLNORM_RANDOM_HPP_
