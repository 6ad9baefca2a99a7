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

#ifndef FBLNORM_CONSTRAINT_HPP_
#define FBLNORM_CONSTRAINT_HPP_

#include <cstddef>
#include <cstdint>

#include "fblnorm/family.hpp"

namespace fblnorm {

// How constraint_norm_exact evaluates sup_{x in B_E} sum_k |<x*_k, x>|.
enum class ConstraintRoute {
  kAuto,
  // max over sign patterns s of || sum_k s_k x*_k ||_{p'}; 2^(M-1) patterns.
  kSignEnumeration,
  // p = 1 only: max_i sum_k |x*_{k,i}|.
  kClosedForm,
  // p = inf only: max over vertices t of B_{l_inf} of sum_k |<x*_k, t>|.
  kVertexEnumeration,
};

struct ConstraintOptions {
  // Largest family size (or dimension, for vertex enumeration) enumerated.
  std::size_t enumeration_cap = 24;
  // 0 = resolve_threads() default.
  int threads = 0;
  ConstraintRoute route = ConstraintRoute::kAuto;
};

// The exact supremum. Under kAuto, p = 1 uses the closed form; otherwise zero
// functionals are dropped and functionals equal up to sign are merged before
// enumerating, and p = inf enumerates whichever of sign patterns or cube
// vertices is smaller. Forced routes enumerate the family as given.
//
// Throws Error(kCapacity) when the required enumeration exceeds the cap and
// Error(kDomain) when a forced route does not apply to the exponent.
double constraint_norm_exact(const FunctionalFamily& family,
                             const ConstraintOptions& options = {});

// True if constraint_norm_exact can certify a family of this size in this
// space under the cap, before any reduction.
bool exact_constraint_available(const SpaceSpec& space, std::size_t family_size,
                                std::size_t enumeration_cap);

// Greedy single-sign-flip ascent from `restarts` random sign patterns. Always
// a lower bound on the exact value; never used for certification.
double constraint_norm_heuristic(const FunctionalFamily& family,
                                 std::size_t restarts, std::uint64_t seed = 0);

// max of sum_k |<x*_k, x>| over `samples` random points of the unit sphere
// of l_p^n. Independent of the sign-pattern reformulation.
double sample_constraint_lower(const FunctionalFamily& family,
                               std::size_t samples, std::uint64_t seed);

}  // namespace fblnorm

#endif  // FBLNORM_CONSTRAINT_HPP_
