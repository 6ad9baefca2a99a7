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

#ifndef FBLNORM_SRC_CONSTRAINT_TRACKER_HPP_
#define FBLNORM_SRC_CONSTRAINT_TRACKER_HPP_

#include <cstddef>
#include <memory>

#include "fblnorm/family.hpp"

namespace fblnorm::internal {

// Maintains the constraint value of a family under single-entry updates.
// Values are used only to steer the search; final scores are always
// recomputed with constraint_norm_exact.
class ConstraintTracker {
 public:
  virtual ~ConstraintTracker() = default;

  virtual double value() const = 0;
  // Constraint after adding delta to entry (k, i). Does not change state.
  virtual double propose(std::size_t k, std::size_t i, double delta) = 0;
  // Applies the most recent proposal.
  virtual void commit() = 0;
};

std::unique_ptr<ConstraintTracker> make_constraint_tracker(
    const FunctionalFamily& start, std::size_t enumeration_cap);

}  // namespace fblnorm::internal

#endif  // FBLNORM_SRC_CONSTRAINT_TRACKER_HPP_
