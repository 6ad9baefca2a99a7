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

#ifndef FBLNORM_FAMILY_HPP_
#define FBLNORM_FAMILY_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "fblnorm/sequence_spaces.hpp"

namespace fblnorm {

// A finite list (x*_k), k < M, of dual vectors of the space; a candidate
// witness in the norm formula. Stored row-major, one row per functional.
class FunctionalFamily {
 public:
  // Throws DimensionError if a row's length differs from space.n and
  // Error(kConfig) if there are no rows or an entry is not finite.
  FunctionalFamily(SpaceSpec space, const std::vector<std::vector<double>>& rows);
  FunctionalFamily(SpaceSpec space, std::size_t count, std::vector<double> flat);

  const SpaceSpec& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return count_; }
  std::size_t dimension() const noexcept { return space_.n; }

  std::span<const double> operator[](std::size_t k) const {
    return {flat_.data() + k * space_.n, space_.n};
  }
  double at(std::size_t k, std::size_t i) const {
    return flat_[k * space_.n + i];
  }
  std::span<const double> flat() const noexcept { return flat_; }

  FunctionalFamily negated() const;
  FunctionalFamily scaled(double c) const;
  // Appends zero functionals until size() == count (no-op if already >=).
  FunctionalFamily padded(std::size_t count) const;
  double sum_of_squares() const;

  std::vector<std::vector<double>> rows() const;

 private:
  SpaceSpec space_;
  std::size_t count_;
  std::vector<double> flat_;
};

}  // namespace fblnorm

#endif  // FBLNORM_FAMILY_HPP_
