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

#ifndef FBLNORM_SRC_DUAL_NORM_HPP_
#define FBLNORM_SRC_DUAL_NORM_HPP_

#include <algorithm>
#include <cmath>

#include "fblnorm/sequence_spaces.hpp"

namespace fblnorm::internal {

// The l_q norm split into per-coordinate terms and a final root, so callers
// can compare accumulated terms and take one root at the end.
class DualNorm {
 public:
  enum class Kind { kOne, kTwo, kMax, kPower };

  // Norm of exponent q itself (pass the dual exponent for constraint work).
  explicit DualNorm(const Exponent& q) {
    if (q.is_infinite()) {
      kind_ = Kind::kMax;
    } else if (q.value() == 1.0) {
      kind_ = Kind::kOne;
    } else if (q.value() == 2.0) {
      kind_ = Kind::kTwo;
    } else {
      kind_ = Kind::kPower;
      q_ = q.value();
    }
  }

  Kind kind() const noexcept { return kind_; }
  double q() const noexcept { return q_; }

  double term(double v) const {
    switch (kind_) {
      case Kind::kOne:
      case Kind::kMax:
        return std::abs(v);
      case Kind::kTwo:
        return v * v;
      case Kind::kPower:
        return std::pow(std::abs(v), q_);
    }
    return 0.0;
  }

  double combine(double acc, double t) const {
    return kind_ == Kind::kMax ? std::max(acc, t) : acc + t;
  }

  double accumulate(const double* v, std::size_t n) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc = combine(acc, term(v[i]));
    return acc;
  }

  double root(double acc) const {
    switch (kind_) {
      case Kind::kOne:
      case Kind::kMax:
        return acc;
      case Kind::kTwo:
        return std::sqrt(acc);
      case Kind::kPower:
        return std::pow(acc, 1.0 / q_);
    }
    return acc;
  }

 private:
  Kind kind_ = Kind::kOne;
  double q_ = 1.0;
};

}  // namespace fblnorm::internal

#endif  // FBLNORM_SRC_DUAL_NORM_HPP_
