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

#ifndef FBLNORM_TOLERANCE_HPP_
#define FBLNORM_TOLERANCE_HPP_

#include <algorithm>
#include <cmath>

namespace fblnorm {

// Default relative tolerance for comparing computed quantities.
inline constexpr double kRelativeTolerance = 1e-9;
// Widened tolerance used to re-check a certified claim before failing it.
inline constexpr double kWidenedTolerance = 1e-7;
// Slack allowed on the constraint value of a normalized certified family.
inline constexpr double kCertificationSlack = 1e-12;
// Two optimizer candidates closer than this are considered tied.
inline constexpr double kTieTolerance = 1e-12;

inline bool approx_equal(double a, double b,
                         double rel = kRelativeTolerance) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// a <= b up to a relative tolerance.
inline bool approx_le(double a, double b, double rel = kRelativeTolerance) {
  return a <= b + rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace fblnorm

#endif  // FBLNORM_TOLERANCE_HPP_
