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

#ifndef FBLNORM_SEQUENCE_SPACES_HPP_
#define FBLNORM_SEQUENCE_SPACES_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace fblnorm {

// An exponent p in [1, inf]. Infinity is a distinct state, not a large
// float, and models the finite truncation of c0 (i.e. l_inf^n).
class Exponent {
 public:
  // Throws Error(kConfig) unless 1 <= p (p may be +infinity).
  explicit Exponent(double p);

  static Exponent infinity() noexcept;

  bool is_infinite() const noexcept { return infinite_; }
  // +infinity when is_infinite().
  double value() const noexcept;

  friend bool operator==(const Exponent& a, const Exponent& b) noexcept {
    return a.infinite_ == b.infinite_ && a.p_ == b.p_;
  }

 private:
  Exponent(double p, bool infinite) noexcept : p_(p), infinite_(infinite) {}

  double p_ = 1.0;
  bool infinite_ = false;
};

// Accepts a decimal string or the literal "inf".
Exponent parse_exponent(std::string_view text);
std::string to_string(const Exponent& p);

// l_p^n; p = inf stands for c0 truncated to n coordinates.
struct SpaceSpec {
  SpaceSpec(std::size_t n, Exponent p);

  std::size_t n;
  Exponent p;
};

// (sum |x_i|^p)^(1/p), or max |x_i| for p = inf. Terms are summed in order
// of increasing magnitude, so the result is invariant under permutations.
double norm(std::span<const double> x, const Exponent& p);

// The conjugate q with 1/p + 1/q = 1; 1 <-> inf.
Exponent dual_exponent(const Exponent& p);

// r with 1/r = 1/2 + 1/p, and r = 2 for p = inf. Throws Error(kDomain)
// for p <= 2.
double ell_r_exponent(const Exponent& p);

}  // namespace fblnorm

#endif  // FBLNORM_SEQUENCE_SPACES_HPP_
