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

#ifndef FBLNORM_WITNESSES_HPP_
#define FBLNORM_WITNESSES_HPP_

#include <bit>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fblnorm/family.hpp"
#include "fblnorm/sequence_spaces.hpp"

namespace fblnorm {

// Sylvester-Hadamard matrix of order m = 2^k with w(i, j) =
// (-1)^popcount(i & j). Entries are computed on demand.
class WalshMatrix {
 public:
  static constexpr unsigned kMaxOrder = 20;

  // Throws Error(kCapacity) for k > kMaxOrder.
  explicit WalshMatrix(unsigned k);

  unsigned order() const noexcept { return k_; }
  std::size_t size() const noexcept { return std::size_t{1} << k_; }

  int operator()(std::size_t i, std::size_t j) const noexcept {
    return (std::popcount(i & j) & 1) ? -1 : 1;
  }

  // Dense entries by recursive doubling [[H, H], [H, -H]]. Throws
  // Error(kCapacity) above 2^12 rows.
  std::vector<std::vector<int>> rows() const;

 private:
  unsigned k_;
};

WalshMatrix walsh_matrix(unsigned k);

// One line per row, entries comma-separated.
std::string walsh_csv(const WalshMatrix& w);

// lambda zero-padded to m = 2^k; weights b_i = |lambda_i|^(r-1) /
// ||lambda||_r^(r-1) (0 where lambda_i = 0); functionals x_j(e_i) =
// b_i w(i, j) / m for i < m and 0 beyond. Objective on the moduli
// combination is ||lambda||_r when lambda has one sign.
//
// Throws Error(kDomain) for p <= 2, Error(kDegenerate) for lambda = 0,
// DimensionError if lambda is longer than space.n.
FunctionalFamily walsh_witness(const std::vector<double>& lambda,
                               const SpaceSpec& space);

// {s / 2^m : s in {+-1}^m} on the m nonzero coordinates of lambda. Objective
// on the moduli combination is ||lambda||_1 when lambda has one sign, and the
// constraint is at most 1 for p <= 2 because ||.||_2 <= ||.||_p there.
//
// Throws Error(kDomain) for p > 2, Error(kDegenerate) for lambda = 0,
// Error(kCapacity) if 2^m exceeds 2^20 functionals.
FunctionalFamily allsign_witness(const std::vector<double>& lambda,
                                 const SpaceSpec& space);

// Krivine's classical bound pi / (2 ln(1 + sqrt 2)).
inline constexpr double kKrivineBound = 1.7822139781913717;

// The configured constant, or kKrivineBound. Throws Error(kConfig) if the
// configured value is below 1 or not finite.
double grothendieck_constant(std::optional<double> configured = std::nullopt);

// K_G ||lambda||_r. Throws Error(kDomain) for p <= 2.
double krivine_upper(const std::vector<double>& lambda, const SpaceSpec& space,
                     std::optional<double> grothendieck = std::nullopt);

// ||lambda||_1.
double triangle_upper(const std::vector<double>& lambda);

struct BoundCertificate {
  std::vector<double> lambda;
  SpaceSpec space;
  std::optional<double> r;
  double lower = 0.0;
  double upper = 0.0;
  // True iff the witness constraint was computed exactly.
  bool certified = false;
  FunctionalFamily witness;
  std::vector<std::string> provenance;
};

struct CertifyOptions {
  std::optional<double> grothendieck;
  std::size_t enumeration_cap = 24;
  int threads = 0;
};

// Two-sided bounds for sum_i lambda_i |delta_{e_i}| in l_p^n; lambda must
// fit in space.n and is zero-extended to it. p > 2: Walsh witness below,
// K_G ||lambda||_r above. p <= 2: all-sign witness below, ||lambda||_1 above.
//
// The witness constraint is computed exactly; the reported witness is the
// family rescaled to constraint <= 1 and lower is its objective. When that
// objective matches the closed form (||lambda||_r or ||lambda||_1) within
// kCertificationSlack the closed form is reported. When lambda has both
// signs the witness is also built on each sign class and the best value is
// kept. If the witness is too large to enumerate, lower is its objective
// under the analytic feasibility argument and certified is false.
//
// Throws Error(kDegenerate) for lambda = 0.
BoundCertificate certify_moduli_norm(const std::vector<double>& lambda,
                                     const SpaceSpec& space,
                                     const CertifyOptions& options = {});

}  // namespace fblnorm

#endif  // FBLNORM_WITNESSES_HPP_
