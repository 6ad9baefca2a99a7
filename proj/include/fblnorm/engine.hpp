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

#ifndef FBLNORM_ENGINE_HPP_
#define FBLNORM_ENGINE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fblnorm/constraint.hpp"
#include "fblnorm/family.hpp"
#include "fblnorm/lattice_expr.hpp"

namespace fblnorm {

// sum_k |f(x*_k)|. Throws DimensionError if f and the family disagree on n.
double objective(const LatticeExpr& f, const FunctionalFamily& family);

// objective / exact constraint: a certified lower bound for the norm of f.
// Throws Error(kDegenerate) if the constraint is zero.
double normalized_value(const LatticeExpr& f, const FunctionalFamily& family,
                        const ConstraintOptions& options = {});

// lambda if f has the shape sum_i lambda_i |Atom(e_i)| (every coordinate at
// most once, scalars folded in), otherwise nullopt. Coordinates that do not
// occur get lambda_i = 0.
std::optional<std::vector<double>> match_moduli_combination(const LatticeExpr& f);

// Upper bound from the triangle inequality and ||delta_x|| = ||x||_p.
double expression_triangle_upper(const LatticeExpr& f, const Exponent& p);

struct OptimizerConfig {
  std::uint64_t seed = 0;
  std::size_t restarts = 16;
  std::size_t iterations = 200;
  double initial_step = 0.5;
  double step_decay = 0.9;
  std::size_t enumeration_cap = 24;
  // Sample count for the sampling oracle when it is requested from the CLI.
  std::size_t samples = 100000;
  int threads = 0;
  // Runs the search on the negated space of families: every starting family,
  // seed and perturbation is negated. Used to compare f_+ against f_-.
  bool mirror = false;
  // Grothendieck constant for the upper bound; nullopt = default.
  std::optional<double> grothendieck;
};

struct NormEstimate {
  double lower = 0.0;
  std::optional<double> upper;
  // Normalized so its exact constraint is 1 (up to rounding).
  std::optional<FunctionalFamily> witness;
  bool certified = false;
  std::vector<std::string> method;
  std::size_t family_size = 0;
};

// Multi-restart coordinate ascent on normalized_value over families of size
// family_size. Restarts begin at the analytic witnesses that apply to f, then
// at Gaussian families; every candidate is scored with the exact constraint,
// so the result is certified. Deterministic given config.seed, independent of
// the thread count.
//
// Throws Error(kCapacity) if the exact constraint is out of reach for
// family_size under config.enumeration_cap.
NormEstimate optimize_family(const LatticeExpr& f, const SpaceSpec& space,
                             std::size_t family_size,
                             const OptimizerConfig& config = {});

// Estimates for family sizes 1..max_size. Each size also starts from the
// previous best witness padded with a zero functional, so lower bounds are
// nondecreasing.
std::vector<NormEstimate> lower_bound_sweep(const LatticeExpr& f,
                                            const SpaceSpec& space,
                                            std::size_t max_size,
                                            const OptimizerConfig& config = {});

}  // namespace fblnorm

#endif  // FBLNORM_ENGINE_HPP_
