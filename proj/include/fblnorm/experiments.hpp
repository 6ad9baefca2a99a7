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

#ifndef FBLNORM_EXPERIMENTS_HPP_
#define FBLNORM_EXPERIMENTS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fblnorm/engine.hpp"
#include "fblnorm/sequence_spaces.hpp"

namespace fblnorm {

// A parameter scan over exponents and coefficient vectors for the moduli
// combination sum_i lambda_i |delta_{e_i}|.
//
// Spec files are `key = value` lines; `#` starts a comment. Keys:
//
//   name                   identifier used in the experiment column
//   p                      comma-separated exponents, `inf` allowed
//   n                      ambient dimension (default: each lambda's length)
//   lambda.ones            lengths of all-ones coefficient vectors
//   lambda.explicit        vectors separated by `;`, entries by `,`
//   lambda.random.count    random vectors per length
//   lambda.random.lengths  lengths of random vectors
//   lambda.random.seed     required with lambda.random.count
//   family_sizes           if set, run the optimizer at each size instead of
//                          the closed-form certificate
//   optimizer.seed         required with family_sizes
//   optimizer.restarts, optimizer.iterations, optimizer.initial_step,
//   optimizer.step_decay, optimizer.enumeration_cap, optimizer.samples
//   grothendieck           K_G for upper bounds (default: Krivine's bound)
//   output                 CSV path (the CLI writes to stdout otherwise)
struct ExperimentSpec {
  std::string name = "experiment";
  std::vector<Exponent> exponents;
  std::optional<std::size_t> dimension;
  // Resolved coefficient vectors, in file order: ones, explicit, random.
  std::vector<std::vector<double>> lambdas;
  std::vector<std::size_t> family_sizes;
  OptimizerConfig optimizer;
  std::optional<std::string> output;
};

// Throws Error(kInput) with "line L: key: problem" diagnostics, including
// for empty grids and missing seeds.
ExperimentSpec parse_experiment_spec(std::string_view text);

struct ReportRow {
  std::string experiment;
  Exponent p{1.0};
  std::size_t n = 0;
  std::size_t m = 0;  // coefficient count
  std::string lambda;
  std::optional<double> r;
  double lower = 0.0;
  std::optional<double> upper;
  bool certified = false;
  std::string method;
  std::optional<double> ms;
};

struct ScanOptions {
  int threads = 0;
  // Fills the ms column. Off by default so reports are reproducible.
  bool timing = false;
};

// One row per (p, lambda[, family size]) cell in that order. Cells run in
// parallel; rows come back in grid order.
std::vector<ReportRow> run_experiment(const ExperimentSpec& spec,
                                      const ScanOptions& options = {});

// Full comma-joined rendering for up to 16 coefficients; otherwise an
// FNV-1a hash with the l1, l2 and l_inf norms.
std::string lambda_digest(const std::vector<double>& lambda);

inline constexpr std::string_view kCsvHeader =
    "experiment,p,n,m,lambda,r,lower,upper,certified,method,ms";

// Header line plus one line per row. `comment` (e.g. a timestamp) becomes a
// leading `# ...` line when given.
std::string render_csv(const std::vector<ReportRow>& rows,
                       const std::optional<std::string>& comment = std::nullopt);

}  // namespace fblnorm

#endif  // FBLNORM_EXPERIMENTS_HPP_
