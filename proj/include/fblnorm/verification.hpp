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

#ifndef FBLNORM_VERIFICATION_HPP_
#define FBLNORM_VERIFICATION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fblnorm/serialize.hpp"

namespace fblnorm {

struct VerifyOptions {
  std::uint64_t seed = 42;
  int threads = 0;
  std::optional<double> grothendieck;
  // Suite names to run; empty runs all of them.
  std::vector<std::string> suites;
  std::size_t adversarial_runs = 1000;
  std::size_t enumeration_cap = 24;
};

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  // Smallest margin by which a check held; negative once one failed.
  std::optional<double> worst_slack;
  Json worst_case;
  // Up to kMaxReportedFailures failing cases with their full inputs.
  std::vector<Json> failed_cases;
  Json metrics = Json::object();
  // Wall time; not part of the serialized report.
  double seconds = 0.0;

  static constexpr std::size_t kMaxReportedFailures = 10;

  bool passed() const noexcept { return failures == 0; }
};

struct VerifyReport {
  std::uint64_t seed = 0;
  double grothendieck = 0.0;
  std::vector<SuiteResult> suites;

  bool passed() const noexcept;
  const SuiteResult* find(const std::string& name) const;
};

// walsh-feasibility, walsh-objective, sandwich, c0, ell1-regime,
// pos-neg-symmetry, krivine-falsification, oracle-equivalence, structural.
const std::vector<std::string>& verification_suites();

// Runs the selected suites. The report depends only on the options other
// than `threads`. Throws Error(kInput) for an unknown suite name.
VerifyReport run_verification(const VerifyOptions& options = {});

// Contains no timing or host information.
Json to_json(const VerifyReport& report);

}  // namespace fblnorm

#endif  // FBLNORM_VERIFICATION_HPP_
