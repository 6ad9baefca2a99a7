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

// Acceptance gate: runs every verification suite and prints one PASS/FAIL
// line per criterion. Exit status is nonzero if any criterion fails.
//
// Usage: acceptance [--seed N] [--report PATH]

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fblnorm/serialize.hpp"
#include "fblnorm/verification.hpp"

namespace {

using namespace fblnorm;

struct Criterion {
  int id;
  const char* title;
  const char* suite;       // nullptr for the reproducibility criterion
  double time_limit = 0.0;  // seconds; 0 = none
};

const std::vector<Criterion> kCriteria{
    {1, "Walsh feasibility", "walsh-feasibility", 60.0},
    {2, "Walsh objective", "walsh-objective"},
    {3, "sandwich for p > 2", "sandwich", 300.0},
    {4, "c0 case", "c0"},
    {5, "p <= 2 regime", "ell1-regime"},
    {6, "positive/negative part symmetry", "pos-neg-symmetry"},
    {7, "upper-estimate falsification", "krivine-falsification"},
    {8, "oracle equivalence", "oracle-equivalence"},
    {9, "structural properties", "structural"},
    {10, "reproducibility across worker counts", nullptr},
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

std::string describe(const SuiteResult& s) {
  std::string text = std::to_string(s.checks) + " checks, " + std::to_string(s.failures) +
                     " failures";
  if (s.worst_slack) text += ", worst slack " + fmt(*s.worst_slack);
  for (const auto& [key, value] : s.metrics.items()) {
    if (value.is_number_float()) text += ", " + key + " " + fmt(value.get<double>());
  }
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  VerifyOptions options;
  std::string report_path;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--seed") {
      options.seed = std::strtoull(argv[i + 1], nullptr, 10);
    } else if (flag == "--report") {
      report_path = argv[i + 1];
    } else {
      std::cerr << "unknown flag " << flag << "\n";
      return 2;
    }
  }

  options.threads = 1;
  const VerifyReport serial = run_verification(options);
  const std::string serial_text = render(to_json(serial));
  options.threads = 4;
  const VerifyReport pooled = run_verification(options);
  const std::string pooled_text = render(to_json(pooled));
  if (!report_path.empty()) std::ofstream(report_path, std::ios::binary) << serial_text;

  int failed = 0;
  for (const auto& c : kCriteria) {
    bool ok = false;
    std::string detail;
    if (c.suite) {
      const SuiteResult* s = serial.find(c.suite);
      ok = s && s->passed();
      detail = s ? describe(*s) : "suite missing";
      if (s) {
        detail += ", " + fmt(s->seconds) + " s";
        if (c.time_limit > 0.0) {
          detail += " (limit " + fmt(c.time_limit) + " s)";
          ok = ok && s->seconds < c.time_limit;
        }
      }
    } else {
      ok = serial_text == pooled_text;
      detail = "1 worker vs 4 workers, " + std::to_string(serial_text.size()) + " bytes, " +
               (ok ? "identical" : "different");
    }
    failed += !ok;
    std::printf("[%s] criterion %d: %s: %s\n", ok ? "PASS" : "FAIL", c.id, c.title,
                detail.c_str());
  }
  std::printf("%d of %zu criteria passed (seed %llu)\n",
              static_cast<int>(kCriteria.size()) - failed, kCriteria.size(),
              static_cast<unsigned long long>(options.seed));
  return failed == 0 ? 0 : 1;
}
