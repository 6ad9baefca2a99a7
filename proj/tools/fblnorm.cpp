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

// fblnorm: norm queries, witness construction, parameter scans and the
// verify-paper acceptance run.
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 capacity or domain error.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fblnorm/constraint.hpp"
#include "fblnorm/engine.hpp"
#include "fblnorm/error.hpp"
#include "fblnorm/experiments.hpp"
#include "fblnorm/parser.hpp"
#include "fblnorm/sequence_spaces.hpp"
#include "fblnorm/serialize.hpp"
#include "fblnorm/text.hpp"
#include "fblnorm/verification.hpp"
#include "fblnorm/witnesses.hpp"

namespace {

using namespace fblnorm;

constexpr int kExitVerificationFailed = 1;
constexpr int kExitInput = 2;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

// "[1, 2, 3]" or "1,2,3".
std::vector<double> parse_vector(std::string text, const char* what) {
  std::string_view body = trim(text);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw Error(ErrorKind::kInput, std::string(what) + ": missing ']'");
    body = body.substr(1, body.size() - 2);
  }
  try {
    auto values = parse_number_list(body);
    if (values.empty()) throw Error(ErrorKind::kInput, "empty list");
    return values;
  } catch (const Error& e) {
    throw Error(ErrorKind::kInput, std::string(what) + ": " + e.what());
  }
}

void write_output(const std::string& text, const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInput, "cannot open '" + *path + "' for writing");
  out << text;
}

struct EvalArgs {
  std::string expr;
  std::string at;
};

int run_eval(const EvalArgs& args) {
  const auto point = parse_vector(args.at, "--at");
  const LatticeExpr f = parse(args.expr, point.size());
  std::cout << format_number(f.evaluate(point)) << "\n";
  return 0;
}

struct BoundArgs {
  std::optional<std::string> lambda;
  std::optional<std::string> expr;
  std::string p;
  std::optional<std::size_t> n;
  std::optional<double> kg;
  std::size_t family_size = 0;
  bool sweep = false;
  OptimizerConfig optimizer;
  std::optional<std::size_t> samples;
};

int run_bound(BoundArgs& args) {
  const Exponent p = parse_exponent(args.p);
  args.optimizer.grothendieck = args.kg;
  if (args.lambda) {
    const auto lambda = parse_vector(*args.lambda, "--lambda");
    const SpaceSpec space(args.n.value_or(lambda.size()), p);
    const CertifyOptions options{args.kg, args.optimizer.enumeration_cap, args.optimizer.threads};
    std::cout << render(to_json(certify_moduli_norm(lambda, space, options)));
    return 0;
  }

  const LatticeExpr f = parse(*args.expr, args.n);
  const SpaceSpec space(f.dimension(), p);
  if (args.family_size == 0) throw Error(ErrorKind::kInput, "--family-size is required with --expr");
  if (args.sweep) {
    Json rows = Json::array();
    for (const auto& est : lower_bound_sweep(f, space, args.family_size, args.optimizer)) {
      rows.push_back(to_json(est, space));
    }
    std::cout << render(rows);
    return 0;
  }
  const NormEstimate est = optimize_family(f, space, args.family_size, args.optimizer);
  Json out = to_json(est, space);
  if (args.samples && est.witness) {
    out["sampled_constraint"] =
        sample_constraint_lower(*est.witness, *args.samples, args.optimizer.seed);
  }
  std::cout << render(out);
  return 0;
}

struct ScanArgs {
  std::string spec_file;
  std::optional<std::string> out;
  bool timestamp = false;
  bool timing = false;
  int threads = 0;
  std::optional<std::size_t> enumeration_cap;
};

int run_scan(const ScanArgs& args) {
  std::ifstream in(args.spec_file, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInput, "cannot read spec file '" + args.spec_file + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  ExperimentSpec spec = parse_experiment_spec(buffer.str());
  if (args.enumeration_cap) spec.optimizer.enumeration_cap = *args.enumeration_cap;
  const auto rows = run_experiment(spec, {args.threads, args.timing});
  std::optional<std::string> comment;
  if (args.timestamp) comment = "generated " + utc_timestamp();
  write_output(render_csv(rows, comment), args.out ? args.out : spec.output);
  return 0;
}

struct WalshArgs {
  unsigned k = 0;
  bool csv = false;
};

int run_walsh(const WalshArgs& args) {
  const WalshMatrix w = walsh_matrix(args.k);
  if (args.csv) {
    std::cout << walsh_csv(w);
    return 0;
  }
  Json rows = Json::array();
  for (const auto& row : w.rows()) rows.push_back(row);
  std::cout << render(Json{{"order", args.k}, {"size", w.size()}, {"rows", rows}});
  return 0;
}

struct VerifyArgs {
  VerifyOptions options;
  std::optional<std::string> report;
  bool timestamp = false;
};

int run_verify(const VerifyArgs& args) {
  const VerifyReport report = run_verification(args.options);
  Json out = to_json(report);
  if (args.timestamp) out["timestamp"] = utc_timestamp();
  write_output(render(out), args.report);
  for (const auto& suite : report.suites) {
    std::cerr << (suite.passed() ? "PASS " : "FAIL ") << suite.name << "  checks=" << suite.checks
              << " failures=" << suite.failures << "\n";
  }
  return report.passed() ? 0 : kExitVerificationFailed;
}

void add_optimizer_flags(CLI::App& cmd, OptimizerConfig& config) {
  cmd.add_option("--seed", config.seed, "Optimizer seed");
  cmd.add_option("--restarts", config.restarts, "Gaussian restarts besides analytic seeds");
  cmd.add_option("--iterations", config.iterations, "Proposals per restart");
  cmd.add_option("--initial-step", config.initial_step, "Initial relative step");
  cmd.add_option("--step-decay", config.step_decay, "Per-iteration step decay");
  cmd.add_option("--threads", config.threads, "Worker threads (0 = FBLNORM_THREADS or hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Norm bounds in free Banach lattices over l_p^n"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::size_t> enumeration_cap;
  app.add_option("--enum-cap", enumeration_cap, "Largest family size enumerated exactly")
      ->envname("FBLNORM_ENUM_CAP");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an expression at a dual point");
  eval_cmd->add_option("expr", eval.expr, "Expression, e.g. \"abs(d(e1))\"")->required();
  eval_cmd->add_option("--at", eval.at, "Dual point, e.g. \"[1,4]\"")->required();

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Certified lower and upper bounds");
  auto* lambda_opt = bound_cmd->add_option("--lambda", bound.lambda, "Moduli coefficients");
  auto* expr_opt = bound_cmd->add_option("--expr", bound.expr, "Expression to bound");
  lambda_opt->excludes(expr_opt);
  bound_cmd->add_option("--p", bound.p, "Exponent, `inf` for c0")->required();
  bound_cmd->add_option("--n", bound.n, "Ambient dimension");
  bound_cmd->add_option("--kg", bound.kg, "Grothendieck constant for the upper bound");
  bound_cmd->add_option("--family-size", bound.family_size, "Family size searched with --expr");
  bound_cmd->add_flag("--sweep", bound.sweep, "Report every family size up to --family-size");
  bound_cmd->add_option("--samples", bound.samples,
                        "Also report a sampled constraint value for the witness");
  add_optimizer_flags(*bound_cmd, bound.optimizer);

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Run a parameter scan and write CSV");
  scan_cmd->add_option("spec_file", scan.spec_file, "Key-value spec file")->required();
  scan_cmd->add_option("--out", scan.out, "CSV path (overrides `output` in the spec)");
  scan_cmd->add_flag("--timestamp", scan.timestamp, "Prepend a `# generated` comment line");
  scan_cmd->add_flag("--timing", scan.timing, "Fill the ms column");
  scan_cmd->add_option("--threads", scan.threads, "Worker threads");

  WalshArgs walsh;
  auto* walsh_cmd = app.add_subcommand("walsh", "Print the Walsh matrix of order 2^K");
  walsh_cmd->add_option("k", walsh.k, "Order exponent")->required();
  walsh_cmd->add_flag("--csv", walsh.csv, "CSV instead of JSON");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify-paper", "Run the acceptance suites");
  verify_cmd->add_option("--seed", verify.options.seed, "Base seed");
  verify_cmd->add_option("--suite", verify.options.suites, "Run only these suites (repeatable)");
  verify_cmd->add_option("--kg", verify.options.grothendieck, "Grothendieck constant");
  verify_cmd->add_option("--threads", verify.options.threads, "Worker threads");
  verify_cmd->add_option("--adversarial-runs", verify.options.adversarial_runs,
                         "Extra optimizer runs in krivine-falsification");
  verify_cmd->add_option("--report", verify.report, "JSON report path (default stdout)");
  verify_cmd->add_flag("--timestamp", verify.timestamp, "Add a timestamp field to the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (enumeration_cap) {
      bound.optimizer.enumeration_cap = *enumeration_cap;
      verify.options.enumeration_cap = *enumeration_cap;
      scan.enumeration_cap = enumeration_cap;
    }
    if (*eval_cmd) return run_eval(eval);
    if (*bound_cmd) {
      if (!bound.lambda && !bound.expr) {
        throw Error(ErrorKind::kInput, "bound needs --lambda or --expr");
      }
      return run_bound(bound);
    }
    if (*scan_cmd) return run_scan(scan);
    if (*walsh_cmd) return run_walsh(walsh);
    if (*verify_cmd) return run_verify(verify);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
