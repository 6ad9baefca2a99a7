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

#include "fblnorm/verification.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fblnorm/constraint.hpp"
#include "fblnorm/engine.hpp"
#include "fblnorm/error.hpp"
#include "fblnorm/parallel.hpp"
#include "fblnorm/parser.hpp"
#include "fblnorm/random.hpp"
#include "fblnorm/tolerance.hpp"
#include "fblnorm/witnesses.hpp"

namespace fblnorm {

namespace {

// Stream tags for mix_seed. The coefficient draws are shared by the Walsh,
// sandwich and c0 suites so that every suite sees the same grid.
enum Stream : std::uint64_t {
  kGridLambda = 1,
  kSandwichRun,
  kEll1Lambda,
  kSymmetry,
  kAdversarial,
  kOracle,
  kHomogeneity,
  kLatticeIdentity,
  kPermutation,
  kRoundTrip,
  kSweep,
};

constexpr std::size_t kGridCoefficients = 20;
constexpr std::array<std::size_t, 4> kGridLengths{2, 4, 8, 16};

const std::vector<Exponent>& grid_exponents() {
  static const std::vector<Exponent> exponents{Exponent(2.5), Exponent(3.0), Exponent(4.0),
                                               Exponent(10.0), Exponent::infinity()};
  return exponents;
}

Json vector_json(const std::vector<double>& v) { return Json(v); }

Json family_json(const FunctionalFamily& f) { return family_to_json(f); }

// Collects check outcomes for one suite.
class Recorder {
 public:
  explicit Recorder(SuiteResult& out) : out_(out) {}

  // Passes iff margin >= 0. `scale` sizes the widened re-check reported for
  // failures; it never turns a failure into a pass.
  void check(double margin, double scale, Json inputs) {
    ++out_.checks;
    inputs["margin"] = margin;
    if (!out_.worst_slack || margin < *out_.worst_slack) {
      out_.worst_slack = margin;
      out_.worst_case = inputs;
    }
    if (margin >= 0.0) return;
    fail(std::move(inputs), margin + kWidenedTolerance * scale >= 0.0);
  }

  // Exact equality.
  void check_equal(double a, double b, Json inputs) {
    inputs["left"] = a;
    inputs["right"] = b;
    check(a == b ? 0.0 : -std::abs(a - b), 1.0 + std::max(std::abs(a), std::abs(b)),
          std::move(inputs));
  }

  // |a - b| <= tol.
  void check_close(double a, double b, double tol, Json inputs) {
    inputs["left"] = a;
    inputs["right"] = b;
    check(tol - std::abs(a - b), 1.0 + std::max(std::abs(a), std::abs(b)), std::move(inputs));
  }

  // A yes/no property; it does not contribute a slack.
  void require(bool ok, Json inputs) {
    ++out_.checks;
    if (!ok) fail(std::move(inputs), false);
  }

  Json& metrics() { return out_.metrics; }

 private:
  void fail(Json inputs, bool widened) {
    ++out_.failures;
    if (out_.failed_cases.size() >= SuiteResult::kMaxReportedFailures) return;
    inputs["within_widened_tolerance"] = widened;
    out_.failed_cases.push_back(std::move(inputs));
  }

  SuiteResult& out_;
};

// Running maximum / minimum kept in a metrics object.
void track_max(Json& metrics, const char* key, double value) {
  if (!metrics.contains(key) || value > metrics[key].get<double>()) metrics[key] = value;
}
void track_min(Json& metrics, const char* key, double value) {
  if (!metrics.contains(key) || value < metrics[key].get<double>()) metrics[key] = value;
}

// Evaluates fn(i) for i < count in parallel and returns results in index order.
template <typename T, typename Fn>
std::vector<T> gather(std::size_t count, int threads, Fn&& fn) {
  std::vector<T> out(count);
  parallel_for(count, threads, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

std::vector<double> grid_lambda(std::uint64_t seed, std::size_t m, std::size_t j) {
  Rng rng(mix_seed(seed, {kGridLambda, m, j}));
  // Every other draw has some zero coefficients.
  return random_lambda(rng, m, j % 2 == 1 ? 0.2 : 0.0);
}

double closed_norm(const std::vector<double>& lambda, const Exponent& p) {
  return norm(lambda, Exponent(ell_r_exponent(p)));
}

Json cell_json(const Exponent& p, std::size_t m, std::size_t j,
               const std::vector<double>& lambda) {
  Json j_out = Json::object();
  j_out["p"] = exponent_to_json(p);
  j_out["m"] = m;
  j_out["draw"] = j;
  j_out["lambda"] = vector_json(lambda);
  return j_out;
}

// --- Walsh grid ----------------------------------------------------------

struct WalshCell {
  Exponent p{2.5};
  std::size_t m = 0;
  std::size_t j = 0;
  std::vector<double> lambda;
  double constraint = 0.0;
  double objective = 0.0;
  double closed = 0.0;
};

std::vector<WalshCell> walsh_cells(const VerifyOptions& options,
                                   const std::vector<Exponent>& exponents, int threads) {
  const std::size_t per_p = kGridLengths.size() * kGridCoefficients;
  return gather<WalshCell>(exponents.size() * per_p, threads, [&](std::size_t c) {
    WalshCell cell;
    cell.p = exponents[c / per_p];
    cell.m = kGridLengths[(c % per_p) / kGridCoefficients];
    cell.j = c % kGridCoefficients;
    cell.lambda = grid_lambda(options.seed, cell.m, cell.j);
    const SpaceSpec space(cell.m, cell.p);
    const FunctionalFamily w = walsh_witness(cell.lambda, space);
    cell.constraint = constraint_norm_exact(
        w, {options.enumeration_cap, 1, ConstraintRoute::kSignEnumeration});
    cell.objective = objective(moduli_combination(cell.lambda), w);
    cell.closed = closed_norm(cell.lambda, cell.p);
    return cell;
  });
}

void record_feasibility(Recorder& rec, const WalshCell& cell) {
  Json in = cell_json(cell.p, cell.m, cell.j, cell.lambda);
  in["constraint"] = cell.constraint;
  rec.check(1.0 + kCertificationSlack - cell.constraint, 1.0, std::move(in));
  track_max(rec.metrics(), "max_constraint", cell.constraint);
}

void record_objective(Recorder& rec, const WalshCell& cell) {
  Json in = cell_json(cell.p, cell.m, cell.j, cell.lambda);
  in["objective"] = cell.objective;
  in["closed_form"] = cell.closed;
  const double error = std::abs(cell.objective - cell.closed);
  rec.check(kCertificationSlack * (1.0 + cell.closed) - error, 1.0 + cell.closed,
            std::move(in));
  track_max(rec.metrics(), "max_relative_error", error / cell.closed);
}

// --- Sandwich grid -------------------------------------------------------

struct SandwichCell {
  Exponent p{2.5};
  std::size_t m = 0;
  std::size_t j = 0;
  std::vector<double> lambda;
  std::uint64_t run_seed = 0;
  double lower = 0.0;
  double closed = 0.0;
  bool certified = false;
  double witness_constraint = 0.0;
};

OptimizerConfig sandwich_config(const VerifyOptions& options, std::uint64_t run_seed) {
  OptimizerConfig config;
  config.seed = run_seed;
  config.restarts = 16;
  config.enumeration_cap = options.enumeration_cap;
  config.threads = 1;
  config.grothendieck = options.grothendieck;
  return config;
}

std::vector<SandwichCell> sandwich_cells(const VerifyOptions& options,
                                         const std::vector<std::size_t>& p_indices,
                                         int threads) {
  const std::size_t per_p = kGridLengths.size() * kGridCoefficients;
  return gather<SandwichCell>(p_indices.size() * per_p, threads, [&](std::size_t c) {
    SandwichCell cell;
    const std::size_t pi = p_indices[c / per_p];
    cell.p = grid_exponents()[pi];
    cell.m = kGridLengths[(c % per_p) / kGridCoefficients];
    cell.j = c % kGridCoefficients;
    cell.lambda = grid_lambda(options.seed, cell.m, cell.j);
    cell.run_seed = mix_seed(options.seed, {kSandwichRun, pi, cell.m, cell.j});
    const SpaceSpec space(cell.m, cell.p);
    const NormEstimate est = optimize_family(moduli_combination(cell.lambda), space, cell.m,
                                             sandwich_config(options, cell.run_seed));
    cell.lower = est.lower;
    cell.closed = closed_norm(cell.lambda, cell.p);
    cell.certified = est.certified;
    if (est.witness) {
      cell.witness_constraint = constraint_norm_exact(*est.witness, {options.enumeration_cap, 1});
    }
    return cell;
  });
}

Json sandwich_json(const SandwichCell& cell) {
  Json in = cell_json(cell.p, cell.m, cell.j, cell.lambda);
  in["family_size"] = cell.m;
  in["optimizer_seed"] = cell.run_seed;
  in["restarts"] = 16;
  in["lower"] = cell.lower;
  in["closed_form"] = cell.closed;
  return in;
}

void record_sandwich(Recorder& rec, const SandwichCell& cell, double kg) {
  const Json in = sandwich_json(cell);
  rec.check(cell.lower - (cell.closed - kRelativeTolerance), 1.0 + cell.closed, in);
  rec.check(kg * cell.closed + kRelativeTolerance - cell.lower, 1.0 + cell.closed, in);
  rec.require(cell.certified, in);
  Json feas = in;
  feas["witness_constraint"] = cell.witness_constraint;
  rec.check(1.0 + kCertificationSlack - cell.witness_constraint, 1.0, std::move(feas));
  const double ratio = cell.lower / cell.closed;
  track_min(rec.metrics(), "min_lower_over_closed", ratio);
  track_max(rec.metrics(), "max_lower_over_closed", ratio);
}

// --- Context -------------------------------------------------------------

class Context {
 public:
  explicit Context(const VerifyOptions& options)
      : options_(options),
        threads_(resolve_threads(options.threads)),
        kg_(grothendieck_constant(options.grothendieck)) {}

  const VerifyOptions& options() const { return options_; }
  int threads() const { return threads_; }
  double kg() const { return kg_; }

  const std::vector<SandwichCell>& finite_sandwich() {
    if (!finite_) finite_ = sandwich_cells(options_, {0, 1, 2, 3}, threads_);
    return *finite_;
  }
  const std::vector<SandwichCell>& infinite_sandwich() {
    if (!infinite_) infinite_ = sandwich_cells(options_, {4}, threads_);
    return *infinite_;
  }

 private:
  VerifyOptions options_;
  int threads_;
  double kg_;
  std::optional<std::vector<SandwichCell>> finite_;
  std::optional<std::vector<SandwichCell>> infinite_;
};

// --- Suites --------------------------------------------------------------

void suite_walsh_feasibility(Context& ctx, Recorder& rec) {
  for (const auto& cell : walsh_cells(ctx.options(), grid_exponents(), ctx.threads())) {
    record_feasibility(rec, cell);
  }
}

void suite_walsh_objective(Context& ctx, Recorder& rec) {
  for (const auto& cell : walsh_cells(ctx.options(), grid_exponents(), ctx.threads())) {
    record_objective(rec, cell);
  }
}

void suite_sandwich(Context& ctx, Recorder& rec) {
  for (const auto& cell : ctx.finite_sandwich()) record_sandwich(rec, cell, ctx.kg());
}

void suite_c0(Context& ctx, Recorder& rec) {
  for (const auto& cell : walsh_cells(ctx.options(), {Exponent::infinity()}, ctx.threads())) {
    record_feasibility(rec, cell);
    record_objective(rec, cell);
  }
  for (const auto& cell : ctx.infinite_sandwich()) record_sandwich(rec, cell, ctx.kg());
}

struct Ell1Cell {
  Exponent p{1.0};
  std::size_t j = 0;
  std::vector<double> lambda;
  double lower = 0.0;
  double upper = 0.0;
  bool certified = false;
  double allsign_constraint = 0.0;
};

void suite_ell1(Context& ctx, Recorder& rec) {
  struct Spec {
    Exponent p;
    std::size_t m;
    std::size_t j;
  };
  std::vector<Spec> specs;
  for (const Exponent& p : {Exponent(1.0), Exponent(1.5), Exponent(2.0)}) {
    for (std::size_t m = 1; m <= 4; ++m) {
      for (std::size_t j = 0; j < kGridCoefficients; ++j) specs.push_back({p, m, j});
    }
  }
  // The closed-form constraint reaches 2^16 functionals at p = 1.
  for (std::size_t m = 5; m <= 16; ++m) {
    for (std::size_t j = 0; j < 6; ++j) specs.push_back({Exponent(1.0), m, j});
  }

  const VerifyOptions& options = ctx.options();
  const auto cells = gather<Ell1Cell>(specs.size(), ctx.threads(), [&](std::size_t c) {
    const Spec& s = specs[c];
    Ell1Cell cell;
    cell.p = s.p;
    cell.j = s.j;
    Rng rng(mix_seed(options.seed, {kEll1Lambda, s.m, s.j}));
    cell.lambda = random_lambda(rng, s.m, s.j % 3 == 2 ? 0.25 : 0.0);
    const SpaceSpec space(s.m, s.p);
    const BoundCertificate cert = certify_moduli_norm(
        cell.lambda, space, {options.grothendieck, options.enumeration_cap, 1});
    cell.lower = cert.lower;
    cell.upper = cert.upper;
    cell.certified = cert.certified;
    cell.allsign_constraint = constraint_norm_exact(allsign_witness(cell.lambda, space),
                                                    {options.enumeration_cap, 1});
    return cell;
  });

  for (const auto& cell : cells) {
    const double l1 = norm(cell.lambda, Exponent(1.0));
    Json in = cell_json(cell.p, cell.lambda.size(), cell.j, cell.lambda);
    in["lower"] = cell.lower;
    in["upper"] = cell.upper;
    in["l1"] = l1;
    rec.require(cell.certified, in);
    rec.check_close(cell.lower, l1, kRelativeTolerance, in);
    rec.check_close(cell.upper, l1, kRelativeTolerance, in);
    in["allsign_constraint"] = cell.allsign_constraint;
    rec.check(1.0 + kCertificationSlack - cell.allsign_constraint, 1.0, in);
    if (!cell.p.is_infinite() && cell.p.value() == 1.0) {
      rec.check_equal(cell.allsign_constraint, 1.0, in);
    }
    track_min(rec.metrics(), "min_lower_over_l1", cell.lower / l1);
  }
}

Exponent pick_exponent(Rng& rng, const std::vector<Exponent>& choices) {
  std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
  return choices[pick(rng)];
}

std::size_t pick_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

void suite_symmetry(Context& ctx, Recorder& rec) {
  const VerifyOptions& options = ctx.options();
  const std::vector<Exponent> choices{Exponent(1.0), Exponent(1.5), Exponent(2.0),
                                      Exponent(3.0), Exponent(4.0), Exponent::infinity()};
  constexpr std::size_t kFamilies = 100;
  constexpr std::size_t kMirrorEvery = 10;

  struct Outcome {
    Json inputs;
    double pos = 0.0, neg = 0.0;
    double c_auto = 0.0, c_auto_neg = 0.0;
    double c_sign = 0.0, c_sign_neg = 0.0;
    std::optional<std::pair<double, double>> mirrored;
  };

  const auto outcomes = gather<Outcome>(kFamilies, ctx.threads(), [&](std::size_t t) {
    Rng rng(mix_seed(options.seed, {kSymmetry, t}));
    const std::size_t n = pick_size(rng, 1, 4);
    const std::size_t count = pick_size(rng, 1, 10);
    const Exponent p = pick_exponent(rng, choices);
    const SpaceSpec space(n, p);
    const FunctionalFamily family = random_family(rng, space, count);
    const FunctionalFamily negated = family.negated();
    const std::vector<double> lambda = random_point(rng, n);

    // Two spellings of the same linear functional.
    LatticeExpr h = LatticeExpr::atom(lambda);
    if (t % 2 == 1) {
      h = lambda[0] * generator(1, n);
      for (std::size_t i = 1; i < n; ++i) h = h + lambda[i] * generator(i + 1, n);
    }

    Outcome out;
    out.inputs = {{"case", t},
                  {"p", exponent_to_json(p)},
                  {"lambda", vector_json(lambda)},
                  {"linear_form", t % 2 == 1 ? "generator-sum" : "atom"},
                  {"family", family_json(family)}};
    out.pos = objective(pos_part(h), family);
    out.neg = objective(neg_part(h), negated);
    const ConstraintOptions automatic{options.enumeration_cap, 1, ConstraintRoute::kAuto};
    const ConstraintOptions signs{options.enumeration_cap, 1,
                                  ConstraintRoute::kSignEnumeration};
    out.c_auto = constraint_norm_exact(family, automatic);
    out.c_auto_neg = constraint_norm_exact(negated, automatic);
    out.c_sign = constraint_norm_exact(family, signs);
    out.c_sign_neg = constraint_norm_exact(negated, signs);

    if (t % kMirrorEvery == 0) {
      OptimizerConfig config;
      config.seed = mix_seed(options.seed, {kSymmetry, t, 1});
      config.restarts = 4;
      config.enumeration_cap = options.enumeration_cap;
      config.threads = 1;
      const LatticeExpr g = generator(1, n);
      const std::size_t size = std::min<std::size_t>(count, 6);
      const double a = optimize_family(pos_part(g), space, size, config).lower;
      config.mirror = true;
      const double b = optimize_family(neg_part(g), space, size, config).lower;
      out.mirrored = {a, b};
      out.inputs["mirror_seed"] = config.seed;
      out.inputs["mirror_family_size"] = size;
    }
    return out;
  });

  std::size_t mirrored = 0;
  for (const auto& out : outcomes) {
    rec.check_equal(out.pos, out.neg, out.inputs);
    rec.check_equal(out.c_auto, out.c_auto_neg, out.inputs);
    rec.check_equal(out.c_sign, out.c_sign_neg, out.inputs);
    if (out.mirrored) {
      ++mirrored;
      rec.check_close(out.mirrored->first, out.mirrored->second, kTieTolerance, out.inputs);
    }
  }
  rec.metrics()["families"] = outcomes.size();
  rec.metrics()["mirrored_pairs"] = mirrored;
}

void suite_krivine(Context& ctx, Recorder& rec) {
  const double kg = ctx.kg();
  double max_ratio = 0.0;
  auto observe = [&](double lower, double closed, Json in) {
    in["grothendieck"] = kg;
    rec.check(kg * closed + kRelativeTolerance - lower, 1.0 + closed, std::move(in));
    max_ratio = std::max(max_ratio, lower / closed);
  };

  for (const auto& cell : ctx.finite_sandwich()) observe(cell.lower, cell.closed, sandwich_json(cell));
  for (const auto& cell : ctx.infinite_sandwich()) {
    observe(cell.lower, cell.closed, sandwich_json(cell));
  }
  const std::size_t grid_runs = ctx.finite_sandwich().size() + ctx.infinite_sandwich().size();

  const VerifyOptions& options = ctx.options();
  const std::vector<Exponent> choices{Exponent(2.5), Exponent(3.0),  Exponent(4.0),
                                      Exponent(6.0), Exponent(10.0), Exponent::infinity()};
  struct Adversarial {
    Json inputs;
    double lower = 0.0;
    double closed = 0.0;
  };
  const auto runs =
      gather<Adversarial>(options.adversarial_runs, ctx.threads(), [&](std::size_t a) {
        Rng rng(mix_seed(options.seed, {kAdversarial, a}));
        const Exponent p = pick_exponent(rng, choices);
        const std::size_t m = pick_size(rng, 1, 4);
        const std::size_t n = m + pick_size(rng, 0, 1);
        const std::size_t size = pick_size(rng, 1, 8);
        // Heavy-tailed magnitudes with independent signs.
        std::cauchy_distribution<double> cauchy;
        std::vector<double> lambda(n, 0.0);
        for (std::size_t i = 0; i < m; ++i) lambda[i] = cauchy(rng);

        OptimizerConfig config;
        config.seed = mix_seed(options.seed, {kAdversarial, a, 1});
        config.restarts = 4;
        config.iterations = 400;
        config.initial_step = 1.0;
        config.step_decay = 0.99;
        config.enumeration_cap = options.enumeration_cap;
        config.threads = 1;
        config.grothendieck = options.grothendieck;

        Adversarial out;
        const SpaceSpec space(n, p);
        out.lower = optimize_family(moduli_combination(lambda), space, size, config).lower;
        out.closed = closed_norm(lambda, p);
        out.inputs = {{"run", a},
                      {"p", exponent_to_json(p)},
                      {"n", n},
                      {"lambda", vector_json(lambda)},
                      {"family_size", size},
                      {"optimizer_seed", config.seed},
                      {"restarts", config.restarts},
                      {"iterations", config.iterations},
                      {"initial_step", config.initial_step},
                      {"step_decay", config.step_decay},
                      {"lower", out.lower},
                      {"closed_form", out.closed}};
        return out;
      });
  for (const auto& run : runs) observe(run.lower, run.closed, run.inputs);

  rec.metrics()["grid_runs"] = grid_runs;
  rec.metrics()["adversarial_runs"] = runs.size();
  rec.metrics()["max_lower_over_closed"] = max_ratio;
}

void suite_oracle(Context& ctx, Recorder& rec) {
  const VerifyOptions& options = ctx.options();
  const std::vector<Exponent> choices{Exponent(1.0), Exponent(1.5), Exponent(2.0),
                                      Exponent(3.0), Exponent::infinity()};
  constexpr std::size_t kFamilies = 200;
  constexpr std::size_t kSamples = 100000;

  struct Outcome {
    Json inputs;
    Exponent p{1.0};
    double exact = 0.0, sign = 0.0, sample = 0.0;
    std::optional<double> alternate;  // closed form or vertex route
  };
  const auto outcomes = gather<Outcome>(kFamilies, ctx.threads(), [&](std::size_t t) {
    Rng rng(mix_seed(options.seed, {kOracle, t}));
    Outcome out;
    out.p = choices[t % choices.size()];
    const std::size_t n = pick_size(rng, 1, 4);
    const std::size_t count = pick_size(rng, 1, 10);
    const FunctionalFamily family = random_family(rng, SpaceSpec(n, out.p), count);
    const std::uint64_t sample_seed = mix_seed(options.seed, {kOracle, t, 1});
    const std::size_t cap = options.enumeration_cap;
    out.exact = constraint_norm_exact(family, {cap, 1, ConstraintRoute::kAuto});
    out.sign = constraint_norm_exact(family, {cap, 1, ConstraintRoute::kSignEnumeration});
    out.sample = sample_constraint_lower(family, kSamples, sample_seed);
    if (out.p.is_infinite()) {
      out.alternate =
          constraint_norm_exact(family, {cap, 1, ConstraintRoute::kVertexEnumeration});
    } else if (out.p.value() == 1.0) {
      out.alternate = constraint_norm_exact(family, {cap, 1, ConstraintRoute::kClosedForm});
    }
    out.inputs = {{"case", t},
                  {"p", exponent_to_json(out.p)},
                  {"family", family_json(family)},
                  {"samples", kSamples},
                  {"sample_seed", sample_seed}};
    return out;
  });

  for (const auto& out : outcomes) {
    Json in = out.inputs;
    in["exact"] = out.exact;
    in["sampled"] = out.sample;
    rec.check(out.exact + kCertificationSlack - out.sample, 1.0 + out.exact, in);
    rec.check_close(out.sign, out.exact, kCertificationSlack * (1.0 + out.exact), in);
    if (out.alternate) {
      if (out.p.is_infinite()) {
        rec.check_close(*out.alternate, out.sign, kCertificationSlack * (1.0 + out.sign), in);
      } else {
        rec.check_equal(*out.alternate, out.sign, in);
      }
    }
    if (out.exact > 0.0) track_min(rec.metrics(), "min_sampled_over_exact", out.sample / out.exact);
  }
}

// Expressions for the parser round trip: every node kind, both atom
// spellings, nesting and precedence.
const std::vector<std::string>& round_trip_corpus() {
  static const std::vector<std::string> corpus{
      "d(e1)",
      "-d(e1)",
      "abs(d(e1))",
      "pos(d(e2))",
      "neg(d(e3))",
      "d(e1) + d(e2)",
      "d(e1) - d(e2)",
      "2 * d(e1)",
      "d(e1) * 0.5",
      "-3.25 * abs(d(e2))",
      "d(e1) \\/ d(e2)",
      "d(e1) /\\ d(e2)",
      "d(e1) \\/ d(e2) \\/ d(e3)",
      "d(e1) /\\ d(e2) \\/ d(e3)",
      "d(e1) + d(e2) \\/ d(e3) - d(e4)",
      "abs(d(e1)) + abs(d(e2)) + abs(d(e3)) + abs(d(e4))",
      "abs(d(e1)) + 2 * abs(d(e2)) + 3 * abs(d(e3))",
      "0.1 * abs(d(e1)) - 0.2 * abs(d(e2))",
      "d([1, 0, 2, 0])",
      "d([0.5, -1.5, 2.25, 1e-3])",
      "d([1, 1, 1, 1]) \\/ d([1, -1, 1, -1])",
      "abs(d([1, 2, 3, 4]) - d(e2))",
      "pos(d(e1) - d(e2)) + neg(d(e1) - d(e2))",
      "pos(d(e1)) - neg(d(e1))",
      "abs(d(e1) \\/ -d(e1))",
      "-(-d(e1) \\/ -d(e2))",
      "(d(e1) /\\ d(e2)) \\/ (d(e3) /\\ d(e4))",
      "(d(e1) \\/ d(e2)) /\\ (d(e3) \\/ d(e4))",
      "abs(abs(abs(d(e3))))",
      "--d(e2)",
      "-(d(e1) + d(e2))",
      "2 * (d(e1) + 3 * (d(e2) - d(e3)))",
      "(d(e1) + d(e2)) * -1",
      "abs(d(e1) - 2 * d(e2)) /\\ abs(2 * d(e1) - d(e2))",
      "pos(abs(d(e1)) - abs(d(e2)))",
      "neg(pos(d(e1)) - pos(d(e4)))",
      "d(e4) \\/ 0 * d(e1)",
      "1e2 * d(e1) + 1e-2 * d(e2)",
      "0.125 * d(e1) \\/ 0.375 * d(e2) \\/ 0.625 * d(e3)",
      "abs(d(e1)) /\\ abs(d(e2)) /\\ abs(d(e3)) /\\ abs(d(e4))",
      "(abs(d(e1)) + abs(d(e2))) \\/ (abs(d(e3)) + abs(d(e4)))",
      "pos(d([1, -2, 3, -4])) + neg(d([-4, 3, -2, 1]))",
      "abs(d([0.3, 0.3, 0.3, 0.3]) \\/ d([-0.7, 0.1, 0.2, 0.4]))",
      "-abs(d(e1)) + abs(d(e1) + d(e2)) - abs(d(e2))",
      "abs(d(e1) + d(e2)) + abs(d(e1) - d(e2))",
      "(d(e1) - d(e2)) /\\ (d(e2) - d(e3)) /\\ (d(e3) - d(e4))",
      "3 * pos(d(e1)) - 2 * neg(d(e2)) + abs(d(e3) \\/ d(e4))",
      "-(d(e1) /\\ -(d(e2) \\/ -(d(e3) /\\ d(e4))))",
      "abs(2.5 * d(e1) - 1.5 * d(e2)) /\\ (d(e3) + 0.75 * d(e4))",
      "pos(pos(pos(d(e1) - d(e2)) - d(e3)) - d(e4))",
  };
  return corpus;
}

void check_homogeneity(const VerifyOptions& options, Recorder& rec) {
  std::uniform_real_distribution<double> scale(0.0, 10.0);
  double worst = 0.0;
  for (std::size_t t = 0; t < 500; ++t) {
    Rng rng(mix_seed(options.seed, {kHomogeneity, t}));
    const std::size_t n = pick_size(rng, 1, 6);
    const LatticeExpr f = random_expression(rng, n, 4);
    const std::vector<double> x = random_point(rng, n);
    const double s = scale(rng);
    std::vector<double> sx(x);
    for (double& v : sx) v *= s;
    const double base = f.evaluate(x);
    const double error = std::abs(f.evaluate(sx) - s * base);
    worst = std::max(worst, error / (1.0 + std::abs(base)));
    rec.check(kCertificationSlack * (1.0 + std::abs(base)) - error, 1.0 + std::abs(base),
              {{"property", "homogeneity"},
               {"expression", format(f)},
               {"point", vector_json(x)},
               {"t", s}});
  }
  rec.metrics()["homogeneity_max_relative_error"] = worst;
}

void check_lattice_identities(const VerifyOptions& options, Recorder& rec) {
  for (std::size_t t = 0; t < 200; ++t) {
    Rng rng(mix_seed(options.seed, {kLatticeIdentity, t}));
    const std::size_t n = pick_size(rng, 1, 5);
    const LatticeExpr f = random_expression(rng, n, 3);
    const LatticeExpr g = random_expression(rng, n, 3);
    const std::vector<double> x = random_point(rng, n);
    const Json in = {{"property", "lattice-identity"},
                     {"f", format(f)},
                     {"g", format(g)},
                     {"point", vector_json(x)}};
    const double fx = f.evaluate(x);
    rec.check_equal(meet(f, g).evaluate(x), (-join(-f, -g)).evaluate(x), in);
    rec.check_equal(modulus(f).evaluate(x), std::max(fx, -fx), in);
    rec.check_equal(modulus(f).evaluate(x), join(f, -f).evaluate(x), in);
    rec.check_equal((pos_part(f) - neg_part(f)).evaluate(x), fx, in);
    rec.check_equal((pos_part(f) + neg_part(f)).evaluate(x), std::abs(fx), in);
    rec.check_equal(zero_expr(n).evaluate(x), 0.0, in);
  }
}

void check_walsh_structure(Recorder& rec) {
  for (unsigned k = 0; k <= 8; ++k) {
    const WalshMatrix w(k);
    const std::size_t m = w.size();
    const auto dense = w.rows();
    bool orthogonal = true;
    bool normalized = true;
    bool consistent = true;
    for (std::size_t i = 0; i < m; ++i) {
      normalized = normalized && w(0, i) == 1 && w(i, 0) == 1;
      for (std::size_t j = 0; j < m; ++j) {
        consistent = consistent && dense[i][j] == w(i, j);
        std::int64_t dot = 0;
        for (std::size_t c = 0; c < m; ++c) dot += std::int64_t{w(i, c)} * w(j, c);
        orthogonal = orthogonal && dot == (i == j ? static_cast<std::int64_t>(m) : 0);
      }
    }
    const Json in = {{"property", "walsh"}, {"k", k}};
    rec.require(orthogonal, in);
    rec.require(normalized, in);
    rec.require(consistent, in);
  }
}

void check_sweeps(const VerifyOptions& options, Recorder& rec) {
  OptimizerConfig config;
  config.restarts = 4;
  config.enumeration_cap = options.enumeration_cap;
  config.threads = 1;
  config.grothendieck = options.grothendieck;
  const double kg = grothendieck_constant(options.grothendieck);

  auto nondecreasing = [&](const std::vector<NormEstimate>& sweep, const Json& in) {
    for (std::size_t s = 1; s < sweep.size(); ++s) {
      Json step = in;
      step["family_size"] = s + 1;
      rec.check(sweep[s].lower - sweep[s - 1].lower, 1.0 + sweep[s].lower, std::move(step));
    }
  };

  config.seed = mix_seed(options.seed, {kSweep, 0});
  const auto unit = lower_bound_sweep(modulus(generator(1, 2)), SpaceSpec(2, Exponent(3.0)), 4,
                                      config);
  const Json unit_in = {{"property", "sweep"}, {"expression", "abs(d(e1))"}, {"p", 3}};
  for (const auto& est : unit) rec.check_close(est.lower, 1.0, kCertificationSlack, unit_in);
  nondecreasing(unit, unit_in);

  config.seed = mix_seed(options.seed, {kSweep, 1});
  const std::vector<double> ones{1.0, 1.0};
  const auto moduli =
      lower_bound_sweep(moduli_combination(ones), SpaceSpec(2, Exponent(4.0)), 4, config);
  const Json moduli_in = {{"property", "sweep"}, {"lambda", vector_json(ones)}, {"p", 4}};
  const double ceiling = kg * closed_norm(ones, Exponent(4.0));
  nondecreasing(moduli, moduli_in);
  for (const auto& est : moduli) {
    rec.check(ceiling + kRelativeTolerance - est.lower, 1.0 + ceiling, moduli_in);
  }

  Rng rng(mix_seed(options.seed, {kSweep, 2}));
  const LatticeExpr f = random_expression(rng, 3, 3);
  config.seed = mix_seed(options.seed, {kSweep, 3});
  const Json random_in = {{"property", "sweep"}, {"expression", format(f)}, {"p", 2.5}};
  nondecreasing(lower_bound_sweep(f, SpaceSpec(3, Exponent(2.5)), 4, config), random_in);
}

void check_p_monotonicity(const VerifyOptions& options, Recorder& rec) {
  const std::vector<Exponent> exponents{Exponent(2.5), Exponent(3.0), Exponent(4.0),
                                        Exponent(6.0), Exponent(10.0), Exponent::infinity()};
  for (std::size_t m : kGridLengths) {
    const std::vector<double> ones(m, 1.0);
    double prev_formula = 0.0;
    double prev_cert = 0.0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      const double formula = std::pow(static_cast<double>(m), 1.0 / ell_r_exponent(exponents[i]));
      const double cert = certify_moduli_norm(ones, SpaceSpec(m, exponents[i]),
                                              {options.grothendieck, options.enumeration_cap, 1})
                              .lower;
      if (i > 0) {
        const Json in = {{"property", "p-monotonicity"},
                         {"m", m},
                         {"p", exponent_to_json(exponents[i])}};
        rec.check(prev_formula - formula, 1.0 + formula, in);
        rec.check(prev_cert - cert, 1.0 + cert, in);
      }
      prev_formula = formula;
      prev_cert = cert;
    }
  }
}

void check_permutations(const VerifyOptions& options, Recorder& rec) {
  const std::vector<Exponent> cert_exponents{Exponent(1.5), Exponent(3.0), Exponent::infinity()};
  const std::vector<Exponent> family_exponents{Exponent(1.0), Exponent(2.0), Exponent(3.0),
                                               Exponent::infinity()};
  const CertifyOptions cert_options{options.grothendieck, options.enumeration_cap, 1};
  for (std::size_t t = 0; t < 60; ++t) {
    Rng rng(mix_seed(options.seed, {kPermutation, t}));
    const std::size_t m = pick_size(rng, 1, 6);
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);

    // Certificates.
    const std::vector<double> lambda = random_lambda(rng, m);
    std::vector<double> permuted(m);
    for (std::size_t i = 0; i < m; ++i) permuted[i] = lambda[perm[i]];
    const Exponent cp = cert_exponents[t % cert_exponents.size()];
    const auto a = certify_moduli_norm(lambda, SpaceSpec(m, cp), cert_options);
    const auto b = certify_moduli_norm(permuted, SpaceSpec(m, cp), cert_options);
    const Json cert_in = {{"property", "permutation-certificate"},
                          {"p", exponent_to_json(cp)},
                          {"lambda", vector_json(lambda)},
                          {"permuted", vector_json(permuted)}};
    rec.check_equal(a.lower, b.lower, cert_in);
    rec.check_equal(a.upper, b.upper, cert_in);

    // Objective and constraint. Small-integer data makes every sum exact,
    // so both orders agree bit for bit; p = 3 is compared to 1e-12.
    const Exponent fp = family_exponents[t % family_exponents.size()];
    const bool integral = fp.is_infinite() || fp.value() != 3.0;
    const std::size_t count = pick_size(rng, 1, 8);
    std::uniform_int_distribution<int> entry(-4, 4);
    std::vector<double> flat(count * m);
    for (double& v : flat) v = entry(rng);
    std::vector<double> weights(m);
    for (double& v : weights) v = entry(rng);
    std::vector<double> moved_flat(flat.size());
    std::vector<double> moved_weights(m);
    for (std::size_t i = 0; i < m; ++i) {
      moved_weights[i] = weights[perm[i]];
      for (std::size_t k = 0; k < count; ++k) moved_flat[k * m + i] = flat[k * m + perm[i]];
    }
    const SpaceSpec space(m, fp);
    const FunctionalFamily family(space, count, flat);
    const FunctionalFamily moved(space, count, moved_flat);
    const ConstraintOptions constraint_options{options.enumeration_cap, 1};
    const double obj_a = objective(moduli_combination(weights), family);
    const double obj_b = objective(moduli_combination(moved_weights), moved);
    const double con_a = constraint_norm_exact(family, constraint_options);
    const double con_b = constraint_norm_exact(moved, constraint_options);
    const Json fam_in = {{"property", "permutation-family"},
                         {"p", exponent_to_json(fp)},
                         {"weights", vector_json(weights)},
                         {"permutation", perm},
                         {"family", family_json(family)}};
    if (integral) {
      rec.check_equal(obj_a, obj_b, fam_in);
      rec.check_equal(con_a, con_b, fam_in);
    } else {
      rec.check_close(obj_a, obj_b, kCertificationSlack * (1.0 + std::abs(obj_a)), fam_in);
      rec.check_close(con_a, con_b, kCertificationSlack * (1.0 + con_a), fam_in);
    }
  }
}

void check_round_trip(const VerifyOptions& options, Recorder& rec) {
  constexpr std::size_t kDimension = 4;
  const auto& corpus = round_trip_corpus();
  for (std::size_t c = 0; c < corpus.size(); ++c) {
    const LatticeExpr original = parse(corpus[c], kDimension);
    const std::string printed = format(original);
    const LatticeExpr reparsed = parse(printed, kDimension);
    Rng rng(mix_seed(options.seed, {kRoundTrip, c}));
    bool identical = true;
    for (std::size_t t = 0; t < 100; ++t) {
      const std::vector<double> x = random_point(rng, kDimension);
      identical = identical && original.evaluate(x) == reparsed.evaluate(x);
    }
    rec.require(identical, {{"property", "round-trip"}, {"source", corpus[c]}, {"printed", printed}});
  }
  rec.metrics()["corpus_size"] = corpus.size();
}

void suite_structural(Context& ctx, Recorder& rec) {
  const VerifyOptions& options = ctx.options();
  check_homogeneity(options, rec);
  check_lattice_identities(options, rec);
  check_walsh_structure(rec);
  check_sweeps(options, rec);
  check_p_monotonicity(options, rec);
  check_permutations(options, rec);
  check_round_trip(options, rec);
}

using SuiteFn = void (*)(Context&, Recorder&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table{
      {"walsh-feasibility", suite_walsh_feasibility},
      {"walsh-objective", suite_walsh_objective},
      {"sandwich", suite_sandwich},
      {"c0", suite_c0},
      {"ell1-regime", suite_ell1},
      {"pos-neg-symmetry", suite_symmetry},
      {"krivine-falsification", suite_krivine},
      {"oracle-equivalence", suite_oracle},
      {"structural", suite_structural},
  };
  return table;
}

}  // namespace

bool VerifyReport::passed() const noexcept {
  return std::all_of(suites.begin(), suites.end(),
                     [](const SuiteResult& s) { return s.passed(); });
}

const SuiteResult* VerifyReport::find(const std::string& name) const {
  for (const auto& s : suites) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const std::vector<std::string>& verification_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suite_table()) out.push_back(name);
    return out;
  }();
  return names;
}

VerifyReport run_verification(const VerifyOptions& options) {
  for (const auto& name : options.suites) {
    const auto& all = verification_suites();
    if (std::find(all.begin(), all.end(), name) == all.end()) {
      throw Error(ErrorKind::kInput, "unknown suite '" + name + "'");
    }
  }
  Context ctx(options);
  VerifyReport report;
  report.seed = options.seed;
  report.grothendieck = ctx.kg();
  for (const auto& [name, fn] : suite_table()) {
    const bool selected =
        options.suites.empty() ||
        std::find(options.suites.begin(), options.suites.end(), name) != options.suites.end();
    if (!selected) continue;
    SuiteResult result;
    result.name = name;
    Recorder rec(result);
    const auto start = std::chrono::steady_clock::now();
    fn(ctx, rec);
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.suites.push_back(std::move(result));
  }
  return report;
}

Json to_json(const VerifyReport& report) {
  Json out = Json::object();
  out["seed"] = report.seed;
  out["grothendieck"] = report.grothendieck;
  out["passed"] = report.passed();
  Json suites = Json::array();
  for (const auto& s : report.suites) {
    Json j = Json::object();
    j["name"] = s.name;
    j["passed"] = s.passed();
    j["checks"] = s.checks;
    j["failures"] = s.failures;
    j["worst_slack"] = s.worst_slack ? Json(*s.worst_slack) : Json(nullptr);
    j["worst_case"] = s.worst_case;
    j["metrics"] = s.metrics;
    j["failed_cases"] = s.failed_cases;
    suites.push_back(std::move(j));
  }
  out["suites"] = std::move(suites);
  return out;
}

}  // namespace fblnorm
