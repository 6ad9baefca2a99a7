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

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "constraint_tracker.hpp"
#include "fblnorm/engine.hpp"
#include "fblnorm/error.hpp"
#include "fblnorm/parallel.hpp"
#include "fblnorm/random.hpp"
#include "fblnorm/tolerance.hpp"
#include "fblnorm/witnesses.hpp"

namespace fblnorm {

namespace {

struct Start {
  FunctionalFamily family;
  std::string tag;
};

struct RunResult {
  double value = 0.0;
  double sum_of_squares = 0.0;
  std::optional<FunctionalFamily> witness;
  std::string tag;
};

bool above_two(const Exponent& p) { return p.is_infinite() || p.value() > 2.0; }

std::vector<double> trimmed(std::vector<double> v) {
  while (!v.empty() && v.back() == 0.0) v.pop_back();
  return v;
}

// Analytic witnesses for a moduli combination, one per sign class, padded to
// the requested size. Witnesses larger than the family size are skipped.
std::vector<Start> analytic_starts(const std::vector<double>& lambda,
                                   const SpaceSpec& space, std::size_t size) {
  std::vector<std::vector<double>> classes{trimmed(lambda)};
  const bool has_pos = std::any_of(lambda.begin(), lambda.end(), [](double v) { return v > 0; });
  const bool has_neg = std::any_of(lambda.begin(), lambda.end(), [](double v) { return v < 0; });
  if (has_pos && has_neg) {
    std::vector<double> pos(lambda.size(), 0.0);
    std::vector<double> neg(lambda.size(), 0.0);
    for (std::size_t i = 0; i < lambda.size(); ++i) (lambda[i] > 0 ? pos : neg)[i] = lambda[i];
    classes.push_back(trimmed(std::move(pos)));
    classes.push_back(trimmed(std::move(neg)));
  }

  std::vector<Start> starts;
  const bool high = above_two(space.p);
  for (const auto& coeffs : classes) {
    if (coeffs.empty()) continue;
    if (!high) {
      std::size_t support = 0;
      for (double v : coeffs) support += v != 0.0;
      if (support >= 63 || (std::size_t{1} << support) > size) continue;
    } else if (std::bit_ceil(coeffs.size()) > size) {
      continue;
    }
    FunctionalFamily w = high ? walsh_witness(coeffs, space) : allsign_witness(coeffs, space);
    starts.push_back({w.padded(size), high ? "walsh-witness" : "allsign-witness"});
  }
  return starts;
}

// Exact score of a family: (objective / constraint, normalized family).
std::pair<double, std::optional<FunctionalFamily>> exact_score(
    const LatticeExpr& f, const FunctionalFamily& family, std::size_t cap) {
  const ConstraintOptions options{cap, 1, ConstraintRoute::kAuto};
  const double c = constraint_norm_exact(family, options);
  if (!(c > 0.0)) return {0.0, std::nullopt};
  return {objective(f, family) / c, family.scaled(1.0 / c)};
}

RunResult ascend(const LatticeExpr& f, const FunctionalFamily& start, bool scored_start,
                 const OptimizerConfig& config, Rng& rng) {
  const std::size_t count = start.size();
  const std::size_t n = start.dimension();
  std::vector<double> flat(start.flat().begin(), start.flat().end());

  std::vector<double> terms(count);
  for (std::size_t k = 0; k < count; ++k) terms[k] = std::abs(f.evaluate(start[k]));
  auto tracker = internal::make_constraint_tracker(start, config.enumeration_cap);
  auto ratio_of = [](double obj, double c) { return c > 0.0 ? obj / c : 0.0; };
  double objective_sum = 0.0;
  for (double t : terms) objective_sum += t;
  double ratio = ratio_of(objective_sum, tracker->value());
  double squares = start.sum_of_squares();

  std::uniform_int_distribution<std::size_t> pick_row(0, count - 1);
  std::uniform_int_distribution<std::size_t> pick_col(0, n - 1);
  std::normal_distribution<double> gauss;
  std::vector<double> row(n);
  double step = config.initial_step;
  for (std::size_t it = 0; it < config.iterations; ++it, step *= config.step_decay) {
    const std::size_t k = pick_row(rng);
    const std::size_t i = pick_col(rng);
    const double z = gauss(rng);
    const double rms = std::sqrt(squares / static_cast<double>(count * n));
    double delta = step * (rms > 0.0 ? rms : 1.0) * z;
    if (config.mirror) delta = -delta;

    const double old_entry = flat[k * n + i];
    std::copy_n(flat.begin() + k * n, n, row.begin());
    row[i] = old_entry + delta;
    const double term = std::abs(f.evaluate(row));
    double trial_sum = 0.0;
    for (std::size_t j = 0; j < count; ++j) trial_sum += j == k ? term : terms[j];
    const double trial = ratio_of(trial_sum, tracker->propose(k, i, delta));
    if (trial > ratio) {
      tracker->commit();
      flat[k * n + i] = row[i];
      terms[k] = term;
      squares += row[i] * row[i] - old_entry * old_entry;
      ratio = trial;
    }
  }

  RunResult result;
  const FunctionalFamily end(start.space(), count, std::move(flat));
  auto [value, witness] = exact_score(f, end, config.enumeration_cap);
  if (scored_start) {
    auto [start_value, start_witness] = exact_score(f, start, config.enumeration_cap);
    if (start_value > value) {
      value = start_value;
      witness = std::move(start_witness);
    }
  }
  result.value = value;
  if (witness) {
    result.sum_of_squares = witness->sum_of_squares();
    result.witness = std::move(witness);
  }
  return result;
}

// True if a should replace the incumbent b: larger value, then (on a tie
// within kTieTolerance) smaller sum of squares. Earlier runs win exact ties.
bool better(const RunResult& a, const RunResult& b) {
  if (!b.witness) return a.witness.has_value();
  if (!a.witness) return false;
  const double scale = std::max({1.0, std::abs(a.value), std::abs(b.value)});
  if (std::abs(a.value - b.value) > kTieTolerance * scale) return a.value > b.value;
  return a.sum_of_squares < b.sum_of_squares;
}

NormEstimate optimize_from(const LatticeExpr& f, const SpaceSpec& space,
                           std::size_t size, const OptimizerConfig& config,
                           std::vector<Start> extra) {
  if (size == 0) throw Error(ErrorKind::kConfig, "family size must be at least 1");
  if (f.dimension() != space.n) {
    throw DimensionError(space.n, f.dimension(), "expression versus space dimension");
  }
  if (!exact_constraint_available(space, size, config.enumeration_cap)) {
    throw Error(ErrorKind::kCapacity,
                "family size " + std::to_string(size) + " exceeds the enumeration cap of " +
                    std::to_string(config.enumeration_cap) + " for certified search");
  }
  const double kg = grothendieck_constant(config.grothendieck);

  const auto lambda = match_moduli_combination(f);
  const bool moduli = lambda && std::any_of(lambda->begin(), lambda->end(),
                                             [](double v) { return v != 0.0; });
  std::vector<Start> seeds;
  if (moduli) seeds = analytic_starts(*lambda, space, size);
  for (auto& s : extra) seeds.push_back(std::move(s));

  const std::size_t runs =
      seeds.size() + std::max<std::size_t>(config.restarts, seeds.empty() ? 1 : 0);
  std::vector<RunResult> results(runs);
  parallel_for(runs, resolve_threads(config.threads), [&](std::size_t r) {
    Rng rng(mix_seed(config.seed, {size, r}));
    const bool seeded = r < seeds.size();
    FunctionalFamily start = seeded ? seeds[r].family : random_family(rng, space, size);
    if (config.mirror) start = start.negated();
    results[r] = ascend(f, start, seeded, config, rng);
    results[r].tag = seeded ? seeds[r].tag : "random-start";
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs; ++r) {
    if (better(results[r], results[best])) best = r;
  }

  NormEstimate estimate;
  estimate.family_size = size;
  estimate.certified = results[best].witness.has_value();
  estimate.lower = results[best].value;
  estimate.witness = results[best].witness;
  estimate.method = {"optimizer"};
  if (results[best].tag != "random-start") estimate.method.push_back(results[best].tag);
  if (estimate.certified) estimate.method.push_back("exact-constraint");

  const double triangle = expression_triangle_upper(f, space.p);
  estimate.upper = triangle;
  std::string upper_tag = "triangle-upper";
  if (moduli && above_two(space.p)) {
    const double krivine = kg * norm(*lambda, Exponent(ell_r_exponent(space.p)));
    if (krivine < triangle) {
      estimate.upper = krivine;
      upper_tag = "krivine-upper";
    }
  }
  estimate.method.push_back(upper_tag);
  return estimate;
}

}  // namespace

NormEstimate optimize_family(const LatticeExpr& f, const SpaceSpec& space,
                             std::size_t family_size, const OptimizerConfig& config) {
  return optimize_from(f, space, family_size, config, {});
}

std::vector<NormEstimate> lower_bound_sweep(const LatticeExpr& f, const SpaceSpec& space,
                                            std::size_t max_size,
                                            const OptimizerConfig& config) {
  std::vector<NormEstimate> sweep;
  for (std::size_t size = 1; size <= max_size; ++size) {
    std::vector<Start> carried;
    if (!sweep.empty() && sweep.back().witness) {
      FunctionalFamily previous = sweep.back().witness->padded(size);
      // The search negates its starts in mirror mode; undo that here so the
      // carried witness enters unchanged.
      if (config.mirror) previous = previous.negated();
      carried.push_back({std::move(previous), "carried-witness"});
    }
    NormEstimate estimate = optimize_from(f, space, size, config, std::move(carried));
    if (!sweep.empty() && estimate.lower < sweep.back().lower) {
      // Rounding in the rescaled carried witness; keep the previous value.
      NormEstimate kept = sweep.back();
      kept.family_size = size;
      if (kept.witness) kept.witness = kept.witness->padded(size);
      kept.method.insert(kept.method.begin() + 1, "carried-witness");
      estimate = std::move(kept);
    }
    sweep.push_back(std::move(estimate));
  }
  return sweep;
}

}  // namespace fblnorm
