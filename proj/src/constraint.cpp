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

#include "fblnorm/constraint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "dual_norm.hpp"
#include "fblnorm/error.hpp"
#include "fblnorm/parallel.hpp"
#include "fblnorm/random.hpp"

namespace fblnorm {

namespace {

using internal::DualNorm;

// Families up to this size are enumerated pattern by pattern from scratch,
// which reproduces the p = 1 closed form bit for bit.
constexpr std::size_t kDirectLimit = 12;
constexpr std::uint64_t kBlock = 1024;

// `count` vectors of length `dim`, row-major.
struct Vectors {
  std::vector<double> data;
  std::size_t count = 0;
  std::size_t dim = 0;

  const double* row(std::size_t k) const { return data.data() + k * dim; }
};

Vectors from_family(const FunctionalFamily& family) {
  return {std::vector<double>(family.flat().begin(), family.flat().end()),
          family.size(), family.dimension()};
}

Vectors transposed(const Vectors& v) {
  Vectors t{std::vector<double>(v.data.size()), v.dim, v.count};
  for (std::size_t k = 0; k < v.count; ++k) {
    for (std::size_t i = 0; i < v.dim; ++i) t.data[i * v.count + k] = v.data[k * v.dim + i];
  }
  return t;
}

// Drops zero vectors and merges vectors equal up to sign (x and +-x become
// 2x). The maximum over sign patterns is unchanged: the norm of the sum is
// convex in the merged coefficient, so +-2 dominates 0.
Vectors reduced(const Vectors& v) {
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < v.count; ++k) {
    const double* r = v.row(k);
    const double* lead = std::find_if(r, r + v.dim, [](double x) { return x != 0.0; });
    if (lead == r + v.dim) continue;
    const double sign = *lead < 0.0 ? -1.0 : 1.0;
    std::vector<double> row(v.dim);
    for (std::size_t i = 0; i < v.dim; ++i) row[i] = sign * r[i];
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());

  Vectors out{{}, 0, v.dim};
  for (std::size_t a = 0; a < rows.size();) {
    std::size_t b = a + 1;
    while (b < rows.size() && rows[b] == rows[a]) ++b;
    const double multiplicity = static_cast<double>(b - a);
    for (double x : rows[a]) out.data.push_back(multiplicity * x);
    ++out.count;
    a = b;
  }
  return out;
}

// Fills s with sum_k sigma_k v_k for pattern t (bit k set -> sigma_k = -1;
// the last vector always has sign +1).
void pattern_sum(const Vectors& v, std::uint64_t t, std::vector<double>& s) {
  std::fill(s.begin(), s.end(), 0.0);
  for (std::size_t k = 0; k < v.count; ++k) {
    const bool negative = k + 1 < v.count && ((t >> k) & 1U);
    const double* r = v.row(k);
    if (negative) {
      for (std::size_t i = 0; i < v.dim; ++i) s[i] -= r[i];
    } else {
      for (std::size_t i = 0; i < v.dim; ++i) s[i] += r[i];
    }
  }
}

// max over sign patterns of the accumulated dual-norm terms of the signed sum.
double max_pattern_terms(const Vectors& v, const DualNorm& dual, int threads) {
  if (v.count == 0) return 0.0;
  const std::uint64_t patterns = std::uint64_t{1} << (v.count - 1);
  const std::uint64_t block = std::min(patterns, kBlock);
  const std::uint64_t blocks = (patterns + block - 1) / block;
  const bool direct = v.count <= kDirectLimit;

  std::vector<double> best(blocks, 0.0);
  parallel_for(blocks, threads, [&](std::size_t b) {
    std::vector<double> s(v.dim);
    const std::uint64_t begin = b * block;
    const std::uint64_t end = std::min(patterns, begin + block);
    double local = 0.0;
    if (direct) {
      for (std::uint64_t t = begin; t < end; ++t) {
        pattern_sum(v, t, s);
        local = std::max(local, dual.accumulate(s.data(), v.dim));
      }
    } else {
      // Gray-code walk, resynchronized from scratch at each block start.
      pattern_sum(v, begin ^ (begin >> 1), s);
      local = dual.accumulate(s.data(), v.dim);
      for (std::uint64_t t = begin + 1; t < end; ++t) {
        const unsigned k = static_cast<unsigned>(std::countr_zero(t));
        const std::uint64_t gray = t ^ (t >> 1);
        const double step = ((gray >> k) & 1U) ? -2.0 : 2.0;
        const double* r = v.row(k);
        for (std::size_t i = 0; i < v.dim; ++i) s[i] += step * r[i];
        local = std::max(local, dual.accumulate(s.data(), v.dim));
      }
    }
    best[b] = local;
  });
  return *std::max_element(best.begin(), best.end());
}

double closed_form_l1(const FunctionalFamily& family) {
  double best = 0.0;
  for (std::size_t i = 0; i < family.dimension(); ++i) {
    double column = 0.0;
    for (std::size_t k = 0; k < family.size(); ++k) column += std::abs(family.at(k, i));
    best = std::max(best, column);
  }
  return best;
}

[[noreturn]] void capacity_exceeded(std::size_t needed, std::size_t cap,
                                    const char* what) {
  throw Error(ErrorKind::kCapacity,
              std::string("exact constraint needs enumeration over ") +
                  std::to_string(needed) + " " + what + ", above the cap of " +
                  std::to_string(cap) +
                  "; raise the cap or use the heuristic (uncertified) path");
}

double sign_route(const Vectors& v, const Exponent& p, std::size_t cap,
                  int threads) {
  if (v.count > cap) capacity_exceeded(v.count, cap, "functionals");
  const DualNorm dual(dual_exponent(p));
  return dual.root(max_pattern_terms(v, dual, threads));
}

// p = inf: sum_k |<x_k, t>| over vertices t = signed sums of columns in l_1.
double vertex_route(const Vectors& columns, std::size_t cap, int threads) {
  if (columns.count > cap) capacity_exceeded(columns.count, cap, "coordinates");
  const DualNorm l1(Exponent(1.0));
  return max_pattern_terms(columns, l1, threads);
}

}  // namespace

bool exact_constraint_available(const SpaceSpec& space, std::size_t family_size,
                                std::size_t enumeration_cap) {
  if (!space.p.is_infinite() && space.p.value() == 1.0) return true;
  if (space.p.is_infinite()) return std::min(family_size, space.n) <= enumeration_cap;
  return family_size <= enumeration_cap;
}

double constraint_norm_exact(const FunctionalFamily& family,
                             const ConstraintOptions& options) {
  const Exponent& p = family.space().p;
  const bool p_one = !p.is_infinite() && p.value() == 1.0;
  const int threads = resolve_threads(options.threads);
  const std::size_t cap = options.enumeration_cap;

  switch (options.route) {
    case ConstraintRoute::kClosedForm:
      if (!p_one) throw Error(ErrorKind::kDomain, "the closed-form constraint requires p = 1");
      return closed_form_l1(family);
    case ConstraintRoute::kVertexEnumeration:
      if (!p.is_infinite()) {
        throw Error(ErrorKind::kDomain, "vertex enumeration requires p = inf");
      }
      return vertex_route(transposed(from_family(family)), cap, threads);
    case ConstraintRoute::kSignEnumeration:
      return sign_route(from_family(family), p, cap, threads);
    case ConstraintRoute::kAuto:
      break;
  }

  if (p_one) return closed_form_l1(family);
  const Vectors rows = reduced(from_family(family));
  if (rows.count == 0) return 0.0;
  if (p.is_infinite()) {
    const Vectors columns = reduced(transposed(rows));
    if (columns.count < rows.count) return vertex_route(columns, cap, threads);
  }
  return sign_route(rows, p, cap, threads);
}

double constraint_norm_heuristic(const FunctionalFamily& family,
                                 std::size_t restarts, std::uint64_t seed) {
  const Vectors v = from_family(family);
  const DualNorm dual(dual_exponent(family.space().p));
  const std::size_t n = v.dim;
  // Bounds the walk if rounding ever makes the ascent revisit a pattern.
  const std::size_t max_flips = 64 * v.count + 1024;

  double best = 0.0;
  std::vector<double> s(n);
  std::vector<double> trial(n);
  for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
    Rng rng(mix_seed(seed, {r}));
    std::vector<double> sigma(v.count);
    std::fill(s.begin(), s.end(), 0.0);
    for (std::size_t k = 0; k < v.count; ++k) {
      sigma[k] = std::bernoulli_distribution(0.5)(rng) ? -1.0 : 1.0;
      for (std::size_t i = 0; i < n; ++i) s[i] += sigma[k] * v.row(k)[i];
    }
    double value = dual.accumulate(s.data(), n);
    for (std::size_t flips = 0; flips < max_flips; ++flips) {
      std::size_t pick = v.count;
      double pick_value = value;
      for (std::size_t k = 0; k < v.count; ++k) {
        for (std::size_t i = 0; i < n; ++i) trial[i] = s[i] - 2.0 * sigma[k] * v.row(k)[i];
        const double t = dual.accumulate(trial.data(), n);
        if (t > pick_value * (1.0 + 1e-14)) {
          pick = k;
          pick_value = t;
        }
      }
      if (pick == v.count) break;
      for (std::size_t i = 0; i < n; ++i) s[i] -= 2.0 * sigma[pick] * v.row(pick)[i];
      sigma[pick] = -sigma[pick];
      value = pick_value;
    }
    best = std::max(best, value);
  }
  return dual.root(best);
}

double sample_constraint_lower(const FunctionalFamily& family,
                               std::size_t samples, std::uint64_t seed) {
  const std::size_t n = family.dimension();
  const Exponent& p = family.space().p;
  const internal::DualNorm primal(p);
  Rng rng(mix_seed(seed, {0x5a5a}));
  std::normal_distribution<double> gauss;
  // Shape exponent: large values push samples toward coordinate axes, small
  // ones toward cube vertices, covering the extreme points of every l_p ball.
  std::uniform_real_distribution<double> log_shape(-3.0, 3.0);

  double best = 0.0;
  std::vector<double> x(n);
  for (std::size_t s = 0; s < samples; ++s) {
    const double shape = std::exp(log_shape(rng));
    for (std::size_t i = 0; i < n; ++i) {
      const double g = gauss(rng);
      x[i] = std::copysign(std::pow(std::abs(g), shape), g);
    }
    const double size = primal.root(primal.accumulate(x.data(), n));
    if (!(size > 0.0) || !std::isfinite(size)) continue;
    double total = 0.0;
    for (std::size_t k = 0; k < family.size(); ++k) {
      const auto row = family[k];
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += row[i] * x[i];
      total += std::abs(dot);
    }
    best = std::max(best, total / size);
  }
  return best;
}

}  // namespace fblnorm
