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

#include "fblnorm/random.hpp"

#include <cmath>

namespace fblnorm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t base,
                       std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = splitmix64(base);
  for (std::uint64_t t : tags) h = splitmix64(h ^ splitmix64(t + 0x632be59bd9b4e019ULL));
  return h;
}

std::vector<double> random_lambda(Rng& rng, std::size_t m,
                                  double zero_probability) {
  const double sign = uniform01(rng) < 0.5 ? -1.0 : 1.0;
  std::vector<double> lambda(m);
  bool any = false;
  for (auto& v : lambda) {
    const bool zero = uniform01(rng) < zero_probability;
    v = zero ? 0.0 : sign * (1.0 - uniform01(rng));
    any = any || !zero;
  }
  if (!any && m > 0) {
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    lambda[pick(rng)] = sign * (1.0 - uniform01(rng));
  }
  return lambda;
}

std::vector<double> random_point(Rng& rng, std::size_t n) {
  std::normal_distribution<double> gauss;
  std::vector<double> x(n);
  for (auto& v : x) v = gauss(rng);
  return x;
}

FunctionalFamily random_family(Rng& rng, const SpaceSpec& space,
                               std::size_t count) {
  return FunctionalFamily(space, count, random_point(rng, count * space.n));
}

LatticeExpr random_expression(Rng& rng, std::size_t n, int max_depth) {
  std::uniform_int_distribution<int> kind_dist(0, 6);
  const int kind = max_depth <= 0 ? 0 : kind_dist(rng);
  switch (kind) {
    case 0: {
      if (uniform01(rng) < 0.5) {
        std::uniform_int_distribution<std::size_t> index(1, n);
        return generator(index(rng), n);
      }
      return LatticeExpr::atom(random_point(rng, n));
    }
    case 1: {
      const double c = std::round(8.0 * (uniform01(rng) * 6.0 - 3.0)) / 8.0;
      return LatticeExpr::scale(c, random_expression(rng, n, max_depth - 1));
    }
    case 2:
    case 3:
    case 4: {
      // Sequenced draws: argument evaluation order is unspecified.
      LatticeExpr left = random_expression(rng, n, max_depth - 1);
      LatticeExpr right = random_expression(rng, n, max_depth - 1);
      if (kind == 2) return LatticeExpr::sum(left, right);
      if (kind == 3) return LatticeExpr::join(left, right);
      return LatticeExpr::meet(left, right);
    }
    case 5:
      return LatticeExpr::abs(random_expression(rng, n, max_depth - 1));
    default: {
      const bool positive = uniform01(rng) < 0.5;
      LatticeExpr inner = random_expression(rng, n, max_depth - 1);
      return positive ? pos_part(inner) : neg_part(inner);
    }
  }
}

}  // namespace fblnorm
