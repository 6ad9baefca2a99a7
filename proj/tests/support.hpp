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

#ifndef FBLNORM_TESTS_SUPPORT_HPP_
#define FBLNORM_TESTS_SUPPORT_HPP_

// Brute-force oracles and small generators shared by the unit tests. The
// oracles are deliberately naive and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace testsupport {

using Matrix = std::vector<std::vector<double>>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// (sum |v_i|^q)^(1/q) with plain std::pow; q = inf gives the max.
inline double naive_norm(const std::vector<double>& v, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), q);
  return std::pow(s, 1.0 / q);
}

inline double conjugate(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

// max over every sign vector (both halves) of ||sum_k s_k x_k||_{p'}.
inline double brute_constraint(const Matrix& rows, double p) {
  const std::size_t count = rows.size();
  const std::size_t n = rows.front().size();
  const double q = conjugate(p);
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << count); ++mask) {
    std::vector<double> v(n, 0.0);
    for (std::size_t k = 0; k < count; ++k) {
      const double s = (mask >> k) & 1U ? -1.0 : 1.0;
      for (std::size_t i = 0; i < n; ++i) v[i] += s * rows[k][i];
    }
    best = std::max(best, naive_norm(v, q));
  }
  return best;
}

// Sylvester construction by explicit block copying.
inline std::vector<std::vector<int>> sylvester(unsigned k) {
  std::vector<std::vector<int>> h{{1}};
  for (unsigned level = 0; level < k; ++level) {
    const std::size_t m = h.size();
    std::vector<std::vector<int>> next(2 * m, std::vector<int>(2 * m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        next[i][j] = h[i][j];
        next[i][j + m] = h[i][j];
        next[i + m][j] = h[i][j];
        next[i + m][j + m] = -h[i][j];
      }
    }
    h = std::move(next);
  }
  return h;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  double gauss() { return std::normal_distribution<double>()(rng_); }

  std::vector<double> vec(std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = gauss();
    return v;
  }
  Matrix matrix(std::size_t rows, std::size_t n) {
    Matrix m(rows);
    for (auto& r : m) r = vec(n);
    return m;
  }
  // Common sign, magnitudes in [0.1, 2].
  std::vector<double> coefficients(std::size_t m) {
    const double sign = uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    std::vector<double> v(m);
    for (double& x : v) x = sign * uniform(0.1, 2.0);
    return v;
  }
  double exponent(const std::vector<double>& choices) {
    return choices[size(0, choices.size() - 1)];
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testsupport

#endif  // FBLNORM_TESTS_SUPPORT_HPP_
