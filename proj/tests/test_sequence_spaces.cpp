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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "fblnorm/error.hpp"
#include "fblnorm/sequence_spaces.hpp"
#include "support.hpp"

using namespace fblnorm;

TEST_CASE("norm: examples") {
  CHECK(norm(std::vector<double>{3, 4}, Exponent(2.0)) == 5);
  CHECK(norm(std::vector<double>{1, -1, 1}, Exponent::infinity()) == 1);
  CHECK(norm(std::vector<double>{1, 2, 3}, Exponent(1.0)) == 6);
  CHECK(norm(std::vector<double>{0, 0}, Exponent(3.0)) == 0);
  CHECK(norm(std::vector<double>{}, Exponent(3.0)) == 0);
}

TEST_CASE("exponent parsing and validation") {
  CHECK(parse_exponent("inf").is_infinite());
  CHECK(parse_exponent("2.5").value() == 2.5);
  CHECK(to_string(Exponent::infinity()) == "inf");
  CHECK(to_string(Exponent(4.0)) == "4");
  CHECK_THROWS_AS(Exponent(0.5), Error);
  CHECK_THROWS_AS(parse_exponent("abc"), Error);
  CHECK_THROWS_AS(SpaceSpec(0, Exponent(2.0)), Error);
}

TEST_CASE("dual exponent") {
  CHECK(dual_exponent(Exponent(1.0)).is_infinite());
  CHECK(dual_exponent(Exponent::infinity()).value() == 1.0);
  CHECK(dual_exponent(Exponent(2.0)).value() == 2.0);
  CHECK(dual_exponent(Exponent(4.0)).value() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("ell_r exponent") {
  CHECK(ell_r_exponent(Exponent(4.0)) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(ell_r_exponent(Exponent::infinity()) == 2.0);
  CHECK(ell_r_exponent(Exponent(3.0)) == doctest::Approx(1.2).epsilon(1e-15));
  try {
    ell_r_exponent(Exponent(2.0));
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDomain);
  }
}

TEST_CASE("property: norm agrees with a naive oracle") {
  testsupport::Gen gen(3);
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, 7.0, testsupport::kInf};
  for (int t = 0; t < 400; ++t) {
    const auto x = gen.vec(gen.size(1, 8));
    const double p = gen.exponent(ps);
    const Exponent e = std::isinf(p) ? Exponent::infinity() : Exponent(p);
    const double expected = testsupport::naive_norm(x, p);
    CHECK(norm(x, e) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("property: homogeneity, triangle inequality, permutation invariance") {
  testsupport::Gen gen(5);
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, 7.0, testsupport::kInf};
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = gen.size(1, 8);
    const auto x = gen.vec(n);
    const auto y = gen.vec(n);
    const double p = gen.exponent(ps);
    const Exponent e = std::isinf(p) ? Exponent::infinity() : Exponent(p);
    const double c = gen.uniform(-5.0, 5.0);

    std::vector<double> cx(x), sum(n);
    for (std::size_t i = 0; i < n; ++i) {
      cx[i] *= c;
      sum[i] = x[i] + y[i];
    }
    const double nx = norm(x, e);
    CHECK(norm(cx, e) == doctest::Approx(std::abs(c) * nx).epsilon(1e-12));
    CHECK(norm(sum, e) <= nx + norm(y, e) + 1e-12);

    std::vector<double> reversed(x.rbegin(), x.rend());
    CHECK(norm(reversed, e) == nx);
  }
}

TEST_CASE("property: r exponent is increasing in p and solves 1/r = 1/2 + 1/p") {
  double previous = 1.0;
  for (double p = 2.25; p < 200.0; p *= 1.3) {
    const double r = ell_r_exponent(Exponent(p));
    CHECK(1.0 / r == doctest::Approx(0.5 + 1.0 / p).epsilon(1e-14));
    CHECK(r > previous);
    CHECK(r < 2.0);
    previous = r;
  }
}
