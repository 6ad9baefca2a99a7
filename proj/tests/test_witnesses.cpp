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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "fblnorm/constraint.hpp"
#include "fblnorm/engine.hpp"
#include "fblnorm/error.hpp"
#include "fblnorm/lattice_expr.hpp"
#include "fblnorm/witnesses.hpp"
#include "support.hpp"

using namespace fblnorm;

namespace {

Exponent exponent_of(double p) { return std::isinf(p) ? Exponent::infinity() : Exponent(p); }

double r_of(double p) { return std::isinf(p) ? 2.0 : 2.0 * p / (p + 2.0); }

double lp(const std::vector<double>& v, double r) { return testsupport::naive_norm(v, r); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInput;
}

}  // namespace

TEST_CASE("walsh matrix: small orders") {
  CHECK(walsh_matrix(0).rows() == std::vector<std::vector<int>>{{1}});
  CHECK(walsh_matrix(1).rows() == std::vector<std::vector<int>>{{1, 1}, {1, -1}});
  CHECK(walsh_csv(walsh_matrix(1)) == "1,1\n1,-1\n");
  CHECK(kind_of([] { walsh_matrix(WalshMatrix::kMaxOrder + 1); }) == ErrorKind::kCapacity);
  CHECK(kind_of([] { walsh_matrix(13).rows(); }) == ErrorKind::kCapacity);
}

TEST_CASE("walsh matrix: matches block construction and is orthogonal") {
  for (unsigned k = 0; k <= 7; ++k) {
    const auto w = walsh_matrix(k);
    const auto expected = testsupport::sylvester(k);
    CHECK(w.rows() == expected);
    const std::size_t m = w.size();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        std::int64_t dot = 0;
        for (std::size_t c = 0; c < m; ++c) dot += w(i, c) * w(j, c);
        CHECK(dot == (i == j ? static_cast<std::int64_t>(m) : 0));
      }
    }
  }
}

TEST_CASE("walsh witness: (1,1) at p = 4") {
  const auto w = walsh_witness({1.0, 1.0}, SpaceSpec(2, Exponent(4.0)));
  const double b = std::pow(2.0, -0.25);
  REQUIRE(w.size() == 2);
  CHECK(w.at(0, 0) == doctest::Approx(b / 2).epsilon(1e-15));
  CHECK(w.at(0, 1) == doctest::Approx(b / 2).epsilon(1e-15));
  CHECK(w.at(1, 0) == doctest::Approx(b / 2).epsilon(1e-15));
  CHECK(w.at(1, 1) == doctest::Approx(-b / 2).epsilon(1e-15));
  CHECK(normalized_value(moduli_combination(std::vector<double>{1.0, 1.0}), w) >=
        std::pow(2.0, 0.75) - 1e-12);
}

TEST_CASE("walsh witness: single nonzero coefficient gives 1") {
  for (double p : {2.5, 3.0, 8.0, testsupport::kInf}) {
    const std::vector<double> lambda{0.0, 1.0, 0.0};
    const auto w = walsh_witness(lambda, SpaceSpec(3, exponent_of(p)));
    CHECK(normalized_value(moduli_combination(lambda), w) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("walsh witness: (1,1,1) padded to 4 at p = 3") {
  const std::vector<double> lambda{1.0, 1.0, 1.0};
  const auto w = walsh_witness(lambda, SpaceSpec(3, Exponent(3.0)));
  CHECK(w.size() == 4);
  const double obj = objective(moduli_combination(lambda), w);
  CHECK(std::abs(obj - std::pow(3.0, 5.0 / 6.0)) <= 1e-12);
  CHECK(constraint_norm_exact(w) <= 1.0 + 1e-12);
}

TEST_CASE("walsh witness: errors") {
  CHECK(kind_of([] { walsh_witness({1.0}, SpaceSpec(1, Exponent(2.0))); }) == ErrorKind::kDomain);
  CHECK(kind_of([] { walsh_witness({0.0, 0.0}, SpaceSpec(2, Exponent(4.0))); }) ==
        ErrorKind::kDegenerate);
  CHECK_THROWS_AS(walsh_witness({1.0, 1.0, 1.0}, SpaceSpec(2, Exponent(4.0))), DimensionError);
}

TEST_CASE("property: walsh witness entries follow the weight formula") {
  testsupport::Gen gen(31);
  for (int t = 0; t < 100; ++t) {
    const double p = gen.exponent({2.5, 3.0, 4.0, 10.0, testsupport::kInf});
    const std::size_t len = gen.size(1, 9);
    const std::size_t n = len + gen.size(0, 2);
    auto lambda = gen.coefficients(len);
    if (len > 2) lambda[gen.size(0, len - 1)] = 0.0;
    if (std::all_of(lambda.begin(), lambda.end(), [](double v) { return v == 0.0; })) continue;
    const auto w = walsh_witness(lambda, SpaceSpec(n, exponent_of(p)));
    const double r = r_of(p);
    const double total = lp(lambda, r);
    std::size_t m = 1;
    while (m < len) m *= 2;
    REQUIRE(w.size() == m);
    const auto h = testsupport::sylvester(static_cast<unsigned>(std::log2(m)));
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const double b = i < len && lambda[i] != 0.0
                             ? std::pow(std::abs(lambda[i]) / total, r - 1.0)
                             : 0.0;
        const double expected = i < m ? b * h[i][j] / static_cast<double>(m) : 0.0;
        CHECK(w.at(j, i) == doctest::Approx(expected).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("property: walsh witness is feasible and attains the ell_r norm") {
  testsupport::Gen gen(32);
  for (int t = 0; t < 150; ++t) {
    const double p = gen.exponent({2.5, 3.0, 4.0, 10.0, testsupport::kInf});
    const std::size_t len = gen.size(1, 8);
    const auto lambda = gen.coefficients(len);
    const auto w = walsh_witness(lambda, SpaceSpec(len, exponent_of(p)));
    const double expected = lp(lambda, r_of(p));
    CHECK(testsupport::brute_constraint(w.rows(), p) <= 1.0 + 1e-12);
    CHECK(std::abs(objective(moduli_combination(lambda), w) - expected) <=
          1e-12 * (1.0 + expected));
  }
}

TEST_CASE("property: zero padding is neutral") {
  testsupport::Gen gen(33);
  for (int t = 0; t < 50; ++t) {
    const double p = gen.exponent({2.5, 4.0, testsupport::kInf});
    const std::size_t len = gen.size(1, 5);
    const auto lambda = gen.coefficients(len);
    auto padded = lambda;
    padded.resize(len + gen.size(1, 3), 0.0);
    const Exponent r(r_of(p));
    CHECK(norm(padded, r) == norm(lambda, r));
    const auto a = walsh_witness(lambda, SpaceSpec(len, exponent_of(p)));
    const auto b = walsh_witness(padded, SpaceSpec(padded.size(), exponent_of(p)));
    const double oa = objective(moduli_combination(lambda), a);
    const double ob = objective(moduli_combination(padded), b);
    CHECK(std::abs(oa - ob) <= 1e-12 * (1.0 + oa));
  }
}

TEST_CASE("all-sign witness") {
  const std::vector<double> l{1.0, 2.0, 3.0};
  const auto w = allsign_witness(l, SpaceSpec(3, Exponent(1.0)));
  CHECK(w.size() == 8);
  CHECK(constraint_norm_exact(w) == 1.0);
  CHECK(objective(moduli_combination(l), w) == 6.0);
  CHECK(normalized_value(moduli_combination(l), w) == 6.0);

  const std::vector<double> ones{1.0, 1.0};
  const auto v = allsign_witness(ones, SpaceSpec(2, Exponent(2.0)));
  CHECK(v.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(v.at(k, 0)) == 0.25);
    CHECK(std::abs(v.at(k, 1)) == 0.25);
  }
  CHECK(constraint_norm_exact(v) <= 1.0);
  CHECK(testsupport::brute_constraint(v.rows(), 2.0) <= 1.0 + 1e-15);
  CHECK(normalized_value(moduli_combination(ones), v) >= 2.0);

  for (double p : {1.0, 1.5, 2.0}) {
    const auto single = allsign_witness({1.0}, SpaceSpec(1, Exponent(p)));
    CHECK(normalized_value(moduli_combination(std::vector<double>{1.0}), single) == 1.0);
  }
  CHECK(kind_of([] { allsign_witness({1.0}, SpaceSpec(1, Exponent(3.0))); }) ==
        ErrorKind::kDomain);
  CHECK(kind_of([] { allsign_witness({0.0}, SpaceSpec(1, Exponent(1.0))); }) ==
        ErrorKind::kDegenerate);
}

TEST_CASE("property: all-sign witness constraint against brute force") {
  testsupport::Gen gen(34);
  for (int t = 0; t < 60; ++t) {
    const double p = gen.exponent({1.0, 1.25, 1.5, 2.0});
    const std::size_t len = gen.size(1, 3);
    const auto lambda = gen.coefficients(len);
    const auto w = allsign_witness(lambda, SpaceSpec(len, exponent_of(p)));
    CHECK(testsupport::brute_constraint(w.rows(), p) <= 1.0 + 1e-12);
    CHECK(objective(moduli_combination(lambda), w) ==
          doctest::Approx(lp(lambda, 1.0)).epsilon(1e-14));
  }
}

TEST_CASE("constants and upper bounds") {
  CHECK(grothendieck_constant() == doctest::Approx(3.14159265358979323846 /
                                                   (2.0 * std::log(1.0 + std::sqrt(2.0))))
                                       .epsilon(1e-15));
  CHECK(std::abs(grothendieck_constant() - 1.7822139) < 1e-6);
  CHECK(grothendieck_constant(2.0) == 2.0);
  CHECK(kind_of([] { grothendieck_constant(0.5); }) == ErrorKind::kConfig);
  CHECK(kind_of([] { grothendieck_constant(NAN); }) == ErrorKind::kConfig);

  CHECK(krivine_upper({1, 1, 1, 1}, SpaceSpec(4, Exponent::infinity())) ==
        doctest::Approx(2.0 * kKrivineBound).epsilon(1e-15));
  CHECK(krivine_upper({1}, SpaceSpec(1, Exponent(5.0))) == kKrivineBound);
  CHECK(krivine_upper({1, 1}, SpaceSpec(2, Exponent(4.0))) ==
        doctest::Approx(2.9973).epsilon(1e-4));
  CHECK(kind_of([] { krivine_upper({1}, SpaceSpec(1, Exponent(2.0))); }) == ErrorKind::kDomain);

  CHECK(triangle_upper({1, 2, 3}) == 6);
  CHECK(triangle_upper({0, 0, 0}) == 0);
  CHECK(triangle_upper({-1, 1}) == 2);
}

TEST_CASE("certificate: examples") {
  const auto a = certify_moduli_norm({1, 1, 1, 1}, SpaceSpec(4, Exponent(4.0)));
  CHECK(a.lower == doctest::Approx(2.828427).epsilon(1e-6));
  CHECK(a.upper == doctest::Approx(kKrivineBound * std::pow(4.0, 0.75)).epsilon(1e-15));
  CHECK(a.upper / a.lower == doctest::Approx(kKrivineBound).epsilon(1e-15));
  CHECK(a.certified);
  REQUIRE(a.r);
  CHECK(*a.r == doctest::Approx(4.0 / 3.0).epsilon(1e-15));

  const auto b = certify_moduli_norm({1, 1, 1, 1}, SpaceSpec(4, Exponent::infinity()));
  CHECK(b.lower == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(b.upper == doctest::Approx(2.0 * kKrivineBound).epsilon(1e-15));

  const auto c = certify_moduli_norm({1, 2, 3}, SpaceSpec(3, Exponent(1.0)));
  CHECK(c.lower == 6.0);
  CHECK(c.upper == 6.0);
  CHECK_FALSE(c.r);
  CHECK(std::find(c.provenance.begin(), c.provenance.end(), "allsign-witness") !=
        c.provenance.end());

  CHECK(kind_of([] { certify_moduli_norm({0, 0}, SpaceSpec(2, Exponent(4.0))); }) ==
        ErrorKind::kDegenerate);
}

TEST_CASE("certificate: witness is normalized") {
  testsupport::Gen gen(35);
  for (int t = 0; t < 60; ++t) {
    const double p = gen.exponent({1.0, 1.5, 2.0, 3.0, 6.0, testsupport::kInf});
    const std::size_t len = gen.size(1, 6);
    auto lambda = gen.coefficients(len);
    if (t % 3 == 0) lambda[0] = -lambda[0];  // mixed signs
    const auto cert = certify_moduli_norm(lambda, SpaceSpec(len, exponent_of(p)));
    CHECK(cert.lower <= cert.upper + 1e-9);
    if (cert.certified) CHECK(constraint_norm_exact(cert.witness) <= 1.0 + 1e-12);
    CHECK(objective(moduli_combination(lambda), cert.witness) ==
          doctest::Approx(cert.lower).epsilon(1e-9));
  }
}

TEST_CASE("certificate: mixed signs use the best sign class") {
  // |d1| - |d2|: each sign class alone gives 1; the full vector cancels.
  const auto cert = certify_moduli_norm({1, -1}, SpaceSpec(2, Exponent(4.0)));
  CHECK(cert.lower >= 1.0 - 1e-12);
}

TEST_CASE("certificate: permutation invariance is exact") {
  testsupport::Gen gen(36);
  for (int t = 0; t < 60; ++t) {
    const double p = gen.exponent({1.0, 1.5, 2.0, 3.0, 6.0, testsupport::kInf});
    const std::size_t len = gen.size(2, 6);
    const auto lambda = gen.coefficients(len);
    auto shuffled = lambda;
    std::rotate(shuffled.begin(), shuffled.begin() + 1, shuffled.end());
    const SpaceSpec space(len, exponent_of(p));
    const auto a = certify_moduli_norm(lambda, space);
    const auto b = certify_moduli_norm(shuffled, space);
    CHECK(a.lower == b.lower);
    CHECK(a.upper == b.upper);
  }
}

TEST_CASE("certificate: lower bound is nonincreasing in p for equal coefficients") {
  const std::vector<double> ps{2.5, 3.0, 4.0, 6.0, 10.0, 50.0, testsupport::kInf};
  for (std::size_t m : {2, 4, 8, 16}) {
    const std::vector<double> ones(m, 1.0);
    double previous = testsupport::kInf;
    for (double p : ps) {
      const double lower = certify_moduli_norm(ones, SpaceSpec(m, exponent_of(p))).lower;
      CHECK(lower == doctest::Approx(std::pow(double(m), 1.0 / r_of(p))).epsilon(1e-12));
      CHECK(lower <= previous);
      previous = lower;
    }
  }
}

TEST_CASE("certificate: large all-sign families fall back to analytic feasibility") {
  CertifyOptions options;
  // The all-sign family on three coordinates reduces to four functionals.
  options.enumeration_cap = 3;
  const auto cert = certify_moduli_norm({1, 1, 1}, SpaceSpec(3, Exponent(1.5)), options);
  CHECK_FALSE(cert.certified);
  CHECK(cert.lower == 3.0);
  CHECK(std::find(cert.provenance.begin(), cert.provenance.end(), "analytic-feasibility") !=
        cert.provenance.end());
}
