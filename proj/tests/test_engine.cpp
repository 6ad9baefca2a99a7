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

#include "fblnorm/constraint.hpp"
#include "fblnorm/engine.hpp"
#include "fblnorm/error.hpp"
#include "fblnorm/lattice_expr.hpp"
#include "fblnorm/parser.hpp"
#include "fblnorm/random.hpp"
#include "fblnorm/witnesses.hpp"
#include "support.hpp"

using namespace fblnorm;
using testsupport::Matrix;

namespace {

Exponent exponent_of(double p) { return std::isinf(p) ? Exponent::infinity() : Exponent(p); }

FunctionalFamily family_of(const Matrix& rows, double p) {
  return FunctionalFamily(SpaceSpec(rows.front().size(), exponent_of(p)), rows);
}

const std::vector<double> kExponents{1.0, 1.5, 2.0, 3.0, 4.0, testsupport::kInf};

}  // namespace

TEST_CASE("constraint: examples") {
  CHECK(constraint_norm_exact(family_of({{1, 0}, {0, 1}}, 2.0)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  for (double p : kExponents) CHECK(constraint_norm_exact(family_of({{0, 1, 0}}, p)) == 1.0);

  const auto f = family_of({{1, 1}, {1, -1}}, 1.0);
  CHECK(constraint_norm_exact(f) == 2.0);
  CHECK(constraint_norm_exact(f, {24, 0, ConstraintRoute::kSignEnumeration}) == 2.0);
  CHECK(constraint_norm_exact(f, {24, 0, ConstraintRoute::kClosedForm}) == 2.0);
  CHECK(testsupport::brute_constraint({{1, 1}, {1, -1}}, 1.0) == 2.0);

  const auto w = walsh_witness({1.0, 1.0}, SpaceSpec(2, Exponent(4.0)));
  CHECK(constraint_norm_exact(w) <= 1.0 + 1e-12);
}

TEST_CASE("constraint: route and capacity errors") {
  const auto f = family_of({{1, 2}}, 3.0);
  CHECK_THROWS_AS(constraint_norm_exact(f, {24, 0, ConstraintRoute::kClosedForm}), Error);
  CHECK_THROWS_AS(constraint_norm_exact(f, {24, 0, ConstraintRoute::kVertexEnumeration}), Error);

  Rng rng(1);
  const auto big = random_family(rng, SpaceSpec(2, Exponent(3.0)), 30);
  try {
    constraint_norm_exact(big);
    FAIL("expected a capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kCapacity);
    CHECK(std::string(e.what()).find("heuristic") != std::string::npos);
  }
  // The closed form has no cap.
  const auto wide = random_family(rng, SpaceSpec(2, Exponent(1.0)), 30);
  CHECK(constraint_norm_exact(wide) > 0.0);
  CHECK(exact_constraint_available(SpaceSpec(2, Exponent(1.0)), 1000, 24));
  CHECK(exact_constraint_available(SpaceSpec(3, Exponent::infinity()), 1000, 24));
  CHECK_FALSE(exact_constraint_available(SpaceSpec(3, Exponent(2.0)), 25, 24));
}

TEST_CASE("property: exact constraint matches brute force over all sign vectors") {
  testsupport::Gen gen(21);
  for (int t = 0; t < 300; ++t) {
    const double p = gen.exponent(kExponents);
    const Matrix rows = gen.matrix(gen.size(1, 9), gen.size(1, 4));
    const double expected = testsupport::brute_constraint(rows, p);
    const double got = constraint_norm_exact(family_of(rows, p));
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("property: p = 1 closed form equals max column sum and sign enumeration exactly") {
  testsupport::Gen gen(22);
  for (int t = 0; t < 200; ++t) {
    const Matrix rows = gen.matrix(gen.size(1, 10), gen.size(1, 5));
    double expected = 0.0;
    for (std::size_t i = 0; i < rows.front().size(); ++i) {
      double s = 0.0;
      for (const auto& r : rows) s += std::abs(r[i]);
      expected = std::max(expected, s);
    }
    const auto f = family_of(rows, 1.0);
    CHECK(constraint_norm_exact(f) == expected);
    CHECK(constraint_norm_exact(f, {24, 0, ConstraintRoute::kSignEnumeration}) == expected);
  }
}

TEST_CASE("property: p = 2 with one functional is the Euclidean norm") {
  testsupport::Gen gen(23);
  for (int t = 0; t < 100; ++t) {
    const Matrix rows = gen.matrix(1, gen.size(1, 6));
    CHECK(constraint_norm_exact(family_of(rows, 2.0)) ==
          doctest::Approx(testsupport::naive_norm(rows[0], 2.0)).epsilon(1e-14));
  }
}

TEST_CASE("property: duplicate and opposite functionals merge") {
  testsupport::Gen gen(24);
  for (int t = 0; t < 100; ++t) {
    const double p = gen.exponent(kExponents);
    Matrix rows = gen.matrix(gen.size(1, 5), gen.size(1, 4));
    rows.push_back(rows.front());
    auto flipped = rows.back();
    for (double& v : flipped) v = -v;
    rows.push_back(flipped);
    rows.push_back(std::vector<double>(rows.front().size(), 0.0));
    const double expected = testsupport::brute_constraint(rows, p);
    CHECK(constraint_norm_exact(family_of(rows, p)) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("property: constraint is exactly symmetric under negation") {
  testsupport::Gen gen(25);
  for (int t = 0; t < 200; ++t) {
    const double p = gen.exponent(kExponents);
    const auto f = family_of(gen.matrix(gen.size(1, 10), gen.size(1, 4)), p);
    CHECK(constraint_norm_exact(f) == constraint_norm_exact(f.negated()));
  }
}

TEST_CASE("constraint does not depend on the thread count") {
  Rng rng(2);
  const auto f = random_family(rng, SpaceSpec(4, Exponent(3.0)), 20);
  const double serial = constraint_norm_exact(f, {24, 1});
  CHECK(constraint_norm_exact(f, {24, 4}) == serial);
  CHECK(constraint_norm_exact(f, {24, 3}) == serial);
}

TEST_CASE("heuristic constraint") {
  CHECK(constraint_norm_heuristic(family_of({{1, 0}}, 3.0), 4) == 1.0);
  CHECK(constraint_norm_heuristic(family_of({{0, 0}, {0, 0}}, 3.0), 4) == 0.0);
  testsupport::Gen gen(26);
  int matched = 0;
  for (int t = 0; t < 100; ++t) {
    const double p = gen.exponent(kExponents);
    const auto f = family_of(gen.matrix(gen.size(1, 10), gen.size(1, 4)), p);
    const double exact = constraint_norm_exact(f);
    const double heuristic = constraint_norm_heuristic(f, 8, t);
    CHECK(heuristic <= exact * (1.0 + 1e-12));
    matched += heuristic >= exact * (1.0 - 1e-9);
  }
  CHECK(matched >= 95);
}

TEST_CASE("sampled constraint") {
  const double single = sample_constraint_lower(family_of({{1, 0}}, 2.0), 1000, 1);
  CHECK(single > 0.0);
  CHECK(single <= 1.0);
  const double pair = sample_constraint_lower(family_of({{1, 0}, {0, 1}}, 2.0), 100000, 2);
  CHECK(pair >= 0.99 * std::sqrt(2.0));
  CHECK(pair <= std::sqrt(2.0) + 1e-12);

  testsupport::Gen gen(27);
  for (int t = 0; t < 50; ++t) {
    const double p = gen.exponent(kExponents);
    const auto f = family_of(gen.matrix(gen.size(1, 8), gen.size(1, 4)), p);
    CHECK(sample_constraint_lower(f, 20000, t) <= constraint_norm_exact(f) + 1e-12);
  }
}

TEST_CASE("objective") {
  const auto e1 = generator(1, 2);
  CHECK(objective(modulus(e1), family_of({{1, 0}}, 2.0)) == 1.0);
  // A zero functional contributes nothing.
  CHECK(objective(modulus(e1), family_of({{1, 0}, {0, 0}}, 2.0)) == 1.0);
  CHECK_THROWS_AS(objective(generator(1, 3), family_of({{1, 0}}, 2.0)), DimensionError);

  const std::vector<double> lambda{1.0, 1.0};
  const auto w = walsh_witness(lambda, SpaceSpec(2, Exponent(4.0)));
  CHECK(objective(moduli_combination(lambda), w) ==
        doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-14));
}

TEST_CASE("normalized value") {
  const auto e1 = generator(1, 1);
  for (double t : {0.5, 1.0, 3.0, 100.0}) {
    for (double p : kExponents) {
      CHECK(normalized_value(modulus(e1), family_of({{t}}, p)) ==
            doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  const std::vector<double> lambda{1.0, 1.0};
  const auto w = walsh_witness(lambda, SpaceSpec(2, Exponent(4.0)));
  CHECK(normalized_value(moduli_combination(lambda), w) >= std::pow(2.0, 0.75) - 1e-12);
  CHECK_THROWS_AS(normalized_value(modulus(e1), family_of({{0.0}}, 2.0)), Error);
}

TEST_CASE("property: normalized value is scale invariant") {
  testsupport::Gen gen(28);
  Rng rng(28);
  for (int t = 0; t < 100; ++t) {
    const double p = gen.exponent(kExponents);
    const std::size_t n = gen.size(1, 4);
    const auto f = random_expression(rng, n, 3);
    const auto family = family_of(gen.matrix(gen.size(1, 6), n), p);
    const double c = gen.uniform(1e-3, 100.0);
    CHECK(normalized_value(f, family.scaled(c)) ==
          doctest::Approx(normalized_value(f, family)).epsilon(1e-12));
  }
}

TEST_CASE("moduli pattern matching") {
  CHECK(match_moduli_combination(parse("abs(d(e1)) + 2*abs(d(e3))")) ==
        std::vector<double>{1.0, 0.0, 2.0});
  CHECK(match_moduli_combination(parse("-abs(d(e2)) + abs(d(e1))")) ==
        std::vector<double>{1.0, -1.0});
  CHECK(match_moduli_combination(parse("3 * (abs(d(e1)) + abs(d(e2)))")) ==
        std::vector<double>{3.0, 3.0});
  CHECK_FALSE(match_moduli_combination(parse("d(e1)")));
  CHECK_FALSE(match_moduli_combination(parse("abs(d(e1)) \\/ abs(d(e2))")));
  CHECK(match_moduli_combination(parse("abs(d(e1)) + abs(d(e1))")) == std::vector<double>{2.0});
  CHECK_FALSE(match_moduli_combination(parse("abs(d([1,1]))")));
}

TEST_CASE("triangle upper bound of an expression") {
  const auto f = parse("abs(d([3,4])) + 2 * abs(d(e1)) \\/ d(e2)");
  CHECK(expression_triangle_upper(f, Exponent(2.0)) == 5.0 + 2.0 + 1.0);
}

TEST_CASE("optimizer: examples") {
  OptimizerConfig config;
  config.seed = 5;

  const std::vector<double> ones{1.0, 1.0, 1.0, 1.0};
  const auto est = optimize_family(moduli_combination(ones), SpaceSpec(4, Exponent(4.0)), 4,
                                   config);
  CHECK(est.certified);
  CHECK(est.lower >= std::pow(4.0, 0.75) - 1e-9);
  CHECK(est.lower <= kKrivineBound * std::pow(4.0, 0.75) + 1e-9);
  REQUIRE(est.upper);
  // The triangle bound (sum of |lambda|) is tighter here than the Krivine bound.
  CHECK(*est.upper == 4.0);
  REQUIRE(est.witness);
  CHECK(constraint_norm_exact(*est.witness) <= 1.0 + 1e-12);

  const std::vector<double> l{1.0, 2.0, 3.0};
  const auto l1 = optimize_family(moduli_combination(l), SpaceSpec(3, Exponent(1.0)), 8, config);
  CHECK(l1.lower == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(*l1.upper == 6.0);

  for (double p : kExponents) {
    const auto unit = optimize_family(modulus(generator(1, 2)), SpaceSpec(2, exponent_of(p)), 1,
                                      config);
    CHECK(unit.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unit.certified);
  }
}

TEST_CASE("optimizer: linear functional attains the norm of its vector") {
  OptimizerConfig config;
  config.seed = 9;
  const auto quick = optimize_family(generator(1, 3), SpaceSpec(3, Exponent(3.0)), 1, config);
  CHECK(quick.lower >= 0.98);
  CHECK(quick.lower <= 1.0 + 1e-12);
  config.iterations = 4000;
  config.step_decay = 0.998;
  const auto slow = optimize_family(generator(1, 3), SpaceSpec(3, Exponent(3.0)), 1, config);
  CHECK(slow.lower == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(slow.lower <= 1.0 + 1e-12);
}

TEST_CASE("optimizer: determinism and thread independence") {
  OptimizerConfig config;
  config.seed = 77;
  config.restarts = 6;
  const auto f = parse("abs(d(e1) - d(e2)) \\/ abs(d(e3))");
  const SpaceSpec space(3, Exponent(3.0));
  config.threads = 1;
  const auto a = optimize_family(f, space, 3, config);
  config.threads = 4;
  const auto b = optimize_family(f, space, 3, config);
  CHECK(a.lower == b.lower);
  REQUIRE(a.witness);
  REQUIRE(b.witness);
  CHECK(a.witness->rows() == b.witness->rows());
  CHECK(a.method == b.method);
}

TEST_CASE("optimizer: seeds bound the result from below") {
  OptimizerConfig config;
  config.seed = 3;
  config.restarts = 0;
  config.iterations = 0;
  const std::vector<double> lambda{0.3, 1.2, 0.7};
  const SpaceSpec space(3, Exponent(6.0));
  const auto est = optimize_family(moduli_combination(lambda), space, 4, config);
  CHECK(est.lower >= norm(lambda, Exponent(ell_r_exponent(space.p))) - 1e-12);
  CHECK(est.method.at(1) == "walsh-witness");
}

TEST_CASE("optimizer: capacity and configuration errors") {
  OptimizerConfig config;
  config.enumeration_cap = 4;
  CHECK_THROWS_AS(optimize_family(generator(1, 2), SpaceSpec(2, Exponent(3.0)), 5, config),
                  Error);
  CHECK_THROWS_AS(optimize_family(generator(1, 2), SpaceSpec(2, Exponent(3.0)), 0, config),
                  Error);
  CHECK_THROWS_AS(optimize_family(generator(1, 2), SpaceSpec(3, Exponent(3.0)), 1, config),
                  DimensionError);
}

TEST_CASE("mirrored search on the negative part reproduces the positive part") {
  OptimizerConfig config;
  config.seed = 41;
  config.restarts = 4;
  for (double p : kExponents) {
    const SpaceSpec space(2, exponent_of(p));
    const auto g = generator(1, 2);
    const auto a = optimize_family(pos_part(g), space, 3, config);
    config.mirror = true;
    const auto b = optimize_family(neg_part(g), space, 3, config);
    config.mirror = false;
    CHECK(a.lower == b.lower);
  }
}

TEST_CASE("sweep") {
  OptimizerConfig config;
  config.seed = 8;
  config.restarts = 4;
  const auto unit = lower_bound_sweep(modulus(generator(1, 2)), SpaceSpec(2, Exponent(3.0)), 4,
                                      config);
  REQUIRE(unit.size() == 4);
  for (std::size_t s = 0; s < unit.size(); ++s) {
    CHECK(unit[s].lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unit[s].family_size == s + 1);
  }

  const std::vector<double> ones{1.0, 1.0};
  const auto moduli =
      lower_bound_sweep(moduli_combination(ones), SpaceSpec(2, Exponent(4.0)), 5, config);
  for (std::size_t s = 1; s < moduli.size(); ++s) CHECK(moduli[s].lower >= moduli[s - 1].lower);
  for (const auto& est : moduli) {
    CHECK(est.lower <= kKrivineBound * std::pow(2.0, 0.75) + 1e-9);
  }

  Rng rng(4);
  for (int t = 0; t < 5; ++t) {
    const auto f = random_expression(rng, 3, 3);
    const auto sweep = lower_bound_sweep(f, SpaceSpec(3, Exponent(2.5)), 4, config);
    for (std::size_t s = 1; s < sweep.size(); ++s) CHECK(sweep[s].lower >= sweep[s - 1].lower);
  }
}
