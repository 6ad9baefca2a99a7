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

#include <cmath>

#include "fblnorm/engine.hpp"
#include "fblnorm/error.hpp"

namespace fblnorm {

namespace {

// Adds scale * (the moduli combination denoted by f) into lambda.
bool collect_moduli(const LatticeExpr& f, double scale,
                    std::vector<double>& lambda) {
  using Kind = LatticeExpr::Kind;
  switch (f.kind()) {
    case Kind::kSum:
      return collect_moduli(f.left(), scale, lambda) &&
             collect_moduli(f.right(), scale, lambda);
    case Kind::kScale:
      return collect_moduli(f.child(), scale * f.scalar(), lambda);
    case Kind::kAbs: {
      const LatticeExpr* inner = &f.child();
      double factor = 1.0;
      while (inner->kind() == Kind::kScale) {
        factor *= std::abs(inner->scalar());
        inner = &inner->child();
      }
      if (inner->kind() != Kind::kAtom) return false;
      const auto x = inner->atom_vector();
      std::size_t hit = x.size();
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) continue;
        if (hit != x.size()) return false;
        hit = i;
      }
      if (hit == x.size()) return true;  // |0| contributes nothing
      lambda[hit] += scale * factor * std::abs(x[hit]);
      return true;
    }
    case Kind::kAtom:
    case Kind::kJoin:
    case Kind::kMeet:
      return false;
  }
  return false;
}

}  // namespace

double objective(const LatticeExpr& f, const FunctionalFamily& family) {
  if (f.dimension() != family.dimension()) {
    throw DimensionError(f.dimension(), family.dimension(),
                         "expression versus functional family");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < family.size(); ++k) total += std::abs(f.evaluate(family[k]));
  return total;
}

double normalized_value(const LatticeExpr& f, const FunctionalFamily& family,
                        const ConstraintOptions& options) {
  const double num = objective(f, family);
  const double den = constraint_norm_exact(family, options);
  if (!(den > 0.0)) {
    throw Error(ErrorKind::kDegenerate,
                "functional family has zero constraint value (all vectors zero)");
  }
  return num / den;
}

std::optional<std::vector<double>> match_moduli_combination(const LatticeExpr& f) {
  std::vector<double> lambda(f.dimension(), 0.0);
  if (!collect_moduli(f, 1.0, lambda)) return std::nullopt;
  return lambda;
}

double expression_triangle_upper(const LatticeExpr& f, const Exponent& p) {
  using Kind = LatticeExpr::Kind;
  switch (f.kind()) {
    case Kind::kAtom:
      return norm(f.atom_vector(), p);
    case Kind::kScale:
      return std::abs(f.scalar()) * expression_triangle_upper(f.child(), p);
    case Kind::kAbs:
      return expression_triangle_upper(f.child(), p);
    case Kind::kSum:
    case Kind::kJoin:
    case Kind::kMeet:
      return expression_triangle_upper(f.left(), p) +
             expression_triangle_upper(f.right(), p);
  }
  return 0.0;
}

}  // namespace fblnorm
