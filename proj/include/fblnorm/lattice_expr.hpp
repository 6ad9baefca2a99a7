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

#ifndef FBLNORM_LATTICE_EXPR_HPP_
#define FBLNORM_LATTICE_EXPR_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fblnorm {

// An element of the free vector lattice over n generators, viewed as a
// positively homogeneous function on the dual space R^n. Atom(x) denotes the
// evaluation delta_x: x* -> <x*, x>; the remaining nodes act pointwise.
//
// Expressions are immutable and share subtrees; copies are cheap and all
// member functions are safe to call concurrently.
class LatticeExpr {
 public:
  enum class Kind { kAtom, kScale, kSum, kJoin, kMeet, kAbs };

  // Throws Error(kConfig) on an empty or non-finite vector.
  static LatticeExpr atom(std::vector<double> x);
  static LatticeExpr scale(double c, const LatticeExpr& child);
  // Binary constructors throw DimensionError if the operands disagree on n.
  static LatticeExpr sum(const LatticeExpr& left, const LatticeExpr& right);
  static LatticeExpr join(const LatticeExpr& left, const LatticeExpr& right);
  static LatticeExpr meet(const LatticeExpr& left, const LatticeExpr& right);
  static LatticeExpr abs(const LatticeExpr& child);

  Kind kind() const noexcept;
  std::size_t dimension() const noexcept;

  // Accessors below require the matching kind; they throw std::logic_error
  // otherwise.
  std::span<const double> atom_vector() const;
  double scalar() const;
  const LatticeExpr& child() const;  // kScale, kAbs
  const LatticeExpr& left() const;   // kSum, kJoin, kMeet
  const LatticeExpr& right() const;

  // f(x*). Throws DimensionError if xstar.size() != dimension().
  double evaluate(std::span<const double> xstar) const;

  // Number of nodes in the tree.
  std::size_t size() const noexcept;

 private:
  struct Node;
  explicit LatticeExpr(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  double eval_unchecked(std::span<const double> xstar) const;

  std::shared_ptr<const Node> node_;
};

double evaluate(const LatticeExpr& f, std::span<const double> xstar);

// Atom(e_i) in dimension n, 1-based. Throws Error(kIndex) unless 1 <= i <= n.
LatticeExpr generator(std::size_t i, std::size_t n);

// Atom(0): the zero function in dimension n.
LatticeExpr zero_expr(std::size_t n);

// f_+ = f \/ 0 and f_- = (-f) \/ 0.
LatticeExpr pos_part(const LatticeExpr& f);
LatticeExpr neg_part(const LatticeExpr& f);

LatticeExpr join(const LatticeExpr& a, const LatticeExpr& b);
LatticeExpr meet(const LatticeExpr& a, const LatticeExpr& b);
LatticeExpr modulus(const LatticeExpr& f);

LatticeExpr operator+(const LatticeExpr& a, const LatticeExpr& b);
LatticeExpr operator-(const LatticeExpr& a, const LatticeExpr& b);
LatticeExpr operator-(const LatticeExpr& f);
LatticeExpr operator*(double c, const LatticeExpr& f);

// sum_i lambda_i |delta_{e_i}| in dimension lambda.size().
LatticeExpr moduli_combination(std::span<const double> lambda);

}  // namespace fblnorm

#endif  // FBLNORM_LATTICE_EXPR_HPP_
