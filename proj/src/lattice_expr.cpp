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

#include "fblnorm/lattice_expr.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "fblnorm/error.hpp"
#include "fblnorm/text.hpp"

namespace fblnorm {

struct LatticeExpr::Node {
  Kind kind;
  std::size_t dim;
  std::size_t count;
  std::vector<double> coeffs;  // kAtom
  double c = 0.0;              // kScale
  std::optional<LatticeExpr> a;
  std::optional<LatticeExpr> b;
};

namespace {

void require_same_dimension(const LatticeExpr& l, const LatticeExpr& r) {
  if (l.dimension() != r.dimension()) {
    throw DimensionError(l.dimension(), r.dimension(),
                         "operands of a lattice expression");
  }
}

}  // namespace

LatticeExpr LatticeExpr::atom(std::vector<double> x) {
  if (x.empty()) {
    throw Error(ErrorKind::kConfig, "atom vector must be non-empty");
  }
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::kConfig, "atom entries must be finite, got " +
                                          format_number(v));
    }
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::kAtom;
  node->dim = x.size();
  node->count = 1;
  node->coeffs = std::move(x);
  return LatticeExpr(std::move(node));
}

LatticeExpr LatticeExpr::scale(double c, const LatticeExpr& child) {
  if (!std::isfinite(c)) {
    throw Error(ErrorKind::kConfig,
                "scale factor must be finite, got " + format_number(c));
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::kScale;
  node->dim = child.dimension();
  node->count = child.size() + 1;
  node->c = c;
  node->a = child;
  return LatticeExpr(std::move(node));
}

namespace {

template <typename NodeT, typename Expr>
std::shared_ptr<NodeT> binary_node(typename Expr::Kind kind, const Expr& l,
                                   const Expr& r) {
  require_same_dimension(l, r);
  auto node = std::make_shared<NodeT>();
  node->kind = kind;
  node->dim = l.dimension();
  node->count = l.size() + r.size() + 1;
  node->a = l;
  node->b = r;
  return node;
}

}  // namespace

LatticeExpr LatticeExpr::sum(const LatticeExpr& left,
                             const LatticeExpr& right) {
  return LatticeExpr(binary_node<Node>(Kind::kSum, left, right));
}

LatticeExpr LatticeExpr::join(const LatticeExpr& left,
                              const LatticeExpr& right) {
  return LatticeExpr(binary_node<Node>(Kind::kJoin, left, right));
}

LatticeExpr LatticeExpr::meet(const LatticeExpr& left,
                              const LatticeExpr& right) {
  return LatticeExpr(binary_node<Node>(Kind::kMeet, left, right));
}

LatticeExpr LatticeExpr::abs(const LatticeExpr& child) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kAbs;
  node->dim = child.dimension();
  node->count = child.size() + 1;
  node->a = child;
  return LatticeExpr(std::move(node));
}

LatticeExpr::Kind LatticeExpr::kind() const noexcept { return node_->kind; }

std::size_t LatticeExpr::dimension() const noexcept { return node_->dim; }

std::size_t LatticeExpr::size() const noexcept { return node_->count; }

std::span<const double> LatticeExpr::atom_vector() const {
  if (node_->kind != Kind::kAtom) {
    throw std::logic_error("atom_vector() on a non-atom node");
  }
  return node_->coeffs;
}

double LatticeExpr::scalar() const {
  if (node_->kind != Kind::kScale) {
    throw std::logic_error("scalar() on a non-scale node");
  }
  return node_->c;
}

const LatticeExpr& LatticeExpr::child() const {
  if (node_->kind != Kind::kScale && node_->kind != Kind::kAbs) {
    throw std::logic_error("child() on a node without a single child");
  }
  return *node_->a;
}

const LatticeExpr& LatticeExpr::left() const {
  if (!node_->b) throw std::logic_error("left() on a non-binary node");
  return *node_->a;
}

const LatticeExpr& LatticeExpr::right() const {
  if (!node_->b) throw std::logic_error("right() on a non-binary node");
  return *node_->b;
}

double LatticeExpr::evaluate(std::span<const double> xstar) const {
  if (xstar.size() != node_->dim) {
    throw DimensionError(node_->dim, xstar.size(),
                         "evaluation point vs. expression");
  }
  return eval_unchecked(xstar);
}

double LatticeExpr::eval_unchecked(std::span<const double> xstar) const {
  const Node& node = *node_;
  switch (node.kind) {
    case Kind::kAtom: {
      double total = 0.0;
      for (std::size_t i = 0; i < node.dim; ++i) {
        total += xstar[i] * node.coeffs[i];
      }
      return total;
    }
    case Kind::kScale:
      return node.c * node.a->eval_unchecked(xstar);
    case Kind::kSum:
      return node.a->eval_unchecked(xstar) + node.b->eval_unchecked(xstar);
    case Kind::kJoin:
      return std::max(node.a->eval_unchecked(xstar),
                      node.b->eval_unchecked(xstar));
    case Kind::kMeet:
      return std::min(node.a->eval_unchecked(xstar),
                      node.b->eval_unchecked(xstar));
    case Kind::kAbs:
      return std::abs(node.a->eval_unchecked(xstar));
  }
  return 0.0;
}

double evaluate(const LatticeExpr& f, std::span<const double> xstar) {
  return f.evaluate(xstar);
}

LatticeExpr generator(std::size_t i, std::size_t n) {
  if (i < 1 || i > n) {
    throw Error(ErrorKind::kIndex, "generator index " + std::to_string(i) +
                                       " out of range 1.." +
                                       std::to_string(n));
  }
  std::vector<double> e(n, 0.0);
  e[i - 1] = 1.0;
  return LatticeExpr::atom(std::move(e));
}

LatticeExpr zero_expr(std::size_t n) {
  return LatticeExpr::atom(std::vector<double>(n, 0.0));
}

LatticeExpr pos_part(const LatticeExpr& f) {
  return LatticeExpr::join(f, zero_expr(f.dimension()));
}

LatticeExpr neg_part(const LatticeExpr& f) {
  return LatticeExpr::join(LatticeExpr::scale(-1.0, f),
                           zero_expr(f.dimension()));
}

LatticeExpr join(const LatticeExpr& a, const LatticeExpr& b) {
  return LatticeExpr::join(a, b);
}

LatticeExpr meet(const LatticeExpr& a, const LatticeExpr& b) {
  return LatticeExpr::meet(a, b);
}

LatticeExpr modulus(const LatticeExpr& f) { return LatticeExpr::abs(f); }

LatticeExpr operator+(const LatticeExpr& a, const LatticeExpr& b) {
  return LatticeExpr::sum(a, b);
}

LatticeExpr operator-(const LatticeExpr& a, const LatticeExpr& b) {
  return LatticeExpr::sum(a, LatticeExpr::scale(-1.0, b));
}

LatticeExpr operator-(const LatticeExpr& f) {
  return LatticeExpr::scale(-1.0, f);
}

LatticeExpr operator*(double c, const LatticeExpr& f) {
  return LatticeExpr::scale(c, f);
}

LatticeExpr moduli_combination(std::span<const double> lambda) {
  if (lambda.empty()) {
    throw Error(ErrorKind::kConfig, "coefficient vector must be non-empty");
  }
  const std::size_t n = lambda.size();
  auto term = [&](std::size_t i) {
    LatticeExpr t = LatticeExpr::abs(generator(i + 1, n));
    return lambda[i] == 1.0 ? t : LatticeExpr::scale(lambda[i], t);
  };
  LatticeExpr total = term(0);
  for (std::size_t i = 1; i < n; ++i) total = LatticeExpr::sum(total, term(i));
  return total;
}

}  // namespace fblnorm
