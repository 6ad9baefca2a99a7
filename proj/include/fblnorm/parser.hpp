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

#ifndef FBLNORM_PARSER_HPP_
#define FBLNORM_PARSER_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "fblnorm/lattice_expr.hpp"

namespace fblnorm {

// Grammar (whitespace-insensitive):
//
//   lattice := additive (("\/" | "/\") additive)*      left-associative
//   additive:= term (("+" | "-") term)*
//   term    := unary ("*" unary)*                      one non-numeric factor
//   unary   := "-" unary | factor
//   factor  := number | atom | "(" lattice ")"
//            | ("abs" | "pos" | "neg") "(" lattice ")"
//   atom    := "d(e" integer ")" | "d([" number ("," number)* "])"
//
// d(e_i) atoms take their dimension from `dimension` when given, otherwise
// from the explicit vector atoms, otherwise from the largest index used.
//
// Throws ParseError (line/column + expected token) on syntax errors and
// DimensionError when atoms disagree on the dimension.
LatticeExpr parse(std::string_view text,
                  std::optional<std::size_t> dimension = std::nullopt);

// Fully parenthesized rendering; parse(format(f), f.dimension()) evaluates
// identically to f.
std::string format(const LatticeExpr& f);

}  // namespace fblnorm

#endif  // FBLNORM_PARSER_HPP_
