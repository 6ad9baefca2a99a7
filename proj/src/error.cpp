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

#include "fblnorm/error.hpp"

namespace fblnorm {

namespace {

std::string dimension_message(std::size_t expected, std::size_t actual,
                              const std::string& context) {
  std::string msg = "dimension mismatch: expected length " +
                    std::to_string(expected) + ", got length " +
                    std::to_string(actual);
  if (!context.empty()) msg += " (" + context + ")";
  return msg;
}

std::string parse_message(std::size_t line, std::size_t column,
                          const std::string& expected,
                          const std::string& found) {
  return "syntax error at line " + std::to_string(line) + ", column " +
         std::to_string(column) + ": expected " + expected + ", found " +
         found;
}

}  // namespace

DimensionError::DimensionError(std::size_t expected, std::size_t actual,
                               const std::string& context)
    : Error(ErrorKind::kDimension, dimension_message(expected, actual, context)),
      expected_(expected),
      actual_(actual) {}

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& expected, const std::string& found)
    : Error(ErrorKind::kParse, parse_message(line, column, expected, found)),
      line_(line),
      column_(column),
      expected_(expected) {}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kDomain:
    case ErrorKind::kCapacity:
    case ErrorKind::kDegenerate:
      return 3;
    case ErrorKind::kInput:
    case ErrorKind::kParse:
    case ErrorKind::kDimension:
    case ErrorKind::kIndex:
    case ErrorKind::kConfig:
      return 2;
  }
  return 2;
}

}  // namespace fblnorm
