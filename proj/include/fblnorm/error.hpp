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

#ifndef FBLNORM_ERROR_HPP_
#define FBLNORM_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fblnorm {

enum class ErrorKind {
  kInput,       // malformed user input (spec files, CLI values)
  kParse,       // expression syntax
  kDimension,   // vector length mismatch
  kIndex,       // generator index out of range
  kConfig,      // invalid configuration value
  kDomain,      // operation undefined for the requested exponent
  kCapacity,    // exact computation would exceed the enumeration cap
  kDegenerate,  // zero coefficients / zero constraint
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DimensionError : public Error {
 public:
  DimensionError(std::size_t expected, std::size_t actual,
                 const std::string& context = {});

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& expected,
             const std::string& found);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

// CLI exit-code contract: 2 for input problems, 3 for capacity/domain.
int exit_code_for(ErrorKind kind) noexcept;

}  // namespace fblnorm

#endif  // FBLNORM_ERROR_HPP_
