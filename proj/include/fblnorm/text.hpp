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

#ifndef FBLNORM_TEXT_HPP_
#define FBLNORM_TEXT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fblnorm {

// Shortest decimal rendering that round-trips to the same double.
std::string format_number(double value);

// Strict decimal parse of the whole (trimmed) string; nullopt on failure.
std::optional<double> parse_number(std::string_view text);

// "1, 2.5,3" -> {1, 2.5, 3}; surrounding brackets are accepted.
// Throws Error(kInput) naming the offending item.
std::vector<double> parse_number_list(std::string_view text);

std::string_view trim(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);

std::string join_numbers(const std::vector<double>& values,
                         std::string_view sep = ",");

}  // namespace fblnorm

#endif  // FBLNORM_TEXT_HPP_
