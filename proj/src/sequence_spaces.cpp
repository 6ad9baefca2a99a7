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

#include "fblnorm/sequence_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fblnorm/error.hpp"
#include "fblnorm/text.hpp"

namespace fblnorm {

Exponent::Exponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw Error(ErrorKind::kConfig,
                "exponent must satisfy p >= 1, got " + format_number(p));
  }
  if (std::isinf(p)) {
    infinite_ = true;
    p_ = 0.0;
  } else {
    p_ = p;
  }
}

Exponent Exponent::infinity() noexcept { return Exponent(0.0, true); }

double Exponent::value() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : p_;
}

Exponent parse_exponent(std::string_view text) {
  const std::string_view t = trim(text);
  if (t == "inf" || t == "Inf" || t == "INF" || t == "infinity") {
    return Exponent::infinity();
  }
  auto value = parse_number(t);
  if (!value) {
    throw Error(ErrorKind::kInput,
                "exponent must be a decimal number or 'inf', got '" +
                    std::string(t) + "'");
  }
  return Exponent(*value);
}

std::string to_string(const Exponent& p) {
  return p.is_infinite() ? "inf" : format_number(p.value());
}

SpaceSpec::SpaceSpec(std::size_t dim, Exponent exponent)
    : n(dim), p(exponent) {
  if (n == 0) {
    throw Error(ErrorKind::kConfig, "space dimension must be at least 1");
  }
}

double norm(std::span<const double> x, const Exponent& p) {
  std::vector<double> mags(x.size());
  std::transform(x.begin(), x.end(), mags.begin(),
                 [](double v) { return std::abs(v); });
  if (p.is_infinite()) {
    return mags.empty() ? 0.0 : *std::max_element(mags.begin(), mags.end());
  }
  std::sort(mags.begin(), mags.end());
  const double exponent = p.value();
  double total = 0.0;
  if (exponent == 1.0) {
    for (double m : mags) total += m;
    return total;
  }
  if (exponent == 2.0) {
    for (double m : mags) total += m * m;
    return std::sqrt(total);
  }
  for (double m : mags) total += std::pow(m, exponent);
  return std::pow(total, 1.0 / exponent);
}

Exponent dual_exponent(const Exponent& p) {
  if (p.is_infinite()) return Exponent(1.0);
  const double value = p.value();
  if (value == 1.0) return Exponent::infinity();
  return Exponent(value / (value - 1.0));
}

double ell_r_exponent(const Exponent& p) {
  if (p.is_infinite()) return 2.0;
  const double value = p.value();
  if (value <= 2.0) {
    throw Error(ErrorKind::kDomain,
                "the l_r exponent requires p > 2, got p = " +
                    format_number(value));
  }
  return 2.0 * value / (value + 2.0);
}

}  // namespace fblnorm
