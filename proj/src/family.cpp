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

#include "fblnorm/family.hpp"

#include <cmath>
#include <string>

#include "fblnorm/error.hpp"

namespace fblnorm {

namespace {

void check_entries(const std::vector<double>& flat) {
  for (double v : flat) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::kConfig, "family entries must be finite");
    }
  }
}

}  // namespace

FunctionalFamily::FunctionalFamily(SpaceSpec space,
                                   const std::vector<std::vector<double>>& rows)
    : space_(space), count_(rows.size()) {
  if (rows.empty()) {
    throw Error(ErrorKind::kConfig, "a functional family needs at least one vector");
  }
  flat_.reserve(rows.size() * space_.n);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].size() != space_.n) {
      throw DimensionError(space_.n, rows[k].size(),
                           "functional " + std::to_string(k + 1));
    }
    flat_.insert(flat_.end(), rows[k].begin(), rows[k].end());
  }
  check_entries(flat_);
}

FunctionalFamily::FunctionalFamily(SpaceSpec space, std::size_t count,
                                   std::vector<double> flat)
    : space_(space), count_(count), flat_(std::move(flat)) {
  if (count_ == 0) {
    throw Error(ErrorKind::kConfig, "a functional family needs at least one vector");
  }
  if (flat_.size() != count_ * space_.n) {
    throw DimensionError(count_ * space_.n, flat_.size(), "flat family storage");
  }
  check_entries(flat_);
}

FunctionalFamily FunctionalFamily::negated() const {
  std::vector<double> flat(flat_.size());
  for (std::size_t j = 0; j < flat_.size(); ++j) flat[j] = -flat_[j];
  return FunctionalFamily(space_, count_, std::move(flat));
}

FunctionalFamily FunctionalFamily::scaled(double c) const {
  std::vector<double> flat(flat_.size());
  for (std::size_t j = 0; j < flat_.size(); ++j) flat[j] = c * flat_[j];
  return FunctionalFamily(space_, count_, std::move(flat));
}

FunctionalFamily FunctionalFamily::padded(std::size_t count) const {
  if (count <= count_) return *this;
  std::vector<double> flat = flat_;
  flat.resize(count * space_.n, 0.0);
  return FunctionalFamily(space_, count, std::move(flat));
}

double FunctionalFamily::sum_of_squares() const {
  double total = 0.0;
  for (double v : flat_) total += v * v;
  return total;
}

std::vector<std::vector<double>> FunctionalFamily::rows() const {
  std::vector<std::vector<double>> out(count_);
  for (std::size_t k = 0; k < count_; ++k) {
    out[k].assign(flat_.begin() + k * space_.n,
                  flat_.begin() + (k + 1) * space_.n);
  }
  return out;
}

}  // namespace fblnorm
