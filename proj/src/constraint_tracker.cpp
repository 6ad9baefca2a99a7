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

#include "constraint_tracker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "dual_norm.hpp"
#include "fblnorm/constraint.hpp"

namespace fblnorm::internal {

namespace {

// Largest pattern table (coordinates x patterns) kept in memory.
constexpr std::size_t kMaxTableEntries = std::size_t{1} << 22;

// p = 1: max over columns of sum_k |x_{k,i}|.
class ColumnTracker final : public ConstraintTracker {
 public:
  explicit ColumnTracker(const FunctionalFamily& start)
      : flat_(start.flat().begin(), start.flat().end()),
        count_(start.size()),
        dim_(start.dimension()),
        columns_(dim_, 0.0) {
    for (std::size_t i = 0; i < dim_; ++i) columns_[i] = column(i, count_, 0.0);
  }

  double value() const override {
    return *std::max_element(columns_.begin(), columns_.end());
  }

  double propose(std::size_t k, std::size_t i, double delta) override {
    k_ = k;
    i_ = i;
    delta_ = delta;
    pending_ = column(i, k, delta);
    double best = pending_;
    for (std::size_t c = 0; c < dim_; ++c) {
      if (c != i) best = std::max(best, columns_[c]);
    }
    return best;
  }

  void commit() override {
    flat_[k_ * dim_ + i_] += delta_;
    columns_[i_] = pending_;
  }

 private:
  double column(std::size_t i, std::size_t changed, double delta) const {
    double total = 0.0;
    for (std::size_t k = 0; k < count_; ++k) {
      const double x = flat_[k * dim_ + i] + (k == changed ? delta : 0.0);
      total += std::abs(x);
    }
    return total;
  }

  std::vector<double> flat_;
  std::size_t count_;
  std::size_t dim_;
  std::vector<double> columns_;
  std::size_t k_ = 0;
  std::size_t i_ = 0;
  double delta_ = 0.0;
  double pending_ = 0.0;
};

// Keeps every signed sum S_s = sum_k s_k x_k and its dual-norm terms. A change
// of delta in coordinate i moves the accumulated terms of any pattern by at
// most B = q (A_i + |delta|)^(q-1) |delta|, where A_i bounds |S_{s,i}| over all
// patterns. Patterns whose total cannot reach the current maximum are
// skipped. A skipped pattern keeps an upper bound on its total, stored
// relative to the running sum of all committed B values so that a commit
// only touches the changed coordinate; it is recomputed when next needed.
class PatternTracker final : public ConstraintTracker {
 public:
  PatternTracker(const FunctionalFamily& start, const DualNorm& dual)
      : dual_(dual),
        count_(start.size()),
        dim_(start.dimension()),
        patterns_(std::size_t{1} << (count_ - 1)),
        sums_(dim_ * patterns_),
        terms_(dim_ * patterns_),
        bounds_(patterns_, 0.0),
        version_(patterns_, 0),
        coordinate_max_(dim_, 0.0) {
    // Per coordinate, the sums over patterns are built by doubling: patterns
    // below 2^k already hold the first k signed terms.
    for (std::size_t i = 0; i < dim_; ++i) {
      double* row = sums_.data() + i * patterns_;
      row[0] = start.at(count_ - 1, i);
      for (std::size_t k = 0; k + 1 < count_; ++k) {
        const std::size_t half = std::size_t{1} << k;
        const double x = start.at(k, i);
        for (std::size_t s = 0; s < half; ++s) {
          row[s + half] = row[s] - x;
          row[s] += x;
        }
      }
      double* term_row = terms_.data() + i * patterns_;
      double a = 0.0;
      for (std::size_t s = 0; s < patterns_; ++s) {
        a = std::max(a, std::abs(row[s]));
        term_row[s] = dual_.term(row[s]);
        bounds_[s] = dual_.combine(bounds_[s], term_row[s]);
      }
      coordinate_max_[i] = a;
    }
    current_ = *std::max_element(bounds_.begin(), bounds_.end());
  }

  double value() const override { return dual_.root(current_); }

  double propose(std::size_t k, std::size_t i, double delta) override {
    k_ = k;
    i_ = i;
    delta_ = delta;
    shift_ = shift_bound(i, delta);
    // Pattern s can matter only if its total + shift_ >= current_ - shift_.
    const double cutoff = current_ - 2.0 * shift_ - drift_;
    candidates_.clear();
    double best = 0.0;
    const double* row_sums = sums_.data() + i * patterns_;
    for (std::size_t s = 0; s < patterns_; ++s) {
      if (bounds_[s] < cutoff) continue;
      if (version_[s] != commits_) {
        refresh(s);
        if (bounds_[s] < cutoff) continue;
      }
      const double term = dual_.term(row_sums[s] + sign(k, s) * delta);
      double total;
      if (dual_.kind() == DualNorm::Kind::kMax) {
        total = term;
        for (std::size_t c = 0; c < dim_; ++c) {
          if (c != i) total = std::max(total, terms_[c * patterns_ + s]);
        }
      } else {
        total = bounds_[s] + drift_ - terms_[i * patterns_ + s] + term;
      }
      candidates_.push_back({s, term});
      best = std::max(best, total);
    }
    return dual_.root(best);
  }

  void commit() override {
    double* row = sums_.data() + i_ * patterns_;
    if (k_ + 1 == count_) {
      for (std::size_t s = 0; s < patterns_; ++s) row[s] += delta_;
    } else {
      // Sign of functional k alternates in runs of 2^k patterns.
      const std::size_t run = std::size_t{1} << k_;
      for (std::size_t base = 0; base < patterns_; base += 2 * run) {
        for (std::size_t s = base; s < base + run; ++s) row[s] += delta_;
        for (std::size_t s = base + run; s < base + 2 * run; ++s) row[s] -= delta_;
      }
    }
    double a = 0.0;
    for (std::size_t s = 0; s < patterns_; ++s) a = std::max(a, std::abs(row[s]));
    coordinate_max_[i_] = a;

    drift_ += shift_;
    ++commits_;
    current_ = 0.0;
    for (const auto& c : candidates_) {
      terms_[i_ * patterns_ + c.pattern] = c.term;
      const double total = total_of(c.pattern);
      bounds_[c.pattern] = total - drift_;
      version_[c.pattern] = commits_;
      current_ = std::max(current_, total);
    }
  }

 private:
  struct Candidate {
    std::size_t pattern;
    double term;
  };

  // Bit k of s set means sign -1; the last functional is always +1.
  double sign(std::size_t k, std::size_t s) const {
    return k + 1 < count_ && ((s >> k) & 1U) ? -1.0 : 1.0;
  }

  double shift_bound(std::size_t i, double delta) const {
    const double d = std::abs(delta);
    switch (dual_.kind()) {
      case DualNorm::Kind::kOne:
      case DualNorm::Kind::kMax:
        return d;
      case DualNorm::Kind::kTwo:
        return 2.0 * (coordinate_max_[i] + d) * d;
      case DualNorm::Kind::kPower:
        return dual_.q() * std::pow(coordinate_max_[i] + d, dual_.q() - 1.0) * d;
    }
    return std::numeric_limits<double>::infinity();
  }

  double total_of(std::size_t s) const {
    double total = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) total = dual_.combine(total, terms_[c * patterns_ + s]);
    return total;
  }

  void refresh(std::size_t s) {
    for (std::size_t c = 0; c < dim_; ++c) {
      terms_[c * patterns_ + s] = dual_.term(sums_[c * patterns_ + s]);
    }
    bounds_[s] = total_of(s) - drift_;
    version_[s] = commits_;
  }

  DualNorm dual_;
  std::size_t count_;
  std::size_t dim_;
  std::size_t patterns_;
  std::vector<double> sums_;   // coordinate-major: sums_[i * patterns_ + s]
  std::vector<double> terms_;  // dual-norm term of each sum entry
  // Upper bound on each pattern's total, minus drift_; exact when
  // version_[s] == commits_.
  std::vector<double> bounds_;
  std::vector<std::uint64_t> version_;
  std::vector<double> coordinate_max_;
  double current_ = 0.0;
  double drift_ = 0.0;
  std::uint64_t commits_ = 0;

  std::vector<Candidate> candidates_;
  std::size_t k_ = 0;
  std::size_t i_ = 0;
  double delta_ = 0.0;
  double shift_ = 0.0;
};

// Fallback: exact recomputation per proposal.
class RecomputeTracker final : public ConstraintTracker {
 public:
  RecomputeTracker(const FunctionalFamily& start, std::size_t cap)
      : family_(start), options_{cap, 1, ConstraintRoute::kAuto} {
    value_ = constraint_norm_exact(family_, options_);
  }

  double value() const override { return value_; }

  double propose(std::size_t k, std::size_t i, double delta) override {
    std::vector<double> flat(family_.flat().begin(), family_.flat().end());
    flat[k * family_.dimension() + i] += delta;
    pending_.emplace(family_.space(), family_.size(), std::move(flat));
    pending_value_ = constraint_norm_exact(*pending_, options_);
    return pending_value_;
  }

  void commit() override {
    family_ = std::move(*pending_);
    pending_.reset();
    value_ = pending_value_;
  }

 private:
  FunctionalFamily family_;
  ConstraintOptions options_;
  std::optional<FunctionalFamily> pending_;
  double value_ = 0.0;
  double pending_value_ = 0.0;
};

}  // namespace

std::unique_ptr<ConstraintTracker> make_constraint_tracker(
    const FunctionalFamily& start, std::size_t enumeration_cap) {
  const Exponent& p = start.space().p;
  if (!p.is_infinite() && p.value() == 1.0) return std::make_unique<ColumnTracker>(start);
  const std::size_t count = start.size();
  if (count <= 40 && count <= enumeration_cap &&
      start.dimension() <= (kMaxTableEntries >> (count - 1))) {
    return std::make_unique<PatternTracker>(start, DualNorm(dual_exponent(p)));
  }
  return std::make_unique<RecomputeTracker>(start, enumeration_cap);
}

}  // namespace fblnorm::internal
