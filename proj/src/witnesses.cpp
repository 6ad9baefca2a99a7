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

#include "fblnorm/witnesses.hpp"

#include <algorithm>
#include <cmath>

#include "fblnorm/constraint.hpp"
#include "fblnorm/engine.hpp"
#include "fblnorm/error.hpp"
#include "fblnorm/lattice_expr.hpp"
#include "fblnorm/tolerance.hpp"

namespace fblnorm {

namespace {

constexpr unsigned kDenseOrderLimit = 12;

bool above_two(const Exponent& p) {
  return p.is_infinite() || p.value() > 2.0;
}

void check_lambda(const std::vector<double>& lambda, const SpaceSpec& space) {
  if (lambda.size() > space.n) {
    throw DimensionError(space.n, lambda.size(), "coefficients versus space dimension");
  }
  const bool all_zero =
      std::all_of(lambda.begin(), lambda.end(), [](double v) { return v == 0.0; });
  if (all_zero) {
    throw Error(ErrorKind::kDegenerate, "coefficient vector is zero");
  }
  for (double v : lambda) {
    if (!std::isfinite(v)) throw Error(ErrorKind::kConfig, "coefficients must be finite");
  }
}

std::vector<double> extended(const std::vector<double>& lambda, std::size_t n) {
  std::vector<double> out = lambda;
  out.resize(n, 0.0);
  return out;
}

// Drops trailing zeros so witnesses are not padded beyond the support.
std::vector<double> trimmed(std::vector<double> lambda) {
  while (!lambda.empty() && lambda.back() == 0.0) lambda.pop_back();
  return lambda;
}

}  // namespace

WalshMatrix::WalshMatrix(unsigned k) : k_(k) {
  if (k > kMaxOrder) {
    throw Error(ErrorKind::kCapacity,
                "Walsh order " + std::to_string(k) + " exceeds the limit of " +
                    std::to_string(kMaxOrder));
  }
}

std::vector<std::vector<int>> WalshMatrix::rows() const {
  if (k_ > kDenseOrderLimit) {
    throw Error(ErrorKind::kCapacity, "dense Walsh matrices are limited to order " +
                                          std::to_string(kDenseOrderLimit));
  }
  std::vector<std::vector<int>> h{{1}};
  for (unsigned level = 0; level < k_; ++level) {
    const std::size_t half = h.size();
    std::vector<std::vector<int>> next(2 * half, std::vector<int>(2 * half));
    for (std::size_t i = 0; i < half; ++i) {
      for (std::size_t j = 0; j < half; ++j) {
        next[i][j] = h[i][j];
        next[i][j + half] = h[i][j];
        next[i + half][j] = h[i][j];
        next[i + half][j + half] = -h[i][j];
      }
    }
    h = std::move(next);
  }
  return h;
}

WalshMatrix walsh_matrix(unsigned k) { return WalshMatrix(k); }

std::string walsh_csv(const WalshMatrix& w) {
  std::string out;
  for (const auto& row : w.rows()) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out += ',';
      out += row[j] > 0 ? "1" : "-1";
    }
    out += '\n';
  }
  return out;
}

FunctionalFamily walsh_witness(const std::vector<double>& lambda,
                               const SpaceSpec& space) {
  if (!above_two(space.p)) {
    throw Error(ErrorKind::kDomain, "the Walsh witness requires p > 2, got p = " +
                                        to_string(space.p));
  }
  check_lambda(lambda, space);

  const unsigned k = static_cast<unsigned>(std::bit_width(lambda.size() - 1));
  const WalshMatrix w(k);
  const std::size_t m = w.size();
  const double r = ell_r_exponent(space.p);
  const double scale = std::pow(norm(lambda, Exponent(r)), r - 1.0);

  std::vector<double> weight(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    weight[i] = lambda[i] == 0.0 ? 0.0 : std::pow(std::abs(lambda[i]), r - 1.0) / scale;
  }

  std::vector<double> flat(m * space.n, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      flat[j * space.n + i] = weight[i] * w(i, j) / static_cast<double>(m);
    }
  }
  return FunctionalFamily(space, m, std::move(flat));
}

FunctionalFamily allsign_witness(const std::vector<double>& lambda,
                                 const SpaceSpec& space) {
  if (above_two(space.p)) {
    throw Error(ErrorKind::kDomain, "the all-sign witness requires p <= 2, got p = " +
                                        to_string(space.p));
  }
  check_lambda(lambda, space);

  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] != 0.0) support.push_back(i);
  }
  if (support.size() > WalshMatrix::kMaxOrder) {
    throw Error(ErrorKind::kCapacity,
                "all-sign witness over " + std::to_string(support.size()) +
                    " coordinates exceeds 2^" + std::to_string(WalshMatrix::kMaxOrder) +
                    " functionals");
  }

  const std::size_t count = std::size_t{1} << support.size();
  const double entry = 1.0 / static_cast<double>(count);
  std::vector<double> flat(count * space.n, 0.0);
  for (std::size_t s = 0; s < count; ++s) {
    for (std::size_t b = 0; b < support.size(); ++b) {
      flat[s * space.n + support[b]] = ((s >> b) & 1U) ? -entry : entry;
    }
  }
  return FunctionalFamily(space, count, std::move(flat));
}

double grothendieck_constant(std::optional<double> configured) {
  if (!configured) return kKrivineBound;
  if (!std::isfinite(*configured) || *configured < 1.0) {
    throw Error(ErrorKind::kConfig, "Grothendieck constant must be a finite value >= 1");
  }
  return *configured;
}

double krivine_upper(const std::vector<double>& lambda, const SpaceSpec& space,
                     std::optional<double> grothendieck) {
  const double r = ell_r_exponent(space.p);
  return grothendieck_constant(grothendieck) * norm(lambda, Exponent(r));
}

double triangle_upper(const std::vector<double>& lambda) {
  return norm(lambda, Exponent(1.0));
}

BoundCertificate certify_moduli_norm(const std::vector<double>& lambda,
                                     const SpaceSpec& space,
                                     const CertifyOptions& options) {
  if (lambda.empty()) throw Error(ErrorKind::kDegenerate, "coefficient vector is empty");
  check_lambda(lambda, space);
  const double kg = grothendieck_constant(options.grothendieck);
  const bool high = above_two(space.p);
  const std::vector<double> full = extended(lambda, space.n);
  const LatticeExpr f = moduli_combination(full);

  // The witness objective equals the target norm only on a one-signed
  // coefficient vector, so mixed signs also try each sign class alone.
  std::vector<std::vector<double>> classes{trimmed(full)};
  const bool has_pos = std::any_of(full.begin(), full.end(), [](double v) { return v > 0; });
  const bool has_neg = std::any_of(full.begin(), full.end(), [](double v) { return v < 0; });
  if (has_pos && has_neg) {
    std::vector<double> pos(full.size(), 0.0);
    std::vector<double> neg(full.size(), 0.0);
    for (std::size_t i = 0; i < full.size(); ++i) (full[i] > 0 ? pos : neg)[i] = full[i];
    classes.push_back(trimmed(std::move(pos)));
    classes.push_back(trimmed(std::move(neg)));
  }

  const ConstraintOptions constraint{options.enumeration_cap, options.threads,
                                     ConstraintRoute::kAuto};
  const Exponent target_exponent(high ? ell_r_exponent(space.p) : 1.0);
  std::optional<FunctionalFamily> best;
  double best_value = -1.0;
  bool best_certified = false;
  for (const auto& coeffs : classes) {
    const FunctionalFamily w =
        high ? walsh_witness(coeffs, space) : allsign_witness(coeffs, space);
    double value = objective(f, w);
    bool certified = false;
    std::optional<FunctionalFamily> feasible;
    try {
      const double c = constraint_norm_exact(w, constraint);
      certified = true;
      if (c > 1.0) {
        value /= c;
        feasible = w.scaled(1.0 / c);
      } else {
        feasible = w;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kCapacity) throw;
      // Too large to enumerate: the analytic argument still gives
      // constraint <= 1, but the bound is reported uncertified.
      feasible = w;
    }
    // On one-signed coefficients the objective is the closed-form norm up to
    // rounding; report the closed form, which is symmetric in lambda.
    const bool one_signed =
        std::all_of(coeffs.begin(), coeffs.end(), [](double v) { return v >= 0; }) ||
        std::all_of(coeffs.begin(), coeffs.end(), [](double v) { return v <= 0; });
    if (one_signed) {
      const double closed = norm(coeffs, target_exponent);
      if (std::abs(value - closed) <= kCertificationSlack * (1.0 + closed)) value = closed;
    }
    const bool better = certified != best_certified ? certified : value > best_value;
    if (!best || better) {
      best = std::move(feasible);
      best_value = value;
      best_certified = certified;
    }
  }

  const std::optional<double> r =
      high ? std::optional<double>(ell_r_exponent(space.p)) : std::nullopt;
  const double upper = high ? krivine_upper(full, space, kg) : triangle_upper(full);
  BoundCertificate cert{lambda, space, r, best_value, upper, best_certified, *best, {}};
  cert.provenance.push_back(high ? "walsh-witness" : "allsign-witness");
  cert.provenance.push_back(best_certified ? "exact-constraint" : "analytic-feasibility");
  if (classes.size() > 1) cert.provenance.push_back("sign-class-split");
  cert.provenance.push_back(high ? "krivine-upper" : "triangle-upper");
  return cert;
}

}  // namespace fblnorm
