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

#include "fblnorm/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <map>
#include <set>

#include "fblnorm/error.hpp"
#include "fblnorm/lattice_expr.hpp"
#include "fblnorm/parallel.hpp"
#include "fblnorm/random.hpp"
#include "fblnorm/text.hpp"
#include "fblnorm/witnesses.hpp"

namespace fblnorm {

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "name",
    "p",
    "n",
    "lambda.ones",
    "lambda.explicit",
    "lambda.random.count",
    "lambda.random.lengths",
    "lambda.random.seed",
    "family_sizes",
    "optimizer.seed",
    "optimizer.restarts",
    "optimizer.iterations",
    "optimizer.initial_step",
    "optimizer.step_decay",
    "optimizer.enumeration_cap",
    "optimizer.samples",
    "grothendieck",
    "output",
};

struct Entry {
  std::string value;
  std::size_t line;
};

[[noreturn]] void fail(std::size_t line, std::string_view key, const std::string& what) {
  std::string msg;
  if (line > 0) msg = "line " + std::to_string(line) + ": ";
  msg += std::string(key) + ": " + what;
  throw Error(ErrorKind::kInput, msg);
}

class Fields {
 public:
  explicit Fields(std::map<std::string, Entry, std::less<>> entries)
      : entries_(std::move(entries)) {}

  bool has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

  const Entry* get(std::string_view key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::uint64_t integer(std::string_view key, std::uint64_t fallback, std::uint64_t min = 0) const {
    const Entry* e = get(key);
    if (!e) return fallback;
    return parse_integer(*e, key, min);
  }

  double real(std::string_view key, double fallback) const {
    const Entry* e = get(key);
    if (!e) return fallback;
    auto v = parse_number(e->value);
    if (!v) fail(e->line, key, "expected a number, found '" + e->value + "'");
    return *v;
  }

  std::vector<std::uint64_t> integers(std::string_view key, std::uint64_t min) const {
    const Entry* e = get(key);
    if (!e) return {};
    std::vector<std::uint64_t> out;
    for (auto item : split(e->value, ',')) {
      out.push_back(parse_integer({std::string(trim(item)), e->line}, key, min));
    }
    return out;
  }

  static std::uint64_t parse_integer(const Entry& e, std::string_view key, std::uint64_t min) {
    const std::string_view t = trim(e.value);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
      fail(e.line, key, "expected a non-negative integer, found '" + std::string(t) + "'");
    }
    if (v < min) {
      fail(e.line, key, "value " + std::to_string(v) + " is below the minimum " +
                            std::to_string(min));
    }
    return v;
  }

 private:
  std::map<std::string, Entry, std::less<>> entries_;
};

std::vector<double> checked_lambda(std::vector<double> lambda, std::size_t line,
                                   std::string_view key, std::size_t index) {
  const std::string which = "vector " + std::to_string(index + 1);
  if (lambda.empty()) fail(line, key, which + " is empty");
  if (std::all_of(lambda.begin(), lambda.end(), [](double v) { return v == 0.0; })) {
    fail(line, key, which + " is zero");
  }
  return lambda;
}

std::string join_tags(const std::vector<std::string>& tags) {
  std::string out;
  for (const auto& t : tags) {
    if (!out.empty()) out += '+';
    out += t;
  }
  return out;
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

}  // namespace

ExperimentSpec parse_experiment_spec(std::string_view text) {
  std::map<std::string, Entry, std::less<>> entries;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(line_no, trim(line), "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!kKnownKeys.count(key)) fail(line_no, key, "unknown key");
    if (entries.count(key)) fail(line_no, key, "duplicate key");
    if (value.empty()) fail(line_no, key, "empty value");
    entries.emplace(key, Entry{value, line_no});
  }
  const Fields fields(std::move(entries));

  ExperimentSpec spec;
  if (const Entry* e = fields.get("name")) spec.name = e->value;
  if (spec.name.find_first_of(",\"\n") != std::string::npos) {
    fail(fields.get("name")->line, "name", "must not contain commas or quotes");
  }

  if (const Entry* e = fields.get("p")) {
    for (auto item : split(e->value, ',')) {
      try {
        spec.exponents.push_back(parse_exponent(item));
      } catch (const Error& err) {
        fail(e->line, "p", err.what());
      }
    }
  }
  if (spec.exponents.empty()) fail(0, "p", "grid is empty");

  if (fields.has("n")) spec.dimension = fields.integer("n", 0, 1);

  for (auto len : fields.integers("lambda.ones", 1)) {
    spec.lambdas.push_back(std::vector<double>(len, 1.0));
  }
  if (const Entry* e = fields.get("lambda.explicit")) {
    std::size_t index = 0;
    for (auto item : split(e->value, ';')) {
      std::vector<double> lambda;
      try {
        lambda = parse_number_list(item);
      } catch (const Error& err) {
        fail(e->line, "lambda.explicit", err.what());
      }
      spec.lambdas.push_back(checked_lambda(std::move(lambda), e->line, "lambda.explicit", index++));
    }
  }
  if (fields.has("lambda.random.count") || fields.has("lambda.random.lengths")) {
    const Entry* count_entry = fields.get("lambda.random.count");
    if (!count_entry) fail(0, "lambda.random.count", "required with lambda.random.lengths");
    if (!fields.has("lambda.random.lengths")) {
      fail(count_entry->line, "lambda.random.lengths", "required with lambda.random.count");
    }
    if (!fields.has("lambda.random.seed")) {
      fail(count_entry->line, "lambda.random.seed", "random coefficients need an explicit seed");
    }
    const std::uint64_t count = fields.integer("lambda.random.count", 0, 1);
    const std::uint64_t seed = fields.integer("lambda.random.seed", 0);
    for (auto len : fields.integers("lambda.random.lengths", 1)) {
      for (std::uint64_t c = 0; c < count; ++c) {
        Rng rng(mix_seed(seed, {len, c}));
        spec.lambdas.push_back(random_lambda(rng, len));
      }
    }
  }
  if (spec.lambdas.empty()) {
    fail(0, "lambda", "grid is empty (give lambda.ones, lambda.explicit or lambda.random.*)");
  }
  if (spec.dimension) {
    for (const auto& lambda : spec.lambdas) {
      if (lambda.size() > *spec.dimension) {
        fail(fields.get("n")->line, "n",
             "dimension " + std::to_string(*spec.dimension) + " is smaller than a " +
                 std::to_string(lambda.size()) + "-term coefficient vector");
      }
    }
  }

  for (auto size : fields.integers("family_sizes", 1)) spec.family_sizes.push_back(size);
  if (!spec.family_sizes.empty() && !fields.has("optimizer.seed")) {
    fail(fields.get("family_sizes")->line, "optimizer.seed",
         "the optimizer needs an explicit seed");
  }
  OptimizerConfig& opt = spec.optimizer;
  opt.seed = fields.integer("optimizer.seed", opt.seed);
  opt.restarts = fields.integer("optimizer.restarts", opt.restarts);
  opt.iterations = fields.integer("optimizer.iterations", opt.iterations);
  opt.initial_step = fields.real("optimizer.initial_step", opt.initial_step);
  opt.step_decay = fields.real("optimizer.step_decay", opt.step_decay);
  opt.enumeration_cap = fields.integer("optimizer.enumeration_cap", opt.enumeration_cap, 1);
  opt.samples = fields.integer("optimizer.samples", opt.samples);
  if (!(opt.initial_step > 0.0)) {
    fail(fields.get("optimizer.initial_step")->line, "optimizer.initial_step", "must be positive");
  }
  if (!(opt.step_decay > 0.0 && opt.step_decay <= 1.0)) {
    fail(fields.get("optimizer.step_decay")->line, "optimizer.step_decay", "must lie in (0, 1]");
  }
  if (const Entry* e = fields.get("grothendieck")) {
    try {
      opt.grothendieck = grothendieck_constant(fields.real("grothendieck", 0.0));
    } catch (const Error& err) {
      fail(e->line, "grothendieck", err.what());
    }
  }
  if (const Entry* e = fields.get("output")) spec.output = e->value;
  return spec;
}

std::vector<ReportRow> run_experiment(const ExperimentSpec& spec,
                                      const ScanOptions& options) {
  struct Cell {
    const Exponent* p;
    const std::vector<double>* lambda;
    std::size_t family_size;  // 0 = closed-form certificate
  };
  std::vector<Cell> cells;
  const std::vector<std::size_t> sizes =
      spec.family_sizes.empty() ? std::vector<std::size_t>{0} : spec.family_sizes;
  for (const auto& p : spec.exponents) {
    for (const auto& lambda : spec.lambdas) {
      for (std::size_t size : sizes) cells.push_back({&p, &lambda, size});
    }
  }

  std::vector<std::optional<ReportRow>> rows(cells.size());
  parallel_for(cells.size(), resolve_threads(options.threads), [&](std::size_t c) {
    const auto started = std::chrono::steady_clock::now();
    const Cell& cell = cells[c];
    const std::vector<double>& lambda = *cell.lambda;
    const SpaceSpec space(spec.dimension.value_or(lambda.size()), *cell.p);
    const bool high = cell.p->is_infinite() || cell.p->value() > 2.0;

    ReportRow row;
    row.experiment = spec.name;
    row.p = *cell.p;
    row.n = space.n;
    row.m = lambda.size();
    row.lambda = lambda_digest(lambda);
    if (high) row.r = ell_r_exponent(*cell.p);
    if (cell.family_size == 0) {
      const BoundCertificate cert = certify_moduli_norm(
          lambda, space, {spec.optimizer.grothendieck, spec.optimizer.enumeration_cap, 1});
      row.lower = cert.lower;
      row.upper = cert.upper;
      row.certified = cert.certified;
      row.method = join_tags(cert.provenance);
    } else {
      std::vector<double> full = lambda;
      full.resize(space.n, 0.0);
      OptimizerConfig config = spec.optimizer;
      config.threads = 1;
      const NormEstimate est =
          optimize_family(moduli_combination(full), space, cell.family_size, config);
      row.lower = est.lower;
      row.upper = est.upper;
      row.certified = est.certified;
      std::vector<std::string> tags{"family-size=" + std::to_string(cell.family_size)};
      tags.insert(tags.end(), est.method.begin(), est.method.end());
      row.method = join_tags(tags);
    }
    if (options.timing) {
      row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         started)
                   .count();
    }
    rows[c] = std::move(row);
  });

  std::vector<ReportRow> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(std::move(*r));
  return out;
}

std::string lambda_digest(const std::vector<double>& lambda) {
  const std::string full = join_numbers(lambda, ",");
  if (lambda.size() <= 16) return full;
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : full) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
  return std::string("fnv1a=") + hex + ";l1=" + format_number(norm(lambda, Exponent(1.0))) +
         ";l2=" + format_number(norm(lambda, Exponent(2.0))) +
         ";linf=" + format_number(norm(lambda, Exponent::infinity()));
}

std::string render_csv(const std::vector<ReportRow>& rows,
                       const std::optional<std::string>& comment) {
  std::string out;
  if (comment) out += "# " + *comment + "\n";
  out += kCsvHeader;
  out += '\n';
  for (const auto& row : rows) {
    out += row.experiment + ',' + to_string(row.p) + ',' + std::to_string(row.n) + ',' +
           std::to_string(row.m) + ",\"" + row.lambda + "\"," + optional_number(row.r) + ',' +
           format_number(row.lower) + ',' + optional_number(row.upper) + ',' +
           (row.certified ? "true" : "false") + ',' + row.method + ',' +
           optional_number(row.ms) + '\n';
  }
  return out;
}

}  // namespace fblnorm
