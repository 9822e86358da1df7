/*
 * Copyright 2026 The permapprox Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "permapprox/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "permapprox/hermite.hpp"
#include "permapprox/parallel.hpp"
#include "permapprox/permanent.hpp"

namespace permapprox {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool same_log_complex(const std::optional<LogComplex>& a, const std::optional<LogComplex>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  if (a->is_zero() || b->is_zero()) return a->is_zero() == b->is_zero();
  return a->log_mag() == b->log_mag() && a->phase() == b->phase();
}

bool wants(const ExperimentConfig& cfg, const std::string& group) {
  return std::find(cfg.diagnostics.begin(), cfg.diagnostics.end(), group) != cfg.diagnostics.end();
}

struct Cell {
  int n;
  Complex mu;
  double eps;
  std::string dist;
};

std::vector<Cell> expand_cells(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  for (int n : cfg.n)
    for (Complex mu : cfg.mu)
      for (double eps : cfg.eps)
        for (const auto& d : cfg.dist) cells.push_back({n, mu, eps, d});
  return cells;
}

int clamp_order(std::optional<int> t, const ApproxConfig& params, int n) {
  return std::min(t.value_or(truncation_order(params, n)), n);
}

double max_scaled_dk(const ColumnStats& stats, int n, double delta) {
  double worst = 0.0;
  const int top = std::min(kDkMaxOrder, static_cast<int>(stats.d.size()) - 1);
  for (int k = 3; k <= top; ++k)
    worst = std::max(worst, std::abs(stats.d[k]) * std::pow(static_cast<double>(n), delta * k));
  return worst;
}

// Diagnostics shared by every algorithm of one trial.
std::map<std::string, double> trial_diagnostics(const ExperimentConfig& cfg, const ApproxConfig& params,
                                                const ComplexMatrix& a, Complex mu, Complex xi) {
  std::map<std::string, double> out;
  const int n = a.n();
  const bool has_z = mu != Complex{};
  const Complex z = has_z ? 1.0 / mu : Complex{};
  const int t = clamp_order(cfg.t, params, n);
  const int m = std::min(n, std::max(t, kDkMaxOrder));
  const ColumnStats stats = compute_v_d(a, m);

  if (wants(cfg, "v1")) {
    out["abs_v1"] = std::abs(stats.v.size() > 1 ? stats.v[1] : Complex{});
    out["v1_threshold"] = v1_threshold(n);
  }
  if (wants(cfg, "d2") && stats.d.size() > 2) out["d2_gap"] = std::abs(stats.d[2] - xi);
  if (wants(cfg, "dk") && stats.d.size() > 3) out["dk_scaled"] = max_scaled_dk(stats, n, kDkDelta);
  if (wants(cfg, "magnitude") && has_z) {
    const SurrogateInputs in{stats.v[1], xi, z};
    out["estimator_magnitude"] = std::exp(closed_form_estimator(in).log_mag());
    out["magnitude_threshold"] = std::pow(static_cast<double>(n), -params.gamma);
  }
  std::optional<CoefficientSeries> series;
  const CoefficientOptions options{params.coefficient_budget, params.ryser_max_n, 1};
  if (wants(cfg, "tail") && has_z && n <= params.ryser_max_n) {
    series = coefficients_interpolation(a, options);
    out["tail"] = tail_magnitude(*series, z, t);
    out["tail_bound"] = std::pow(static_cast<double>(n), -params.gamma) * params.eps;
  }
  if (wants(cfg, "vk_gap") && has_z) {
    const auto gaps = surrogate_gaps(stats, xi);
    double weighted = 0.0;
    for (int k = 0; k <= t; ++k) weighted += gaps[k] * std::pow(std::abs(z), k);
    out["vk_gap"] = weighted;
    out["vk_gap_bound"] = std::pow(static_cast<double>(n), params.c - params.nu);
    try {
      if (!series) series = coefficients_up_to(a, t, options);
      Complex diff{};
      Complex zk = 1.0;
      for (int k = 0; k <= t; ++k) {
        diff += (series->coeffs[k] - stats.v[k]) * zk;
        zk *= z;
      }
      out["ak_vk_gap"] = std::abs(diff);
      out["ak_vk_bound"] = std::pow(static_cast<double>(n), -params.beta);
    } catch (const CapacityError&) {
      // a_k out of reach at this n; the V/V' gap above still applies.
    }
  }
  return out;
}

double sample_mean(const std::vector<double>& xs) {
  return xs.empty() ? kNaN : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Standard error of the mean of xs.
double standard_error(const std::vector<double>& xs) {
  const std::size_t count = xs.size();
  if (count < 2) return kNaN;
  const double mean = sample_mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(count - 1) / static_cast<double>(count));
}

double fraction(const std::vector<double>& xs, auto pred) {
  if (xs.empty()) return kNaN;
  return static_cast<double>(std::count_if(xs.begin(), xs.end(), pred)) / static_cast<double>(xs.size());
}

}  // namespace

const std::vector<std::string>& diagnostic_groups() {
  static const std::vector<std::string> groups{"v1", "d2", "dk", "magnitude", "tail", "vk_gap"};
  return groups;
}

const std::vector<std::string>& diagnostic_fields() {
  static const std::vector<std::string> fields{
      "abs_v1",    "v1_threshold", "d2_gap", "dk_scaled",    "estimator_magnitude", "magnitude_threshold",
      "tail",      "tail_bound",   "vk_gap", "vk_gap_bound", "ak_vk_gap",           "ak_vk_bound"};
  return fields;
}

bool TrialRecord::operator==(const TrialRecord& o) const {
  return seed == o.seed && n == o.n && mu == o.mu && dist == o.dist && eps == o.eps && algorithm == o.algorithm &&
         same_log_complex(estimate, o.estimate) && route == o.route && t_used == o.t_used &&
         same_log_complex(exact, o.exact) && rel_error == o.rel_error && diagnostics == o.diagnostics &&
         error == o.error;
}

double median(std::vector<double> values) {
  if (values.empty()) return kNaN;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t cell, std::size_t trial) {
  return mix_seed(base_seed, cell, trial);
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n.empty() || cfg.mu.empty() || cfg.eps.empty() || cfg.dist.empty())
    throw std::invalid_argument("experiment: every grid axis (n, mu, eps, dist) needs at least one value");
  if (cfg.trials < 0) throw std::invalid_argument("experiment: trials must be non-negative");
  for (int n : cfg.n) {
    if (n < 1) throw std::invalid_argument("experiment: n must be positive");
    if (cfg.exact_oracle && n > cfg.params.ryser_max_n)
      throw std::invalid_argument("experiment: exact oracle requested but n=" + std::to_string(n) +
                                  " exceeds the Ryser guard " + std::to_string(cfg.params.ryser_max_n));
  }
  for (const auto& d : cfg.dist) parse_distribution_kind(d);
  for (const auto& g : cfg.diagnostics)
    if (std::find(diagnostic_groups().begin(), diagnostic_groups().end(), g) == diagnostic_groups().end())
      throw std::invalid_argument("experiment: unknown diagnostic '" + g + "'");
  for (double eps : cfg.eps) {
    ApproxConfig p = cfg.params;
    p.eps = eps;
    validate(p);
  }
  if (cfg.t && *cfg.t < 0) throw std::invalid_argument("experiment: t must be non-negative");
}

std::size_t cell_count(const ExperimentConfig& cfg) {
  return cfg.n.size() * cfg.mu.size() * cfg.eps.size() * cfg.dist.size();
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, const ProgressCallback& progress) {
  validate(cfg);
  const auto cells = expand_cells(cfg);
  const std::size_t trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t algos = cfg.algorithms.size();
  const std::size_t jobs = cells.size() * trials;
  std::vector<TrialRecord> records(jobs * algos);

  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  parallel_for(jobs, cfg.threads, [&](std::size_t job) {
    const std::size_t cell_index = job / trials;
    const std::size_t trial = job % trials;
    const Cell& cell = cells[cell_index];
    ApproxConfig params = cfg.params;
    params.eps = cell.eps;
    params.threads = 1;

    const EntryDistribution dist = builtin_distribution(cell.dist, cell.mu);
    const std::uint64_t seed = trial_seed(cfg.base_seed, cell_index, trial);
    const MatrixSample sample = sample_matrix(dist, cell.n, seed);

    std::optional<LogComplex> exact;
    std::string shared_error;
    std::map<std::string, double> diagnostics;
    try {
      if (cfg.exact_oracle) exact = permanent_ryser(sample.matrix, RyserOptions{params.ryser_max_n, 1, false});
      if (!cfg.diagnostics.empty())
        diagnostics = trial_diagnostics(cfg, params, centered_matrix(sample), cell.mu, dist.xi());
    } catch (const std::exception& e) {
      shared_error = e.what();
    }

    for (std::size_t a = 0; a < algos; ++a) {
      TrialRecord& rec = records[job * algos + a];
      rec.seed = seed;
      rec.n = cell.n;
      rec.mu = cell.mu;
      rec.dist = cell.dist;
      rec.eps = cell.eps;
      rec.algorithm = std::string(to_string(cfg.algorithms[a]));
      rec.exact = exact;
      rec.diagnostics = diagnostics;
      rec.error = shared_error;
      if (!rec.error.empty()) continue;
      try {
        Estimate est;
        switch (cfg.algorithms[a]) {
          case Algorithm::Truncated:
            est = approx_truncated(sample.matrix, cell.mu, params, clamp_order(cfg.t, params, cell.n));
            break;
          case Algorithm::Simple: est = approx_simple(sample.matrix, cell.mu, dist.xi(), params); break;
          case Algorithm::Ptas: est = approx_ptas(sample.matrix, cell.mu, dist.xi(), params); break;
        }
        rec.estimate = est.value;
        rec.route = std::string(to_string(est.algorithm));
        rec.t_used = est.t_used;
        if (exact && !exact->is_zero()) rec.rel_error = relative_error(est.value, *exact);
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
    }
    const std::size_t finished = ++done;
    if (progress) {
      std::lock_guard lock(progress_mutex);
      progress(finished, jobs);
    }
  });
  return records;
}

std::vector<CheckResult> evaluate_checks(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records) {
  std::vector<CheckResult> results;
  for (const Check& check : cfg.checks) {
    std::vector<double> values;
    for (const TrialRecord& rec : records) {
      if (check.algorithm && rec.algorithm != *check.algorithm) continue;
      if (check.n && rec.n != *check.n) continue;
      if (check.field == "rel_error") {
        if (rec.rel_error) values.push_back(*rec.rel_error);
      } else if (auto it = rec.diagnostics.find(check.field); it != rec.diagnostics.end()) {
        values.push_back(it->second);
      }
    }
    double value = kNaN;
    const std::string& s = check.statistic;
    if (s == "median") value = median(values);
    else if (s == "mean") value = sample_mean(values);
    else if (s == "max") value = values.empty() ? kNaN : *std::max_element(values.begin(), values.end());
    else if (s == "min") value = values.empty() ? kNaN : *std::min_element(values.begin(), values.end());
    else if (s == "fraction_le") value = fraction(values, [&](double x) { return x <= check.threshold; });
    else if (s == "fraction_ge") value = fraction(values, [&](double x) { return x >= check.threshold; });
    else if (s == "count") value = static_cast<double>(values.size());
    else throw std::invalid_argument("check '" + check.name + "': unknown statistic '" + s + "'");

    bool passed = !std::isnan(value);
    if (check.max) passed = passed && value <= *check.max;
    if (check.min) passed = passed && value >= *check.min;
    results.push_back({check.name, value, values.size(), passed, check.acceptance});
  }
  return results;
}

double tail_magnitude(const CoefficientSeries& full_series, Complex z, int t) {
  Complex sum{};
  for (int k = full_series.max_order(); k > t; --k) sum = (sum + full_series.coeffs[k]) * z;
  // sum now equals sum_{k>t} a_k z^{k - t}; restore the remaining powers.
  for (int k = 0; k < t && sum != Complex{}; ++k) sum *= z;
  return std::abs(sum);
}

std::vector<double> surrogate_gaps(const ColumnStats& stats, Complex xi) {
  const int m = static_cast<int>(stats.v.size()) - 1;
  const SurrogateInputs in{m >= 1 ? stats.v[1] : Complex{}, xi, 1.0};
  const auto vprime = vprime_sequence(in, m);
  std::vector<double> gaps(m + 1);
  for (int k = 0; k <= m; ++k) gaps[k] = std::abs(stats.v[k] - vprime[k]);
  return gaps;
}

double DiagnosticTable::summary_value(const std::string& key) const {
  for (const auto& [k, v] : summary)
    if (k == key) return v;
  throw std::out_of_range("diagnostic table '" + name + "' has no summary '" + key + "'");
}

std::size_t DiagnosticTable::column(const std::string& key) const {
  const auto it = std::find(columns.begin(), columns.end(), key);
  if (it == columns.end()) throw std::out_of_range("diagnostic table '" + name + "' has no column '" + key + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

DiagnosticTable diagnostic_ak_moments(int n, int k_max, int trials, const EntryDistribution& dist,
                                      std::uint64_t seed, const CoefficientOptions& options) {
  if (k_max < 0 || k_max > n) throw std::invalid_argument("diagnostic_ak_moments: k_max must be in [0, n]");
  if (trials < 0) throw std::invalid_argument("diagnostic_ak_moments: trials must be non-negative");
  CoefficientOptions per_trial = options;
  per_trial.threads = 1;
  std::vector<std::vector<Complex>> coeffs(trials);
  parallel_for(trials, options.threads, [&](std::size_t i) {
    const MatrixSample s = sample_matrix(dist, n, trial_seed(seed, 0, i));
    auto series = coefficients_up_to(centered_matrix(s), k_max, per_trial);
    series.coeffs.resize(k_max + 1);
    coeffs[i] = std::move(series.coeffs);
  });

  DiagnosticTable table;
  table.name = "ak_moments";
  table.columns = {"k",          "mean_re",        "mean_im",          "mean_abs", "mean_se", "second_moment",
                   "second_moment_se", "predicted_mean", "predicted_second_moment"};
  for (int k = 0; k <= k_max; ++k) {
    std::vector<double> re, im, sq;
    for (const auto& c : coeffs) {
      re.push_back(c[k].real());
      im.push_back(c[k].imag());
      sq.push_back(std::norm(c[k]));
    }
    const double mean_re = sample_mean(re), mean_im = sample_mean(im);
    // SE of a complex mean: sqrt(E|a - mean|^2 / N).
    const double se_re = standard_error(re), se_im = standard_error(im);
    const double mean_se = std::sqrt(se_re * se_re + se_im * se_im);
    table.rows.push_back({static_cast<double>(k), mean_re, mean_im, std::hypot(mean_re, mean_im), mean_se,
                          sample_mean(sq), standard_error(sq), k == 0 ? 1.0 : 0.0, std::exp(-std::lgamma(k + 1.0))});
  }
  table.summary = {{"n", static_cast<double>(n)}, {"trials", static_cast<double>(trials)}};
  return table;
}

DiagnosticTable diagnostic_tail(int n, Complex mu, double eps, int trials, const EntryDistribution& dist,
                                std::uint64_t seed, const ApproxConfig& params, std::optional<int> t) {
  if (mu == Complex{}) throw std::invalid_argument("diagnostic_tail: mu must be nonzero");
  ApproxConfig cfg = params;
  cfg.eps = eps;
  validate(cfg);
  if (n > cfg.ryser_max_n)
    throw CapacityError("diagnostic_tail: n=" + std::to_string(n) + " exceeds the Ryser guard " +
                        std::to_string(cfg.ryser_max_n));
  const int order = clamp_order(t, cfg, n);
  const Complex z = 1.0 / mu;
  const double bound = std::pow(static_cast<double>(n), -cfg.gamma) * eps;
  const EntryDistribution d = dist.with_mean(mu);

  std::vector<double> tails(trials);
  parallel_for(trials, cfg.threads, [&](std::size_t i) {
    const MatrixSample s = sample_matrix(d, n, trial_seed(seed, 0, i));
    const auto series = coefficients_interpolation(centered_matrix(s), CoefficientOptions{cfg.coefficient_budget,
                                                                                          cfg.ryser_max_n, 1});
    tails[i] = tail_magnitude(series, z, order);
  });

  DiagnosticTable table;
  table.name = "tail";
  table.columns = {"trial", "tail", "bound"};
  for (int i = 0; i < trials; ++i) table.rows.push_back({static_cast<double>(i), tails[i], bound});
  table.summary = {{"n", static_cast<double>(n)},
                   {"t", static_cast<double>(order)},
                   {"bound", bound},
                   {"median_tail", median(tails)},
                   {"fraction_within_bound", fraction(tails, [&](double x) { return x <= bound; })}};
  return table;
}

DiagnosticTable diagnostic_vk_gap(int n, Complex mu, int t, int trials, const EntryDistribution& dist,
                                  std::uint64_t seed, const ApproxConfig& params) {
  if (t < 0 || t > n) throw std::invalid_argument("diagnostic_vk_gap: t must be in [0, n]");
  const bool has_z = mu != Complex{};
  const Complex z = has_z ? 1.0 / mu : Complex{};
  const EntryDistribution d = dist.with_mean(mu);
  const Complex xi = d.xi();
  const CoefficientOptions options{params.coefficient_budget, params.ryser_max_n, 1};

  std::vector<std::vector<double>> rows(trials);
  parallel_for(trials, params.threads, [&](std::size_t i) {
    const MatrixSample s = sample_matrix(d, n, trial_seed(seed, 0, i));
    const ComplexMatrix a = centered_matrix(s);
    const ColumnStats stats = compute_v_d(a, std::max(t, std::min(n, 2)));
    const auto gaps = surrogate_gaps(stats, xi);

    double weighted = kNaN, ak_gap = kNaN;
    if (has_z) {
      weighted = 0.0;
      for (int k = 0; k <= t; ++k) weighted += gaps[k] * std::pow(std::abs(z), k);
      try {
        const auto series = coefficients_up_to(a, t, options);
        Complex diff{};
        Complex zk = 1.0;
        for (int k = 0; k <= t; ++k) {
          diff += (series.coeffs[k] - stats.v[k]) * zk;
          zk *= z;
        }
        ak_gap = std::abs(diff);
      } catch (const CapacityError&) {
      }
    }
    std::vector<double> row{static_cast<double>(i)};
    row.insert(row.end(), gaps.begin(), gaps.begin() + t + 1);
    row.push_back(weighted);
    row.push_back(ak_gap);
    rows[i] = std::move(row);
  });

  DiagnosticTable table;
  table.name = "vk_gap";
  table.columns = {"trial"};
  for (int k = 0; k <= t; ++k) table.columns.push_back("eps_" + std::to_string(k));
  table.columns.push_back("vk_vprime_gap");
  table.columns.push_back("ak_vk_gap");
  table.rows = std::move(rows);

  table.summary = {{"n", static_cast<double>(n)}, {"t", static_cast<double>(t)}};
  for (std::size_t col = 1; col < table.columns.size(); ++col) {
    std::vector<double> values;
    for (const auto& row : table.rows)
      if (!std::isnan(row[col])) values.push_back(row[col]);
    table.summary.emplace_back("median_" + table.columns[col], median(values));
  }
  table.summary.emplace_back("vk_vprime_bound", std::pow(static_cast<double>(n), params.c - params.nu));
  table.summary.emplace_back("ak_vk_bound", std::pow(static_cast<double>(n), -params.beta));
  return table;
}

DiagnosticTable diagnostic_estimator_magnitude(int n, Complex mu, int trials, const EntryDistribution& dist,
                                               std::uint64_t seed, const ApproxConfig& params) {
  if (mu == Complex{}) throw std::invalid_argument("diagnostic_estimator_magnitude: mu must be nonzero");
  const EntryDistribution d = dist.with_mean(mu);
  const Complex z = 1.0 / mu;
  const double threshold = std::pow(static_cast<double>(n), -params.gamma);

  std::vector<double> magnitudes(trials);
  parallel_for(trials, params.threads, [&](std::size_t i) {
    const MatrixSample s = sample_matrix(d, n, trial_seed(seed, 0, i));
    Complex total{};
    for (const Complex& x : s.matrix.entries()) total += x - mu;
    const Complex v1 = total / static_cast<double>(n);
    magnitudes[i] = std::exp(closed_form_estimator(SurrogateInputs{v1, d.xi(), z}).log_mag());
  });

  DiagnosticTable table;
  table.name = "estimator_magnitude";
  table.columns = {"trial", "magnitude", "threshold"};
  for (int i = 0; i < trials; ++i) table.rows.push_back({static_cast<double>(i), magnitudes[i], threshold});
  table.summary = {{"n", static_cast<double>(n)},
                   {"threshold", threshold},
                   {"median_magnitude", median(magnitudes)},
                   {"fraction_above_threshold", fraction(magnitudes, [&](double x) { return x >= threshold; })}};
  return table;
}

DiagnosticTable diagnostic_power_sums(int n, int trials, const EntryDistribution& dist, std::uint64_t seed,
                                      double delta) {
  const EntryDistribution d = dist.with_mean(0.0);
  const int m = std::min(n, kDkMaxOrder);
  std::vector<double> d2_gap(trials), dk_scaled(trials);
  for (int i = 0; i < trials; ++i) {
    const MatrixSample s = sample_matrix(d, n, trial_seed(seed, 0, static_cast<std::size_t>(i)));
    const ColumnStats stats = compute_v_d(s.matrix, m);
    d2_gap[i] = m >= 2 ? std::abs(stats.d[2] - d.xi()) : kNaN;
    dk_scaled[i] = max_scaled_dk(stats, n, delta);
  }
  DiagnosticTable table;
  table.name = "power_sums";
  table.columns = {"trial", "d2_gap", "dk_scaled"};
  for (int i = 0; i < trials; ++i) table.rows.push_back({static_cast<double>(i), d2_gap[i], dk_scaled[i]});
  table.summary = {{"n", static_cast<double>(n)},
                   {"delta", delta},
                   {"median_d2_gap", median(d2_gap)},
                   {"fraction_dk_within_bound", fraction(dk_scaled, [](double x) { return x <= 1.0; })}};
  return table;
}

}  // namespace permapprox
