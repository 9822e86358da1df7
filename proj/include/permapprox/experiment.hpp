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

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permapprox/approximator.hpp"
#include "permapprox/coefficients.hpp"
#include "permapprox/distributions.hpp"
#include "permapprox/log_complex.hpp"
#include "permapprox/symmetric.hpp"

namespace permapprox {

/// Exponent used for the |D_k| <= n^{-Delta k} concentration diagnostic.
inline constexpr double kDkDelta = 0.15;
/// Largest k covered by the |D_k| diagnostic.
inline constexpr int kDkMaxOrder = 10;

/// Diagnostic groups a sweep can request, and the record fields they fill.
///   v1         abs_v1, v1_threshold                   |V_1| against ln ln n
///   d2         d2_gap                                 |D_2 - xi|
///   dk         dk_scaled                              max_{3<=k<=10} |D_k| n^{0.15 k} (bound 1)
///   magnitude  estimator_magnitude, magnitude_threshold   |exp(V_1 z - xi z^2/2)| against n^{-gamma}
///   tail       tail, tail_bound                       |sum_{k>t} a_k z^k| against n^{-gamma} eps
///   vk_gap     vk_gap, vk_gap_bound, ak_vk_gap, ak_vk_bound
///              sum_{k<=t} |V_k - V'_k| |z|^k against n^{c-nu};
///              |sum_{k<=t} (a_k - V_k) z^k| against n^{-beta}
const std::vector<std::string>& diagnostic_groups();
/// Every diagnostic field in output column order.
const std::vector<std::string>& diagnostic_fields();

struct TrialRecord {
  std::uint64_t seed = 0;
  int n = 0;
  Complex mu;
  std::string dist;
  double eps = 0.0;
  std::string algorithm;
  std::optional<LogComplex> estimate;
  /// Route that produced the estimate ("truncated", "simple", "exact-fallback").
  std::string route;
  std::optional<int> t_used;
  std::optional<LogComplex> exact;
  std::optional<double> rel_error;
  std::map<std::string, double> diagnostics;
  /// Empty on success; otherwise the failure message (e.g. a capacity error).
  std::string error;

  bool operator==(const TrialRecord&) const;
};

/// A pass/fail criterion over an aggregate of record fields.
struct Check {
  std::string name;
  /// "rel_error" or a diagnostic field name.
  std::string field;
  /// median | mean | max | min | fraction_le | fraction_ge | count
  std::string statistic = "median";
  /// Threshold for fraction_le / fraction_ge.
  double threshold = 0.0;
  std::optional<std::string> algorithm;
  std::optional<int> n;
  std::optional<double> max;
  std::optional<double> min;
  bool acceptance = true;
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  std::size_t samples = 0;
  bool passed = false;
  bool acceptance = true;
};

struct ExperimentConfig {
  std::vector<int> n;
  std::vector<Complex> mu;
  std::vector<double> eps;
  std::vector<std::string> dist;
  int trials = 0;
  std::uint64_t base_seed = 0;
  std::vector<Algorithm> algorithms;
  std::vector<std::string> diagnostics;
  bool exact_oracle = false;
  /// Parameter tuple; eps is overridden per cell.
  ApproxConfig params;
  /// Truncation order override for the truncated estimator and diagnostics.
  std::optional<int> t;
  unsigned threads = 1;
  std::vector<Check> checks;
};

/// Throws std::invalid_argument when the config is inconsistent (unknown
/// names, empty grid axes, oracle on with n above the Ryser guard, ...).
void validate(const ExperimentConfig& config);

/// Number of grid cells; cells enumerate n, then mu, then eps, then dist.
std::size_t cell_count(const ExperimentConfig& config);

/// Seed of trial `trial` in cell `cell`.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t cell, std::size_t trial);

using ProgressCallback = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every (cell, trial) and returns records sorted by cell, trial, then
/// algorithm in config order. Per-trial failures become records with `error`
/// set. Output is independent of the thread count.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config, const ProgressCallback& progress = {});

std::vector<CheckResult> evaluate_checks(const ExperimentConfig& config, const std::vector<TrialRecord>& records);

/// |sum_{k=t+1}^{n} a_k z^k| from a full coefficient series.
double tail_magnitude(const CoefficientSeries& full_series, Complex z, int t);

/// eps_k = |V_k - V'_k| for k = 0..m, with V'_k built from V_1 of the stats.
std::vector<double> surrogate_gaps(const ColumnStats& stats, Complex xi);

/// Aggregated diagnostic output: one row per k or per trial plus summary
/// scalars. Measured quantities and predicted values appear side by side.
struct DiagnosticTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, double>> summary;

  double summary_value(const std::string& key) const;
  std::size_t column(const std::string& key) const;
};

/// Per k in 0..k_max: empirical E[a_k] and E|a_k|^2 with standard errors next
/// to the predicted 0 (1 for k = 0) and 1/k!.
DiagnosticTable diagnostic_ak_moments(int n, int k_max, int trials, const EntryDistribution& dist,
                                      std::uint64_t seed, const CoefficientOptions& options = {});

/// Per trial: |sum_{k>t} a_k z^k| and the bound n^{-gamma} eps, z = 1/mu.
DiagnosticTable diagnostic_tail(int n, Complex mu, double eps, int trials, const EntryDistribution& dist,
                                std::uint64_t seed, const ApproxConfig& params = default_config(0.5),
                                std::optional<int> t = std::nullopt);

/// Per trial: eps_k = |V_k - V'_k| (k = 0..t), sum_k |V_k - V'_k||z|^k and
/// |sum_k (a_k - V_k) z^k|. z-dependent columns are NaN when mu = 0; the
/// a_k column is NaN when the coefficients exceed the budgets.
DiagnosticTable diagnostic_vk_gap(int n, Complex mu, int t, int trials, const EntryDistribution& dist,
                                  std::uint64_t seed, const ApproxConfig& params = default_config(0.5));

/// Per trial: |exp(V_1 z - xi z^2 / 2)| and the threshold n^{-gamma}.
DiagnosticTable diagnostic_estimator_magnitude(int n, Complex mu, int trials, const EntryDistribution& dist,
                                               std::uint64_t seed, const ApproxConfig& params = default_config(0.5));

/// Per trial: |D_2 - xi| and max_{3<=k<=10} |D_k| n^{Delta k}.
DiagnosticTable diagnostic_power_sums(int n, int trials, const EntryDistribution& dist, std::uint64_t seed,
                                      double delta = kDkDelta);

double median(std::vector<double> values);

}  // namespace permapprox
