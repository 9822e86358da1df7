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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "permapprox/experiment.hpp"
#include "permapprox/permanent.hpp"
#include "permapprox/serialization.hpp"

using namespace permapprox;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.n = {5, 7};
  cfg.mu = {1.0, Complex(0.5, 0.5)};
  cfg.eps = {0.5};
  cfg.dist = {"real-gaussian", "complex-gaussian"};
  cfg.trials = 4;
  cfg.base_seed = 123;
  cfg.algorithms = {Algorithm::Truncated, Algorithm::Simple, Algorithm::Ptas};
  cfg.diagnostics = diagnostic_groups();
  cfg.exact_oracle = true;
  return cfg;
}

}  // namespace

TEST_CASE("zero trials yield no records") {
  auto cfg = small_config();
  cfg.trials = 0;
  CHECK(run_experiment(cfg).empty());
}

TEST_CASE("records are ordered, complete and reproducible") {
  const auto cfg = small_config();
  const auto records = run_experiment(cfg);
  REQUIRE(records.size() == cell_count(cfg) * 4 * 3);
  CHECK(cell_count(cfg) == 8);

  // First cell is (n=5, mu=1, eps=0.5, real-gaussian), trial 0.
  CHECK(records[0].n == 5);
  CHECK(records[0].mu == Complex(1.0));
  CHECK(records[0].dist == "real-gaussian");
  CHECK(records[0].seed == trial_seed(123, 0, 0));
  CHECK(records[0].algorithm == "truncated");
  CHECK(records[1].algorithm == "simple");
  CHECK(records[2].algorithm == "ptas");
  CHECK(records[3].seed == trial_seed(123, 0, 1));
  CHECK(records.back().n == 7);
  CHECK(records.back().dist == "complex-gaussian");

  for (const auto& r : records) {
    CHECK(r.error.empty());
    REQUIRE(r.exact.has_value());
    REQUIRE(r.rel_error.has_value());
    CHECK(std::isfinite(*r.rel_error));
    // Each record can be regenerated from its own seed.
    const auto m = sample_matrix(builtin_distribution(r.dist, r.mu), r.n, r.seed).matrix;
    CHECK(relative_error(permanent_ryser(m), *r.exact) == 0.0);
  }

  auto threaded = cfg;
  threaded.threads = 4;
  CHECK(run_experiment(threaded) == records);
  CHECK(run_experiment(cfg) == records);
}

TEST_CASE("fifty simple trials with the oracle") {
  ExperimentConfig cfg;
  cfg.n = {10};
  cfg.mu = {1.0};
  cfg.eps = {0.5};
  cfg.dist = {"real-gaussian"};
  cfg.trials = 50;
  cfg.algorithms = {Algorithm::Simple};
  cfg.exact_oracle = true;
  const auto records = run_experiment(cfg);
  REQUIRE(records.size() == 50);
  for (const auto& r : records) {
    REQUIRE(r.rel_error.has_value());
    CHECK(std::isfinite(*r.rel_error));
    CHECK(r.route == "simple");
  }
}

TEST_CASE("rel_error is present exactly when the oracle is on") {
  auto cfg = small_config();
  cfg.exact_oracle = false;
  cfg.n = {40};
  cfg.mu = {1.0};
  cfg.dist = {"real-gaussian"};
  cfg.algorithms = {Algorithm::Simple, Algorithm::Truncated};
  cfg.diagnostics = {"v1", "d2", "dk", "magnitude"};
  cfg.trials = 2;
  const auto records = run_experiment(cfg);
  for (const auto& r : records) {
    CHECK_FALSE(r.exact.has_value());
    CHECK_FALSE(r.rel_error.has_value());
  }
  // The truncated estimator at n=40 with t=4 exceeds the submatrix budget:
  // the trial becomes an error record and the sweep continues.
  CHECK(records[0].error.empty());
  CHECK(records[1].error.find("budget") != std::string::npos);
  CHECK_FALSE(records[1].estimate.has_value());
  CHECK(records[2].error.empty());
}

TEST_CASE("config validation") {
  auto cfg = small_config();
  cfg.n = {40};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.dist = {"cauchy"};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.diagnostics = {"nope"};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.mu = {};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.params.gamma = 0.5;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("checks") {
  auto cfg = small_config();
  cfg.checks = {
      {"count", "rel_error", "count", 0.0, std::string("simple"), std::nullopt, std::nullopt, 32.0, true},
      {"ptas exact", "rel_error", "max", 0.0, std::string("ptas"), std::nullopt, 1e-12, std::nullopt, true},
      {"v1 fraction", "abs_v1", "fraction_le", 100.0, std::nullopt, 5, std::nullopt, 1.0, false},
      {"missing", "nonexistent", "median", 0.0, std::nullopt, std::nullopt, 1.0, std::nullopt, true},
  };
  cfg.params.rho_ptas = 0.02;
  const auto records = run_experiment(cfg);
  const auto results = evaluate_checks(cfg, records);
  REQUIRE(results.size() == 4);
  CHECK(results[0].value == 32.0);
  CHECK(results[0].passed);
  // eps = 0.5 <= n^-0.02 for n in {5, 7}, so ptas falls back to the exact value.
  CHECK(results[1].passed);
  CHECK(results[2].samples == 16 * 3);
  CHECK(results[2].passed);
  CHECK_FALSE(results[3].passed);
}

TEST_CASE("tail magnitude") {
  CoefficientSeries s{3, {1.0, 2.0, 3.0, 4.0}, CoefficientMethod::Interpolation};
  CHECK(tail_magnitude(s, 2.0, 1) == doctest::Approx(3 * 4 + 4 * 8));
  CHECK(tail_magnitude(s, 2.0, 3) == 0.0);
  CHECK(tail_magnitude(s, Complex(0, 1), 0) == doctest::Approx(std::abs(Complex(0, 2) - 3.0 - Complex(0, 4))));
}

TEST_CASE("diagnostic: a_k moments") {
  const auto t = diagnostic_ak_moments(6, 3, 40, builtin_distribution("real-gaussian", 0.0), 1);
  REQUIRE(t.rows.size() == 4);
  const auto& k0 = t.rows[0];
  CHECK(k0[t.column("mean_re")] == 1.0);
  CHECK(k0[t.column("mean_im")] == 0.0);
  CHECK(k0[t.column("second_moment")] == 1.0);
  CHECK(k0[t.column("second_moment_se")] == 0.0);
  CHECK(t.rows[2][t.column("predicted_second_moment")] == doctest::Approx(0.5));
  CHECK(t.rows[3][t.column("predicted_mean")] == 0.0);
}

TEST_CASE("diagnostic: tail") {
  const auto zero_dist = EntryDistribution::custom("point", 0.0, 0.0, 0.0, [](EntryStream&) { return Complex{}; });
  const auto zero = diagnostic_tail(6, 1.0, 0.5, 5, zero_dist, 1);
  for (const auto& row : zero.rows) CHECK(row[zero.column("tail")] == 0.0);
  CHECK(zero.summary_value("fraction_within_bound") == 1.0);

  const auto full = diagnostic_tail(7, 1.0, 0.5, 10, builtin_distribution("real-gaussian", 1.0), 2, default_config(0.5), 7);
  for (const auto& row : full.rows) CHECK(row[full.column("tail")] <= 1e-8);

  const auto sweep = diagnostic_tail(10, 1.0, 0.2, 20, builtin_distribution("real-gaussian", 1.0), 3);
  CHECK(sweep.summary_value("t") == 4);
  CHECK(sweep.summary_value("bound") == doctest::Approx(std::pow(10.0, -0.015) * 0.2));
  const double frac = sweep.summary_value("fraction_within_bound");
  CHECK(frac >= 0.0);
  CHECK(frac <= 1.0);
  CHECK_THROWS_AS(diagnostic_tail(40, 1.0, 0.5, 1, builtin_distribution("real-gaussian", 1.0), 1), CapacityError);
}

TEST_CASE("diagnostic: V_k gap") {
  const auto t = diagnostic_vk_gap(8, 1.0, 4, 10, builtin_distribution("real-gaussian", 1.0), 4);
  for (const auto& row : t.rows) {
    CHECK(row[t.column("eps_0")] == 0.0);
    CHECK(row[t.column("eps_1")] == 0.0);
    CHECK(std::isfinite(row[t.column("ak_vk_gap")]));
  }
  const auto zero_dist = EntryDistribution::custom("point", 0.0, 0.0, 0.0, [](EntryStream&) { return Complex{}; });
  const auto z = diagnostic_vk_gap(6, 1.0, 3, 3, zero_dist, 1);
  for (const auto& row : z.rows)
    for (std::size_t c = 1; c < row.size(); ++c) CHECK(row[c] == 0.0);

  const auto no_mean = diagnostic_vk_gap(8, 0.0, 3, 3, builtin_distribution("real-gaussian", 0.0), 1);
  CHECK(std::isnan(no_mean.rows[0][no_mean.column("vk_vprime_gap")]));
  CHECK(std::isnan(no_mean.rows[0][no_mean.column("ak_vk_gap")]));
}

TEST_CASE("V_k surrogate gap shrinks with n") {
  const auto dist = builtin_distribution("real-gaussian", 0.0);
  const auto small = diagnostic_vk_gap(100, 0.0, 2, 200, dist, 5);
  const auto large = diagnostic_vk_gap(400, 0.0, 2, 200, dist, 6);
  CHECK(large.summary_value("median_eps_2") <= small.summary_value("median_eps_2"));
}

TEST_CASE("diagnostic: estimator magnitude") {
  const auto zero_dist = EntryDistribution::custom("point", 0.0, 0.0, 0.0, [](EntryStream&) { return Complex{}; });
  const auto t = diagnostic_estimator_magnitude(10, 1.0, 3, zero_dist, 1);
  for (const auto& row : t.rows) CHECK(row[t.column("magnitude")] == 1.0);
  CHECK(t.summary_value("fraction_above_threshold") == 1.0);

  // For complex-gaussian entries xi = 0 and Re V_1 ~ N(0, 1/2), so the
  // magnitude clears n^-gamma with probability Phi(sqrt(2) gamma ln n).
  const int n = 400, trials = 500;
  const auto cg = diagnostic_estimator_magnitude(n, 1.0, trials, builtin_distribution("complex-gaussian", 1.0), 2);
  const double p = 0.5 * std::erfc(-std::sqrt(2.0) * 0.015 * std::log(n) / std::sqrt(2.0));
  CHECK(std::abs(cg.summary_value("fraction_above_threshold") - p) <= 4.0 * std::sqrt(p * (1 - p) / trials));
}

TEST_CASE("diagnostic: power sums") {
  const auto t = diagnostic_power_sums(50, 20, builtin_distribution("complex-gaussian", 0.0), 1);
  CHECK(t.rows.size() == 20);
  CHECK(t.summary_value("delta") == kDkDelta);
  CHECK_THROWS_AS(t.summary_value("nope"), std::out_of_range);
}

TEST_CASE("median") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
  CHECK(std::isnan(median({})));
}
