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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>

#include "permapprox/approximator.hpp"
#include "permapprox/distributions.hpp"
#include "permapprox/errors.hpp"
#include "permapprox/permanent.hpp"
#include "test_support.hpp"

using namespace permapprox;
using testing_support::random_matrix;
using testing_support::rel;

TEST_CASE("default parameters satisfy the constraint system") {
  const auto cfg = default_config(0.5);
  CHECK(cfg.c == 0.10);
  CHECK(cfg.nu == 0.12);
  CHECK(cfg.gamma == 0.015);
  CHECK(cfg.beta == 0.40);
  CHECK(cfg.rho_ptas == 0.02);
  CHECK_NOTHROW(validate(cfg));
  CHECK(cfg.c < cfg.nu);
  CHECK(cfg.nu < 0.125);
  CHECK(cfg.gamma < cfg.nu - cfg.c);
  CHECK(cfg.gamma < cfg.beta);
  CHECK(cfg.beta < 0.5);

  CHECK(truncation_order(cfg, 100) == 6);
  CHECK(truncation_order(default_config(0.9), 1) == 1);
  CHECK_THROWS_AS(default_config(1.0), std::invalid_argument);
  CHECK_THROWS_AS(default_config(0.0), std::invalid_argument);
  CHECK_THROWS_AS(default_config(1.5), std::invalid_argument);
}

TEST_CASE("inconsistent parameter tuples are rejected") {
  auto cfg = default_config(0.5);
  cfg.gamma = 0.05;  // gamma < nu - c fails
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = default_config(0.5);
  cfg.rho_ptas = 0.05;  // rho < 1/8 - c fails
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = default_config(0.5);
  cfg.nu = 0.2;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = default_config(0.5);
  cfg.beta = 0.01;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = default_config(0.5);
  cfg.eps = 1.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

  const ComplexMatrix r = ComplexMatrix::ones(3);
  cfg = default_config(0.5);
  cfg.c = 0.2;
  CHECK_THROWS_AS(approx_truncated(r, 1.0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(approx_ptas(r, 1.0, 1.0, cfg), std::invalid_argument);
}

TEST_CASE("truncated estimator on R = mu J") {
  for (const Complex mu : {Complex(1.0), Complex(0.3, -0.8), Complex(2.5)}) {
    const int n = 7;
    const auto r = ComplexMatrix::constant(n, mu);
    const auto est = approx_truncated(r, mu, default_config(0.5));
    const auto exact = permanent_ryser(r);
    CHECK(relative_error(est.value, exact) < 1e-12);
    CHECK(relative_error(est.value, permanent_scale(mu, n)) < 1e-14);
    CHECK(est.algorithm == EstimateKind::Truncated);
    CHECK(est.z == 1.0 / mu);
    CHECK(est.t_used == truncation_order(default_config(0.5), n));
  }
  CHECK_THROWS_AS(approx_truncated(ComplexMatrix::ones(3), 0.0, default_config(0.5)), std::invalid_argument);
}

TEST_CASE("full truncation order reproduces the permanent") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 8;
    const Complex mu = trial % 3 == 0 ? Complex(0.3) : trial % 3 == 1 ? Complex(1.0) : Complex(2.0);
    const auto r = sample_matrix(builtin_distribution("complex-gaussian", mu), n, 100 + trial).matrix;
    const auto est = approx_truncated(r, mu, default_config(0.5), n);
    REQUIRE(relative_error(est.value, permanent_ryser(r)) <= 1e-7);
    REQUIRE(est.t_used == n);
  }
  // t above n is clamped.
  const auto r = random_matrix(rng, 4);
  CHECK(approx_truncated(r, 1.0, default_config(0.5), 10).t_used == 4);
}

TEST_CASE("large n uses submatrix coefficients") {
  const int n = 100;
  const auto r = sample_matrix(builtin_distribution("real-gaussian", 1.0), n, 5).matrix;
  const auto est = approx_truncated(r, 1.0, default_config(0.5), 2);
  CHECK(est.coefficient_method == CoefficientMethod::Submatrix);
  CHECK(std::abs(est.value.log_mag() - std::lgamma(n + 1.0)) < 5.0);
  CHECK_THROWS_AS(approx_truncated(r, 1.0, default_config(0.5), 6), CapacityError);
}

TEST_CASE("simple estimator examples") {
  const int n = 5;
  for (const Complex mu : {Complex(1.0), Complex(-0.5, 2.0)}) {
    const auto r = ComplexMatrix::constant(n, mu);
    CHECK(relative_error(approx_simple(r, mu, 0.0).value, permanent_scale(mu, n)) == 0.0);
  }
  const auto r = ComplexMatrix::ones(n);
  const auto est = approx_simple(r, 1.0, 1.0);
  CHECK(rel(est.value.to_complex(), 120.0 * std::exp(-0.5)) < 1e-14);
  CHECK(est.algorithm == EstimateKind::Simple);
  CHECK_FALSE(est.t_used.has_value());
  CHECK_THROWS_AS(approx_simple(r, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("simple estimator uses the centered entry sum") {
  std::mt19937_64 rng(2);
  const int n = 6;
  const Complex mu(0.7, 0.2), xi(0.5, 0.5);
  const auto r = sample_matrix(builtin_distribution("complex-gaussian", mu), n, 17).matrix;
  const Complex v1 = (r.total() - mu * double(n * n)) / double(n);
  const Complex z = 1.0 / mu;
  const Complex expected = std::pow(mu, n) * 720.0 * std::exp(v1 * z - xi * z * z / 2.0);
  CHECK(rel(approx_simple(r, mu, xi).value.to_complex(), expected) < 1e-12);
}

TEST_CASE("simple estimator is invariant under row and column permutations") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial;
    const auto r = sample_matrix(builtin_distribution("real-gaussian", 1.0), n, trial).matrix;
    std::vector<int> rows(n), cols(n);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    const auto a = approx_simple(r, 1.0, 1.0).value;
    const auto b = approx_simple(permute(r, rows, cols), 1.0, 1.0).value;
    REQUIRE(relative_error(b, a) <= 1e-12);
  }
}

TEST_CASE("z admissibility is reported, not enforced") {
  const auto r = ComplexMatrix::ones(10);
  const auto est = approx_simple(r, 0.01, 1.0);
  CHECK_FALSE(est.z_admissible);
  CHECK(approx_simple(r, 1.0, 1.0).z_admissible);
  CHECK(v1_threshold(2) == 0.0);
  CHECK(v1_threshold(100) == doctest::Approx(std::log(std::log(100.0))));
}

TEST_CASE("ptas dispatch") {
  auto cfg = default_config(0.9);
  cfg.c = 0.05;
  cfg.nu = 0.10;
  cfg.rho_ptas = 0.05;
  REQUIRE_NOTHROW(validate(cfg));
  const auto r100 = sample_matrix(builtin_distribution("real-gaussian", 1.0), 100, 1).matrix;
  CHECK(0.9 > std::pow(100.0, -0.05));
  const auto simple = approx_ptas(r100, 1.0, 1.0, cfg);
  CHECK(simple.algorithm == EstimateKind::Simple);
  CHECK(relative_error(simple.value, approx_simple(r100, 1.0, 1.0, cfg).value) == 0.0);

  const auto r12 = sample_matrix(builtin_distribution("complex-gaussian", Complex(1.0, 0.5)), 12, 2).matrix;
  const auto exact = approx_ptas(r12, Complex(1.0, 0.5), 0.0, default_config(1e-6));
  CHECK(exact.algorithm == EstimateKind::ExactFallback);
  const auto ryser = permanent_ryser(r12);
  CHECK(exact.value.log_mag() == ryser.log_mag());
  CHECK(exact.value.phase() == ryser.phase());

  const auto r40 = sample_matrix(builtin_distribution("real-gaussian", 1.0), 40, 3).matrix;
  CHECK_THROWS_AS(approx_ptas(r40, 1.0, 1.0, default_config(1e-6)), CapacityError);
  try {
    approx_ptas(r40, 1.0, 1.0, default_config(1e-6));
  } catch (const CapacityError& e) {
    CHECK(std::string(e.what()).find("Ryser guard") != std::string::npos);
  }
}

TEST_CASE("algorithm names") {
  CHECK(parse_algorithm("truncated") == Algorithm::Truncated);
  CHECK(parse_algorithm("simple") == Algorithm::Simple);
  CHECK(parse_algorithm("ptas") == Algorithm::Ptas);
  CHECK_THROWS_AS(parse_algorithm("exact"), std::invalid_argument);
  CHECK(to_string(EstimateKind::ExactFallback) == "exact-fallback");
}

TEST_CASE("permanent scale") {
  CHECK(rel(permanent_scale(2.0, 3).to_complex(), 48.0) < 1e-14);
  CHECK(rel(permanent_scale(Complex(0, 1), 2).to_complex(), -2.0) < 1e-14);
  CHECK(permanent_scale(0.0, 3).is_zero());
}
