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
#include <random>
#include <stdexcept>

#include "permapprox/coefficients.hpp"
#include "permapprox/distributions.hpp"
#include "permapprox/symmetric.hpp"
#include "test_support.hpp"

using namespace permapprox;
using testing_support::random_matrix;
using testing_support::random_vector;
using testing_support::rel;

namespace {

// e_k by explicit subset enumeration.
std::vector<Complex> elementary_by_subsets(const std::vector<Complex>& xs, int m) {
  const int n = static_cast<int>(xs.size());
  std::vector<Complex> e(m + 1);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int k = std::popcount(mask);
    if (k > m) continue;
    Complex prod = 1.0;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) prod *= xs[i];
    e[k] += prod;
  }
  return e;
}

}  // namespace

TEST_CASE("column sums") {
  for (const Complex& c : column_sums(ComplexMatrix::ones(4))) CHECK(std::abs(c - 2.0) < 1e-15);
  for (const Complex& c : column_sums(ComplexMatrix(3))) CHECK(c == Complex{});
  const auto c = column_sums(ComplexMatrix(2, {1, -1, 2, 0}));
  CHECK(std::abs(c[0] - 3.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(c[1] + 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("power sums") {
  const std::vector<Complex> xs{1, 2, 3};
  const auto s = power_sums(xs, 3);
  CHECK(s[0] == Complex(3.0));
  CHECK(s[1] == Complex(6.0));
  CHECK(s[2] == Complex(14.0));
  CHECK(s[3] == Complex(36.0));

  const std::vector<Complex> imag{Complex(0, 1), Complex(0, -1)};
  CHECK(power_sums(imag, 2)[2] == Complex(-2.0));

  const auto zeros = power_sums(std::vector<Complex>(4), 5);
  for (int k = 1; k <= 5; ++k) CHECK(zeros[k] == Complex{});
  CHECK_THROWS_AS(power_sums(xs, -1), std::invalid_argument);
}

TEST_CASE("elementary symmetric polynomials") {
  const std::vector<Complex> xs{1, 2, 3};
  const auto e = elementary_symmetric_direct(xs, 3);
  CHECK(e == std::vector<Complex>{1, 6, 11, 6});
  CHECK(elementary_symmetric_newton(xs, 3) == std::vector<Complex>{1, 6, 11, 6});
  CHECK(elementary_symmetric_newton(xs, 2)[2] == Complex(11.0));

  const std::vector<Complex> with_zero{Complex(1, 2), 0.0, Complex(-3, 0.5)};
  CHECK(elementary_symmetric_direct(with_zero, 3)[3] == Complex{});

  std::mt19937_64 rng(5);
  const auto r = random_vector(rng, 6);
  CHECK(elementary_symmetric_newton(r, 1)[1] == power_sums(r, 1)[1]);
  CHECK(elementary_symmetric_direct(r, 0) == std::vector<Complex>{1.0});

  CHECK_THROWS_AS(elementary_symmetric_direct(xs, 4), std::invalid_argument);
  CHECK_THROWS_AS(elementary_symmetric_newton(xs, 4), std::invalid_argument);
}

TEST_CASE("direct and Newton agree with the subset oracle") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 12;
    const auto xs = random_vector(rng, n);
    const auto oracle = elementary_by_subsets(xs, n);
    const auto direct = elementary_symmetric_direct(xs, n);
    const auto newton = elementary_symmetric_newton(xs, n);
    for (int k = 0; k <= n; ++k) {
      REQUIRE(rel(direct[k], oracle[k]) <= 1e-10);
      REQUIRE(rel(newton[k], direct[k]) <= 1e-10);
    }
  }
}

TEST_CASE("V and D examples") {
  const auto s = compute_v_d(ComplexMatrix(2, {1, -1, 2, 0}), 2);
  CHECK(s.v[0] == Complex(1.0));
  CHECK(std::abs(s.v[1] - 1.0) < 1e-15);
  CHECK(std::abs(s.v[2] + 0.75) < 1e-15);
  CHECK(std::abs(s.d[2] - 2.5) < 1e-15);
  CHECK(s.d[0] == Complex(2.0));
  CHECK(s.recursion_residual <= kVRecursionTolerance);
  CHECK_THROWS_AS(compute_v_d(ComplexMatrix(2), 3), std::invalid_argument);
}

TEST_CASE("V_1 equals D_1 and a_1") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 10;
    const auto a = random_matrix(rng, n);
    const auto s = compute_v_d(a, std::min(n, 3));
    const Complex total_over_root = [&] {
      Complex sum{};
      for (const Complex& c : s.column_sums) sum += c;
      return sum / std::sqrt(static_cast<double>(n));
    }();
    REQUIRE(rel(s.v[1], total_over_root) <= 1e-12);
    REQUIRE(rel(s.d[1], s.v[1]) <= 1e-12);
    REQUIRE(rel(s.v[1], coefficient_submatrix(a, 1)) <= 1e-12);
    REQUIRE(s.recursion_residual <= kVRecursionTolerance);
  }
}

TEST_CASE("V recursion holds on sampled matrices") {
  for (const auto* kind : {"complex-gaussian", "real-gaussian", "shifted-rademacher"}) {
    const auto dist = builtin_distribution(kind, 0.0);
    for (int n : {5, 20, 60}) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto a = sample_matrix(dist, n, seed).matrix;
        const int m = std::min(n, 30);
        const auto s = compute_v_d(a, m);
        REQUIRE(s.v.size() == static_cast<std::size_t>(m + 1));
        REQUIRE(s.recursion_residual <= kVRecursionTolerance);
        // Newton's identity also links the scaled quantities.
        const auto newton = elementary_symmetric_newton(
            [&] {
              std::vector<Complex> scaled = s.column_sums;
              for (Complex& c : scaled) c /= std::sqrt(static_cast<double>(n));
              return scaled;
            }(),
            std::min(m, 8));
        for (int k = 0; k <= std::min(m, 8); ++k) REQUIRE(std::abs(newton[k] - s.v[k]) <= 1e-9 * (1 + std::abs(s.v[k])));
      }
    }
  }
}

TEST_CASE("residual detects a corrupted sequence") {
  std::mt19937_64 rng(8);
  auto s = compute_v_d(random_matrix(rng, 8), 6);
  CHECK(v_recursion_residual(s.v, s.d) <= kVRecursionTolerance);
  s.v[4] *= 1.001;
  CHECK(v_recursion_residual(s.v, s.d) > 1e-5);
}

TEST_CASE("exactly cancelling column sums pass the self-check") {
  // Raw column sums {0, 2, 0, 0, 0, 4, -4, -2, 0, 0}: V_1 and V_3 vanish and
  // the computed values are pure rounding noise. V_2 = -20 / n.
  const std::vector<double> sums{0, 2, 0, 0, 0, 4, -4, -2, 0, 0};
  std::vector<Complex> entries(100);
  for (int j = 0; j < 10; ++j) entries[j] = sums[j];
  const auto s = compute_v_d(ComplexMatrix(10, std::move(entries)), 3);
  CHECK(std::abs(s.v[1]) <= 1e-15);
  CHECK(std::abs(s.v[2] + 0.2) <= 1e-15);
  CHECK(std::abs(s.v[3]) <= 1e-15);
  CHECK(s.recursion_residual <= kVRecursionTolerance);
}
