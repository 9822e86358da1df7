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

#include "permapprox/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "permapprox/parallel.hpp"

namespace permapprox {

namespace {

double log_choose(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

// Advances idx to the next k-combination of [0, n) in lexicographic order.
bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

std::vector<std::vector<int>> all_combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  do {
    out.push_back(idx);
  } while (next_combination(idx, n));
  return out;
}

}  // namespace

std::string_view to_string(CoefficientMethod method) {
  return method == CoefficientMethod::Submatrix ? "submatrix" : "interpolation";
}

CoefficientMethod parse_coefficient_method(std::string_view name) {
  if (name == "submatrix") return CoefficientMethod::Submatrix;
  if (name == "interp" || name == "interpolation") return CoefficientMethod::Interpolation;
  throw std::invalid_argument("unknown coefficient method '" + std::string(name) + "'");
}

double log_falling_factorial(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("falling factorial requires 0 <= k <= n");
  return std::lgamma(n + 1.0) - std::lgamma(n - k + 1.0);
}

double submatrix_work(int n, int k) {
  if (k == 0) return 1.0;
  return std::exp(2.0 * log_choose(n, k) + k * std::numbers::ln2 + std::log(static_cast<double>(k)));
}

double interpolation_work(int n) { return (n + 1.0) * std::ldexp(1.0, n) * n; }

Complex coefficient_submatrix(const ComplexMatrix& a, int k, const CoefficientOptions& options) {
  const int n = a.n();
  if (k < 0 || k > n) throw std::invalid_argument("coefficient_submatrix: order must satisfy 0 <= k <= n");
  if (k == 0) return 1.0;
  const double work = submatrix_work(n, k);
  if (work > options.budget) {
    std::ostringstream msg;
    msg << "coefficient_submatrix: work C(n,k)^2 2^k k = " << work << " for n=" << n << ", k=" << k
        << " exceeds budget " << options.budget;
    throw CapacityError(msg.str());
  }

  const auto row_sets = all_combinations(n, k);
  std::vector<Complex> partial(row_sets.size());
  parallel_for(row_sets.size(), options.threads, [&](std::size_t r) {
    const auto& rows = row_sets[r];
    // Rows selected once; column subsets are gathered from this k x n block.
    std::vector<Complex> selected(static_cast<std::size_t>(k) * n);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j) selected[static_cast<std::size_t>(i) * n + j] = a(rows[i], j);

    std::vector<Complex> block(static_cast<std::size_t>(k) * k);
    std::vector<int> cols(k);
    std::iota(cols.begin(), cols.end(), 0);
    Complex sum{};
    do {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          block[static_cast<std::size_t>(i) * k + j] = selected[static_cast<std::size_t>(i) * n + cols[j]];
      sum += ryser_kernel(block, k);
    } while (next_combination(cols, n));
    partial[r] = sum;
  });
  const Complex total = std::accumulate(partial.begin(), partial.end(), Complex{});
  return total * std::exp(-log_falling_factorial(n, k));
}

CoefficientSeries coefficients_submatrix(const ComplexMatrix& a, int k_max, const CoefficientOptions& options) {
  if (k_max < 0 || k_max > a.n()) throw std::invalid_argument("coefficients_submatrix: k_max must be in [0, n]");
  CoefficientSeries series{a.n(), {}, CoefficientMethod::Submatrix};
  series.coeffs.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) series.coeffs.push_back(coefficient_submatrix(a, k, options));
  return series;
}

CoefficientSeries coefficients_interpolation(const ComplexMatrix& a, const CoefficientOptions& options) {
  const int n = a.n();
  if (n > options.ryser_max_n)
    throw CapacityError("coefficients_interpolation: dimension " + std::to_string(n) + " exceeds Ryser guard " +
                        std::to_string(options.ryser_max_n));
  const int nodes = n + 1;
  if (std::all_of(a.entries().begin(), a.entries().end(), [](const Complex& v) { return v == Complex{}; })) {
    // q(w) = 1 identically.
    CoefficientSeries series{n, std::vector<Complex>(nodes), CoefficientMethod::Interpolation};
    series.coeffs[0] = 1.0;
    return series;
  }
  const auto root = [nodes](long long m) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m % nodes) / nodes);
  };
  const double inv_factorial = std::exp(-std::lgamma(n + 1.0));

  std::vector<Complex> values(nodes);
  parallel_for(nodes, options.threads, [&](std::size_t j) {
    const ComplexMatrix x = ones_plus_scaled(a, root(static_cast<long long>(j)));
    values[j] = ryser_kernel(x.entries(), n) * inv_factorial;
  });

  CoefficientSeries series{n, std::vector<Complex>(nodes), CoefficientMethod::Interpolation};
  for (int k = 0; k <= n; ++k) {
    Complex sum{};
    for (int j = 0; j < nodes; ++j) sum += values[j] * std::conj(root(static_cast<long long>(j) * k));
    series.coeffs[k] = sum / static_cast<double>(nodes);
  }
  series.coeffs[0] = 1.0;
  return series;
}

CoefficientSeries coefficients_up_to(const ComplexMatrix& a, int k_max, const CoefficientOptions& options) {
  const int n = a.n();
  if (k_max < 0 || k_max > n) throw std::invalid_argument("coefficients_up_to: k_max must be in [0, n]");

  double sub_work = 0.0;
  bool sub_ok = true;
  for (int k = 1; k <= k_max; ++k) {
    const double w = submatrix_work(n, k);
    sub_ok = sub_ok && w <= options.budget;
    sub_work += w;
  }
  const bool interp_ok = n <= options.ryser_max_n;
  const double interp_work = interp_ok ? interpolation_work(n) : std::numeric_limits<double>::infinity();

  if (interp_ok && (!sub_ok || interp_work < sub_work)) return coefficients_interpolation(a, options);
  if (sub_ok) return coefficients_submatrix(a, k_max, options);
  std::ostringstream msg;
  msg << "coefficients up to order " << k_max << " for n=" << n << " exceed both the submatrix budget "
      << options.budget << " and the Ryser guard " << options.ryser_max_n;
  throw CapacityError(msg.str());
}

Complex truncated_series(const CoefficientSeries& series, Complex z, int t) {
  if (t < 0 || t > series.max_order())
    throw std::invalid_argument("truncated_series: t=" + std::to_string(t) + " exceeds available order " +
                                std::to_string(series.max_order()));
  Complex acc = series.coeffs[t];
  for (int k = t - 1; k >= 0; --k) acc = acc * z + series.coeffs[k];
  return acc;
}

}  // namespace permapprox
