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

#include "permapprox/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace permapprox {

std::vector<Complex> column_sums(const ComplexMatrix& a) {
  const int n = a.n();
  std::vector<Complex> c(n);
  for (int i = 0; i < n; ++i) {
    auto row = a.row(i);
    for (int j = 0; j < n; ++j) c[j] += row[j];
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Complex& v : c) v *= scale;
  return c;
}

std::vector<Complex> power_sums(std::span<const Complex> xs, int m) {
  if (m < 0) throw std::invalid_argument("power_sums: m must be non-negative");
  std::vector<Complex> s(m + 1);
  s[0] = static_cast<double>(xs.size());
  for (const Complex& x : xs) {
    Complex p = 1.0;
    for (int k = 1; k <= m; ++k) {
      p *= x;
      s[k] += p;
    }
  }
  return s;
}

std::vector<Complex> elementary_symmetric_direct(std::span<const Complex> xs, int m) {
  if (m < 0 || static_cast<std::size_t>(m) > xs.size())
    throw std::invalid_argument("elementary_symmetric_direct: m must be in [0, len(xs)]");
  std::vector<Complex> e(m + 1);
  e[0] = 1.0;
  int degree = 0;
  for (const Complex& x : xs) {
    degree = std::min(degree + 1, m);
    for (int k = degree; k >= 1; --k) e[k] += x * e[k - 1];
  }
  return e;
}

std::vector<Complex> elementary_symmetric_newton(std::span<const Complex> xs, int m) {
  if (m < 0 || static_cast<std::size_t>(m) > xs.size())
    throw std::invalid_argument("elementary_symmetric_newton: m must be in [0, len(xs)]");
  // The alternating recurrence cancels; extended precision keeps it within
  // a few ulps of the direct product recurrence for small m.
  using ComplexL = std::complex<long double>;
  std::vector<ComplexL> s(m + 1);
  for (const Complex& x : xs) {
    const ComplexL xl(x.real(), x.imag());
    ComplexL p = 1.0L;
    for (int k = 1; k <= m; ++k) {
      p *= xl;
      s[k] += p;
    }
  }
  std::vector<ComplexL> e(m + 1);
  e[0] = 1.0L;
  for (int j = 1; j <= m; ++j) {
    ComplexL acc{};
    for (int k = 0; k < j; ++k) {
      const ComplexL term = e[j - k - 1] * s[k + 1];
      acc += (k & 1) ? -term : term;
    }
    e[j] = acc / static_cast<long double>(j);
  }
  std::vector<Complex> out(m + 1);
  for (int j = 0; j <= m; ++j) out[j] = Complex(static_cast<double>(e[j].real()), static_cast<double>(e[j].imag()));
  return out;
}

double v_recursion_residual(std::span<const Complex> v, std::span<const Complex> d,
                            std::span<const Complex> xs) {
  const int m = static_cast<int>(std::min(v.size(), d.size())) - 1;
  std::vector<Complex> abs_xs;
  for (const Complex& x : xs) abs_xs.emplace_back(std::abs(x));
  std::vector<double> floor(m + 1, 0.0);
  if (!abs_xs.empty() && m >= 2) {
    const auto ev = elementary_symmetric_direct(abs_xs, m);
    const auto pv = power_sums(abs_xs, m);
    for (int k = 2; k <= m; ++k) {
      floor[k] = k * ev[k].real();
      for (int i = 1; i <= k; ++i) floor[k] += ev[k - i].real() * pv[i].real();
    }
  }
  double worst = 0.0;
  for (int k = 2; k <= m; ++k) {
    Complex rhs = v[k - 1] * v[1] - v[k - 2] * d[2];
    double scale = std::abs(v[k - 1] * v[1]) + std::abs(v[k - 2] * d[2]);
    for (int i = 2; i <= k - 1; ++i) {
      const Complex term = v[k - 1 - i] * d[i + 1];
      rhs += (i & 1) ? -term : term;
      scale += std::abs(term);
    }
    const Complex lhs = static_cast<double>(k) * v[k];
    scale = std::max({scale, std::abs(lhs), floor[k]});
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

ColumnStats compute_v_d(const ComplexMatrix& a, int m) {
  const int n = a.n();
  if (m < 0 || m > n) throw std::invalid_argument("compute_v_d: m must be in [0, n]");
  ColumnStats stats;
  stats.n = n;
  stats.column_sums = column_sums(a);

  // e_k and S_k are homogeneous of degree k, so scaling the inputs by
  // n^{-1/2} yields V_k and D_k directly without large intermediates.
  std::vector<Complex> scaled = stats.column_sums;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Complex& c : scaled) c *= scale;

  stats.v = elementary_symmetric_direct(scaled, m);
  stats.d = power_sums(scaled, m);
  stats.recursion_residual = v_recursion_residual(stats.v, stats.d, scaled);
  if (stats.recursion_residual > kVRecursionTolerance) {
    std::ostringstream msg;
    msg << "compute_v_d: V/D recursion self-check failed, residual " << stats.recursion_residual;
    throw std::logic_error(msg.str());
  }
  return stats;
}

}  // namespace permapprox
