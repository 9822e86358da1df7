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

#include "permapprox/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace permapprox {

namespace {

using ComplexL = std::complex<long double>;

template <typename T>
T int_power(T base, int exponent) {
  T result = 1;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace

Complex hermite_h(int k, Complex x) {
  if (k < 0) throw std::invalid_argument("hermite_h: order must be non-negative");
  Complex prev = 1.0;
  if (k == 0) return prev;
  Complex cur = x;
  for (int j = 2; j <= k; ++j) {
    const Complex next = (x * cur - prev) / static_cast<double>(j);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<Complex> hermite_h_sequence(int m, Complex x) {
  if (m < 0) throw std::invalid_argument("hermite_h_sequence: order must be non-negative");
  std::vector<Complex> h(m + 1);
  h[0] = 1.0;
  if (m >= 1) h[1] = x;
  for (int j = 2; j <= m; ++j) h[j] = (x * h[j - 1] - h[j - 2]) / static_cast<double>(j);
  return h;
}

Complex hermite_h_explicit(int k, Complex x) {
  if (k < 0 || k > kHermiteExplicitMaxOrder)
    throw std::invalid_argument("hermite_h_explicit: order must be in [0, 60]");
  const ComplexL xl(x.real(), x.imag());
  const long double ln2 = std::numbers::ln2_v<long double>;
  ComplexL sum = 0;
  for (int j = 0; 2 * j <= k; ++j) {
    const int p = k - 2 * j;
    const long double log_denominator = std::lgamma(static_cast<long double>(j + 1)) +
                                        std::lgamma(static_cast<long double>(p + 1)) + j * ln2;
    const ComplexL term = int_power(xl, p) * std::exp(-log_denominator);
    sum += (j & 1) ? -term : term;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

double hermite_magnitude_bound(int k, double abs_x) {
  if (k == 0) return 1.0;
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(std::max(1.0, abs_x)) - 0.5 * kd * (std::log(kd) - 2.0));
}

Complex vprime_closed_form(const SurrogateInputs& inputs, int k) {
  if (k < 0) throw std::invalid_argument("vprime_closed_form: order must be non-negative");
  if (inputs.xi == Complex{}) {
    Complex value = 1.0;
    for (int j = 1; j <= k; ++j) value *= inputs.v1 / static_cast<double>(j);
    return value;
  }
  const Complex root = std::sqrt(inputs.xi);
  return int_power(root, k) * hermite_h(k, inputs.v1 / root);
}

std::vector<Complex> vprime_sequence(const SurrogateInputs& inputs, int m) {
  if (m < 0) throw std::invalid_argument("vprime_sequence: order must be non-negative");
  if (std::abs(inputs.xi) > 1.0 + 1e-12) throw std::invalid_argument("vprime_sequence: |xi| must not exceed 1");

  std::vector<Complex> v(m + 1);
  v[0] = 1.0;
  if (m >= 1) v[1] = inputs.v1;
  for (int k = 2; k <= m; ++k) v[k] = (v[k - 1] * inputs.v1 - v[k - 2] * inputs.xi) / static_cast<double>(k);

  const double abs_xi = std::abs(inputs.xi);
  const double abs_arg = abs_xi == 0.0 ? 0.0 : std::abs(inputs.v1) / std::sqrt(abs_xi);
  for (int k = 0; k <= m; ++k) {
    const Complex closed = vprime_closed_form(inputs, k);
    const double scale = abs_xi == 0.0
                             ? std::abs(closed)
                             : std::pow(abs_xi, 0.5 * k) * hermite_magnitude_bound(k, abs_arg);
    // Values deep in the subnormal range carry no relative precision.
    const double tolerance = std::max(kVPrimeSelfCheckTolerance * std::max(std::abs(v[k]), scale), 1e-290);
    if (std::abs(v[k] - closed) > tolerance) {
      std::ostringstream msg;
      msg << "vprime_sequence: recursion and closed form disagree at k=" << k << " (" << v[k] << " vs " << closed
          << ")";
      throw std::logic_error(msg.str());
    }
  }
  return v;
}

LogComplex closed_form_estimator(const SurrogateInputs& inputs) {
  return LogComplex::exp(inputs.v1 * inputs.z - 0.5 * inputs.xi * inputs.z * inputs.z);
}

Complex vprime_partial_sum(const SurrogateInputs& inputs, int m) {
  const auto v = vprime_sequence(inputs, m);
  Complex acc{};
  for (int k = m; k >= 0; --k) acc = acc * inputs.z + v[k];
  return acc;
}

}  // namespace permapprox
