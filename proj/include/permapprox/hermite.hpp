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

#include <vector>

#include "permapprox/log_complex.hpp"
#include "permapprox/matrix.hpp"

namespace permapprox {

/// Largest order accepted by hermite_h_explicit.
inline constexpr int kHermiteExplicitMaxOrder = 60;

/// Order at which the surrogate series sum_k V'_k z^k is truncated when an
/// infinite sum is needed. Beyond k ~ |z|^4 each term at least halves.
inline constexpr int kSurrogateSeriesOrder = 200;

/// Normalized probabilists' Hermite polynomial h_k(x) = He_k(x) / k!, by
/// h_k = (x h_{k-1} - h_{k-2}) / k.
Complex hermite_h(int k, Complex x);

/// h_0(x)..h_m(x) from one pass of the recursion.
std::vector<Complex> hermite_h_sequence(int m, Complex x);

/// h_k(x) = sum_{j=0}^{k/2} (-1)^j x^{k-2j} / (j! (k-2j)! 2^j), summed in
/// extended precision with factorials in log space. Cross-check only.
/// Throws std::invalid_argument for k > 60.
Complex hermite_h_explicit(int k, Complex x);

/// max(1, |x|)^k (k / e^2)^{-k/2}, with the k = 0 value taken as 1.
double hermite_magnitude_bound(int k, double abs_x);

struct SurrogateInputs {
  /// Normalized total sum V_1 of the centered matrix.
  Complex v1;
  /// Quasi-variance of the entry distribution; |xi| <= 1.
  Complex xi;
  /// Expansion point z = 1 / mu.
  Complex z;
};

/// Tolerance of the recursion/closed-form self-check in vprime_sequence,
/// relative to the Hermite magnitude scale of each term.
inline constexpr double kVPrimeSelfCheckTolerance = 1e-8;

/// V'_0..V'_m from k V'_k = V'_{k-1} V_1 - V'_{k-2} xi, checked against the
/// closed form. Throws std::invalid_argument when |xi| > 1 and
/// std::logic_error when the two routes disagree.
std::vector<Complex> vprime_sequence(const SurrogateInputs& inputs, int m);

/// Closed form: V_1^k / k! when xi = 0, otherwise s^k h_k(V_1 / s) with s the
/// principal square root of xi.
Complex vprime_closed_form(const SurrogateInputs& inputs, int k);

/// exp(V_1 z - xi z^2 / 2), the sum of the whole surrogate series.
LogComplex closed_form_estimator(const SurrogateInputs& inputs);

/// sum_{k=0}^{m} V'_k z^k.
Complex vprime_partial_sum(const SurrogateInputs& inputs, int m);

}  // namespace permapprox
