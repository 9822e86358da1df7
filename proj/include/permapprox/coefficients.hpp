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

#include <string_view>
#include <vector>

#include "permapprox/errors.hpp"
#include "permapprox/matrix.hpp"
#include "permapprox/permanent.hpp"

namespace permapprox {

/// Default cap on C(n,k)^2 * 2^k * k for a single submatrix coefficient.
inline constexpr double kDefaultCoefficientBudget = 1e9;

enum class CoefficientMethod { Submatrix, Interpolation };

std::string_view to_string(CoefficientMethod method);
/// Accepts "submatrix" and "interp" / "interpolation".
CoefficientMethod parse_coefficient_method(std::string_view name);

/// Coefficients a_0..a_m of Per(J + zA) / n! = sum_k a_k z^k.
struct CoefficientSeries {
  int n = 0;
  std::vector<Complex> coeffs;
  CoefficientMethod method = CoefficientMethod::Submatrix;

  int max_order() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct CoefficientOptions {
  double budget = kDefaultCoefficientBudget;
  int ryser_max_n = kRyserDefaultMaxN;
  unsigned threads = 1;
};

/// ln(n (n-1) ... (n-k+1)). Throws std::invalid_argument unless 0 <= k <= n.
double log_falling_factorial(int n, int k);

/// C(n,k)^2 * 2^k * k, the work estimate of coefficient_submatrix.
double submatrix_work(int n, int k);

/// (n + 1) * 2^n * n, the work estimate of coefficients_interpolation.
double interpolation_work(int n);

/// a_k = (1 / n^(k)) * sum of Per(B) over all k x k submatrices B of A.
/// Throws CapacityError when submatrix_work(n, k) exceeds the budget.
Complex coefficient_submatrix(const ComplexMatrix& a, int k, const CoefficientOptions& options = {});

/// a_0..a_kmax via coefficient_submatrix.
CoefficientSeries coefficients_submatrix(const ComplexMatrix& a, int k_max, const CoefficientOptions& options = {});

/// Full series a_0..a_n recovered from Per(J + w A) / n! at the n + 1 roots
/// of unity w by the inverse DFT. a_0 is set to exactly 1.
CoefficientSeries coefficients_interpolation(const ComplexMatrix& a, const CoefficientOptions& options = {});

/// a_0..a_kmax by whichever method has the smaller work estimate and fits
/// the configured guards. Throws CapacityError when neither does.
CoefficientSeries coefficients_up_to(const ComplexMatrix& a, int k_max, const CoefficientOptions& options = {});

/// sum_{k=0}^{t} a_k z^k by Horner's rule. Throws std::invalid_argument when
/// t exceeds the available order.
Complex truncated_series(const CoefficientSeries& series, Complex z, int t);

}  // namespace permapprox
