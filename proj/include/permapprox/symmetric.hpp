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

#include <span>
#include <vector>

#include "permapprox/matrix.hpp"

namespace permapprox {

/// Column statistics of a centered matrix A.
struct ColumnStats {
  int n = 0;
  /// C_j = n^{-1/2} sum_i A(i, j).
  std::vector<Complex> column_sums;
  /// V_k = n^{-k/2} e_k(C), k = 0..m.
  std::vector<Complex> v;
  /// D_k = n^{-k/2} S_k(C), k = 0..m (D_0 = S_0 = n).
  std::vector<Complex> d;
  /// Largest scaled residual of the V/D Newton recursion over k = 2..m.
  double recursion_residual = 0.0;
};

/// Tolerance of the V/D recursion self-check in compute_v_d.
inline constexpr double kVRecursionTolerance = 1e-8;

std::vector<Complex> column_sums(const ComplexMatrix& a);

/// S_1..S_m with S_k = sum_i x_i^k (complex powers, not moduli).
/// Returned vector has m + 1 entries; slot 0 holds S_0 = xs.size().
std::vector<Complex> power_sums(std::span<const Complex> xs, int m);

/// e_0..e_m from the coefficients of prod_i (1 + x_i y).
std::vector<Complex> elementary_symmetric_direct(std::span<const Complex> xs, int m);

/// e_0..e_m from power sums by Newton's identities:
///   e_m = (1/m) sum_{k=0}^{m-1} (-1)^k e_{m-k-1} S_{k+1}.
std::vector<Complex> elementary_symmetric_newton(std::span<const Complex> xs, int m);

/// Residual of k V_k = V_{k-1} V_1 - V_{k-2} D_2 + sum_{i=2}^{k-1} (-1)^i V_{k-1-i} D_{i+1}
/// for k = 2..m, each scaled by the sum of the magnitudes of its terms. When
/// the inputs `xs` behind v and d are given, the scale is at least the same
/// sum evaluated on |xs|, which bounds the rounding error when V_k cancels.
double v_recursion_residual(std::span<const Complex> v, std::span<const Complex> d,
                            std::span<const Complex> xs = {});

/// C, V_0..V_m, D_0..D_m. Throws std::invalid_argument unless 0 <= m <= n and
/// std::logic_error when the V/D recursion self-check exceeds its tolerance.
ColumnStats compute_v_d(const ComplexMatrix& a, int m);

}  // namespace permapprox
