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

#include <optional>
#include <string_view>

#include "permapprox/coefficients.hpp"
#include "permapprox/errors.hpp"
#include "permapprox/log_complex.hpp"
#include "permapprox/matrix.hpp"
#include "permapprox/permanent.hpp"

namespace permapprox {

/// Parameters of the average-case estimators.
///
/// The tuple (c, nu, gamma, beta) must satisfy
///   0 < c < nu < 1/8,  0 < gamma < beta < 1/2,  0 < gamma < nu - c,
/// the PTAS exponent must satisfy 0 < rho_ptas < 1/8 - c, and 0 < eps < 1.
/// The truncation order is t = ceil(ln n + ln(1/eps)) and the concentration
/// threshold for |V_1| is theta(n) = ln ln n.
struct ApproxConfig {
  double c = 0.10;
  double nu = 0.12;
  double gamma = 0.015;
  double beta = 0.40;
  double rho_ptas = 0.02;
  double eps = 0.5;

  // Execution limits; not part of the parameter system.
  int ryser_max_n = kRyserDefaultMaxN;
  double coefficient_budget = kDefaultCoefficientBudget;
  unsigned threads = 1;
};

/// Throws std::invalid_argument naming the first violated constraint.
void validate(const ApproxConfig& config);

/// c=0.10, nu=0.12, gamma=0.015, beta=0.40, rho_ptas=0.02 with the given eps.
ApproxConfig default_config(double eps);

/// ceil(ln n + ln(1/eps)), at least 1.
int truncation_order(const ApproxConfig& config, int n);

/// ln ln n (zero for n < 3).
double v1_threshold(int n);

/// |z| <= (ln n)^c, the admissibility condition on the expansion point.
bool z_admissible(const ApproxConfig& config, int n, Complex z);

/// Estimator requested by a caller.
enum class Algorithm { Truncated, Simple, Ptas };

/// Route that actually produced an estimate.
enum class EstimateKind { Truncated, Simple, ExactFallback };

std::string_view to_string(Algorithm algorithm);
std::string_view to_string(EstimateKind kind);
/// Accepts "truncated", "simple", "ptas".
Algorithm parse_algorithm(std::string_view name);

struct Estimate {
  LogComplex value;
  EstimateKind algorithm = EstimateKind::Simple;
  std::optional<int> t_used;
  /// z = 1 / mu as used.
  Complex z;
  /// False when |z| > (ln n)^c; the estimate is still well defined.
  bool z_admissible = true;
  /// Coefficient method used by the truncated estimator.
  std::optional<CoefficientMethod> coefficient_method;
};

/// mu^n n! sum_{k=0}^{t} a_k z^k with A = R - mu J, z = 1/mu and t from the
/// config. Throws std::invalid_argument for mu = 0 and CapacityError when the
/// coefficients exceed both budgets.
Estimate approx_truncated(const ComplexMatrix& r, Complex mu, const ApproxConfig& config);

/// As above with an explicit truncation order t (clamped to n).
Estimate approx_truncated(const ComplexMatrix& r, Complex mu, const ApproxConfig& config, int t);

/// mu^n n! exp(V_1 z - xi z^2 / 2), linear in the number of entries.
Estimate approx_simple(const ComplexMatrix& r, Complex mu, Complex xi, const ApproxConfig& config = default_config(0.5));

/// approx_simple when eps > n^{-rho_ptas}, otherwise the exact Ryser
/// permanent. Throws CapacityError when the exact branch exceeds the Ryser guard.
Estimate approx_ptas(const ComplexMatrix& r, Complex mu, Complex xi, const ApproxConfig& config);

/// mu^n n!, the scale factor between Per(R) and Per(J + zA) / n!.
LogComplex permanent_scale(Complex mu, int n);

}  // namespace permapprox
