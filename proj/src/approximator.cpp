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

#include "permapprox/approximator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "permapprox/distributions.hpp"
#include "permapprox/hermite.hpp"

namespace permapprox {

namespace {

void require(bool ok, const char* constraint) {
  if (!ok) throw std::invalid_argument(std::string("ApproxConfig: constraint violated: ") + constraint);
}

void require_nonzero_mean(Complex mu) {
  if (mu == Complex{}) throw std::invalid_argument("mean mu must be nonzero (z = 1/mu is undefined)");
}

}  // namespace

void validate(const ApproxConfig& cfg) {
  require(0.0 < cfg.c, "0 < c");
  require(cfg.c < cfg.nu, "c < nu");
  require(cfg.nu < 0.125, "nu < 1/8");
  require(0.0 < cfg.gamma, "0 < gamma");
  require(cfg.gamma < cfg.beta, "gamma < beta");
  require(cfg.beta < 0.5, "beta < 1/2");
  require(cfg.gamma < cfg.nu - cfg.c, "gamma < nu - c");
  require(0.0 < cfg.rho_ptas, "0 < rho_ptas");
  require(cfg.rho_ptas < 0.125 - cfg.c, "rho_ptas < 1/8 - c");
  require(0.0 < cfg.eps && cfg.eps < 1.0, "0 < eps < 1");
}

ApproxConfig default_config(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("default_config: eps must lie in (0, 1)");
  ApproxConfig cfg;
  cfg.eps = eps;
  return cfg;
}

int truncation_order(const ApproxConfig& config, int n) {
  const double t = std::ceil(std::log(static_cast<double>(n)) + std::log(1.0 / config.eps));
  return std::max(1, static_cast<int>(t));
}

double v1_threshold(int n) { return n < 3 ? 0.0 : std::log(std::log(static_cast<double>(n))); }

bool z_admissible(const ApproxConfig& config, int n, Complex z) {
  return std::abs(z) <= std::pow(std::log(static_cast<double>(n)), config.c);
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Truncated: return "truncated";
    case Algorithm::Simple: return "simple";
    case Algorithm::Ptas: return "ptas";
  }
  return "simple";
}

std::string_view to_string(EstimateKind kind) {
  switch (kind) {
    case EstimateKind::Truncated: return "truncated";
    case EstimateKind::Simple: return "simple";
    case EstimateKind::ExactFallback: return "exact-fallback";
  }
  return "simple";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "truncated") return Algorithm::Truncated;
  if (name == "simple") return Algorithm::Simple;
  if (name == "ptas") return Algorithm::Ptas;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

LogComplex permanent_scale(Complex mu, int n) {
  if (mu == Complex{}) return LogComplex::zero();
  const double nd = static_cast<double>(n);
  return LogComplex::from_log_polar(nd * std::log(std::abs(mu)) + std::lgamma(nd + 1.0), nd * std::arg(mu));
}

Estimate approx_truncated(const ComplexMatrix& r, Complex mu, const ApproxConfig& config) {
  return approx_truncated(r, mu, config, truncation_order(config, r.n()));
}

Estimate approx_truncated(const ComplexMatrix& r, Complex mu, const ApproxConfig& config, int t) {
  validate(config);
  require_nonzero_mean(mu);
  if (t < 0) throw std::invalid_argument("approx_truncated: t must be non-negative");
  const int n = r.n();
  const int order = std::min(t, n);
  const Complex z = 1.0 / mu;

  const ComplexMatrix a = centered_matrix(r, mu);
  const CoefficientOptions options{config.coefficient_budget, config.ryser_max_n, config.threads};
  const CoefficientSeries series = coefficients_up_to(a, order, options);
  const Complex normalized = truncated_series(series, z, order);

  Estimate est;
  est.value = permanent_scale(mu, n) * LogComplex::from_complex(normalized);
  est.algorithm = EstimateKind::Truncated;
  est.t_used = order;
  est.z = z;
  est.z_admissible = z_admissible(config, n, z);
  est.coefficient_method = series.method;
  return est;
}

Estimate approx_simple(const ComplexMatrix& r, Complex mu, Complex xi, const ApproxConfig& config) {
  require_nonzero_mean(mu);
  const int n = r.n();
  const Complex z = 1.0 / mu;
  // V_1 = n^{-1} sum_{i,j} (R_ij - mu).
  const double nd = static_cast<double>(n);
  Complex centered_total{};
  for (const Complex& x : r.entries()) centered_total += x - mu;
  const Complex v1 = centered_total / nd;

  Estimate est;
  est.value = permanent_scale(mu, n) * closed_form_estimator(SurrogateInputs{v1, xi, z});
  est.algorithm = EstimateKind::Simple;
  est.z = z;
  est.z_admissible = z_admissible(config, n, z);
  return est;
}

Estimate approx_ptas(const ComplexMatrix& r, Complex mu, Complex xi, const ApproxConfig& config) {
  validate(config);
  require_nonzero_mean(mu);
  const int n = r.n();
  if (config.eps > std::pow(static_cast<double>(n), -config.rho_ptas)) return approx_simple(r, mu, xi, config);

  if (n > config.ryser_max_n) {
    std::ostringstream msg;
    msg << "approx_ptas: eps=" << config.eps << " <= n^-rho=" << std::pow(static_cast<double>(n), -config.rho_ptas)
        << " requires the exact 2^n Ryser fallback, but n=" << n << " exceeds the Ryser guard "
        << config.ryser_max_n << " (beyond desk scale)";
    throw CapacityError(msg.str());
  }
  Estimate est;
  est.value = permanent_ryser(r, RyserOptions{config.ryser_max_n, config.threads, false});
  est.algorithm = EstimateKind::ExactFallback;
  est.z = 1.0 / mu;
  est.z_admissible = z_admissible(config, n, est.z);
  return est;
}

}  // namespace permapprox
