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

#include "permapprox/log_complex.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace permapprox {

namespace {

constexpr double kCancellationLog = -300.0;
constexpr double kMaxExpArg = 709.0;

}  // namespace

double wrap_phase(double phase) {
  double r = std::remainder(phase, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

LogComplex LogComplex::from_log_polar(double log_mag, double phase) {
  LogComplex out;
  out.log_mag_ = log_mag;
  out.phase_ = wrap_phase(phase);
  out.is_zero_ = false;
  return out;
}

LogComplex LogComplex::exp(std::complex<double> w) { return from_log_polar(w.real(), w.imag()); }

LogComplex LogComplex::from_complex(std::complex<double> w) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
    throw std::invalid_argument("LogComplex: value must be finite");
  if (w == std::complex<double>{}) return zero();
  // std::abs goes through hypot, so it does not overflow for large parts.
  return from_log_polar(std::log(std::abs(w)), std::arg(w));
}

std::complex<double> LogComplex::to_complex() const {
  if (is_zero_) return {};
  return std::polar(std::exp(log_mag_), phase_);
}

bool LogComplex::fits_double() const {
  return is_zero_ || (log_mag_ < kMaxExpArg && log_mag_ > -kMaxExpArg);
}

LogComplex LogComplex::inverse() const {
  if (is_zero_) throw std::domain_error("LogComplex: inverse of zero");
  return from_log_polar(-log_mag_, -phase_);
}

LogComplex operator*(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() || b.is_zero()) return LogComplex::zero();
  return LogComplex::from_log_polar(a.log_mag() + b.log_mag(), a.phase() + b.phase());
}

LogComplex operator/(const LogComplex& a, const LogComplex& b) { return a * b.inverse(); }

LogComplex operator-(const LogComplex& a) {
  if (a.is_zero()) return a;
  return LogComplex::from_log_polar(a.log_mag(), a.phase() + std::numbers::pi);
}

LogComplex operator+(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const LogComplex& big = a.log_mag() >= b.log_mag() ? a : b;
  const LogComplex& small = a.log_mag() >= b.log_mag() ? b : a;

  // sin(pi) is not zero in floating point; an exact half-turn must cancel.
  const double delta = wrap_phase(small.phase() - big.phase());
  const double r = std::exp(small.log_mag() - big.log_mag());
  const double s = delta == std::numbers::pi ? 0.0 : std::sin(delta);
  const std::complex<double> factor(1.0 + r * std::cos(delta), r * s);
  const double factor_abs = std::abs(factor);
  if (factor_abs == 0.0 || std::log(factor_abs) < kCancellationLog) return LogComplex::zero();
  return LogComplex::from_log_polar(big.log_mag() + std::log(factor_abs),
                                    big.phase() + std::arg(factor));
}

double relative_error(const LogComplex& estimate, const LogComplex& truth) {
  if (truth.is_zero()) throw std::domain_error("relative_error: truth is zero, relative error undefined");
  if (estimate.is_zero()) return 1.0;
  // estimate / truth = e^w; 1 - e^w is evaluated through expm1 so that small
  // errors keep full relative precision.
  const double a = estimate.log_mag() - truth.log_mag();
  const double b = wrap_phase(estimate.phase() - truth.phase());
  if (a >= kMaxExpArg) return std::numeric_limits<double>::max();
  const double half_sin = std::sin(0.5 * b);
  const double re = std::expm1(a) * std::cos(b) - 2.0 * half_sin * half_sin;
  const double im = std::exp(a) * std::sin(b);
  return std::min(std::hypot(re, im), std::numeric_limits<double>::max());
}

}  // namespace permapprox
