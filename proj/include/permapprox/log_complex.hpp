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

#include <complex>

namespace permapprox {

/// A complex number stored as (natural log of magnitude, phase).
///
/// Permanents of n x n matrices grow like n!, which leaves the double range
/// around n = 170. Storing the logarithm keeps products and sums of such
/// values finite. The phase is kept in (-pi, pi] and is never recovered from
/// a complex logarithm of an exponential, so no wraparound is introduced.
class LogComplex {
 public:
  /// The zero value.
  LogComplex() = default;

  static LogComplex zero() { return LogComplex{}; }

  /// exp(log_mag + i * phase); phase is wrapped into (-pi, pi].
  static LogComplex from_log_polar(double log_mag, double phase);

  /// exp(w) for a complex exponent w.
  static LogComplex exp(std::complex<double> w);

  static LogComplex from_complex(std::complex<double> w);

  static LogComplex from_real(double x) { return from_complex({x, 0.0}); }

  /// Native value. Overflows to infinity when log_mag exceeds ~709.
  std::complex<double> to_complex() const;

  /// True when to_complex() yields a finite, non-denormal value.
  bool fits_double() const;

  bool is_zero() const { return is_zero_; }
  double log_mag() const { return log_mag_; }
  double phase() const { return phase_; }

  LogComplex inverse() const;

 private:
  double log_mag_ = 0.0;
  double phase_ = 0.0;
  bool is_zero_ = true;
};

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phase);

LogComplex operator*(const LogComplex& a, const LogComplex& b);
LogComplex operator/(const LogComplex& a, const LogComplex& b);

/// Sum computed by factoring out the operand with the larger magnitude.
/// A residual below e^-300 of the larger operand is reported as exact zero.
LogComplex operator+(const LogComplex& a, const LogComplex& b);
LogComplex operator-(const LogComplex& a);
inline LogComplex operator-(const LogComplex& a, const LogComplex& b) { return a + (-b); }

/// |1 - estimate / truth|, evaluated in the log domain and clamped to the
/// largest finite double. Throws std::domain_error when truth is zero.
double relative_error(const LogComplex& estimate, const LogComplex& truth);

}  // namespace permapprox
