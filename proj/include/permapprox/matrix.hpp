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
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace permapprox {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  /// n x n zero matrix. Throws std::invalid_argument when n < 1.
  explicit ComplexMatrix(int n);

  /// Takes ownership of n*n row-major entries; all entries must be finite.
  ComplexMatrix(int n, std::vector<Complex> entries);

  static ComplexMatrix identity(int n);
  static ComplexMatrix ones(int n);
  static ComplexMatrix constant(int n, Complex value);

  int n() const { return n_; }
  std::size_t size() const { return entries_.size(); }

  Complex& operator()(int row, int col) { return entries_[index(row, col)]; }
  const Complex& operator()(int row, int col) const { return entries_[index(row, col)]; }

  std::span<const Complex> row(int r) const {
    return {entries_.data() + static_cast<std::size_t>(r) * n_, static_cast<std::size_t>(n_)};
  }
  std::span<const Complex> entries() const { return entries_; }
  std::span<Complex> entries() { return entries_; }

  /// Sum of all entries.
  Complex total() const;

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * n_ + static_cast<std::size_t>(col);
  }

  int n_;
  std::vector<Complex> entries_;
};

/// J + z * A, where J is the all-ones matrix.
ComplexMatrix ones_plus_scaled(const ComplexMatrix& a, Complex z);

/// Applies a row permutation and a column permutation: out(i, j) = m(rows[i], cols[j]).
ComplexMatrix permute(const ComplexMatrix& m, std::span<const int> rows, std::span<const int> cols);

}  // namespace permapprox
