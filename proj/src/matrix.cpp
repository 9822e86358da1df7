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

#include "permapprox/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace permapprox {

ComplexMatrix::ComplexMatrix(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
  entries_.assign(static_cast<std::size_t>(n) * n, Complex{});
}

ComplexMatrix::ComplexMatrix(int n, std::vector<Complex> entries) : n_(n), entries_(std::move(entries)) {
  if (n < 1) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
  if (entries_.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("ComplexMatrix: expected " + std::to_string(n * n) + " entries, got " +
                                std::to_string(entries_.size()));
  for (const Complex& v : entries_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("ComplexMatrix: entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::ones(int n) { return constant(n, 1.0); }

ComplexMatrix ComplexMatrix::constant(int n, Complex value) {
  ComplexMatrix m(n);
  std::fill(m.entries_.begin(), m.entries_.end(), value);
  return m;
}

Complex ComplexMatrix::total() const { return std::accumulate(entries_.begin(), entries_.end(), Complex{}); }

ComplexMatrix ones_plus_scaled(const ComplexMatrix& a, Complex z) {
  ComplexMatrix x(a.n());
  auto src = a.entries();
  auto dst = x.entries();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = 1.0 + z * src[i];
  return x;
}

ComplexMatrix permute(const ComplexMatrix& m, std::span<const int> rows, std::span<const int> cols) {
  const int n = m.n();
  if (rows.size() != static_cast<std::size_t>(n) || cols.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("permute: permutation length does not match dimension");
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

}  // namespace permapprox
