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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "permapprox/matrix.hpp"

namespace testing_support {

using permapprox::Complex;
using permapprox::ComplexMatrix;

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  return {g(rng), g(rng)};
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::vector<Complex> entries(static_cast<std::size_t>(n) * n);
  for (auto& e : entries) e = random_complex(rng, scale);
  return ComplexMatrix(n, std::move(entries));
}

inline std::vector<Complex> random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::vector<Complex> xs(n);
  for (auto& x : xs) x = random_complex(rng, scale);
  return xs;
}

inline double rel(Complex got, Complex want) {
  const double denom = std::abs(want);
  return denom == 0.0 ? std::abs(got) : std::abs(got - want) / denom;
}

}  // namespace testing_support
