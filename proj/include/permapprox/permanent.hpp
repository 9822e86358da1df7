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

#include "permapprox/errors.hpp"
#include "permapprox/log_complex.hpp"
#include "permapprox/matrix.hpp"

namespace permapprox {

inline constexpr int kNaiveMaxN = 10;
inline constexpr int kRyserDefaultMaxN = 30;
/// From this dimension on, the 2^n subsets are split into kRyserPartitions
/// contiguous Gray-code ranges, each re-seeded independently.
inline constexpr int kRyserPartitionMinN = 16;
inline constexpr unsigned kRyserPartitions = 64;

struct RyserOptions {
  /// Dimension guard; larger inputs raise CapacityError.
  int max_n = kRyserDefaultMaxN;
  /// Number of Gray-code partitions evaluated concurrently.
  unsigned threads = 1;
  /// Neumaier-compensated accumulation of the subset terms.
  bool compensated = false;
};

/// Sum over all n! permutations. Refuses n > 10.
LogComplex permanent_naive(const ComplexMatrix& m);

/// Ryser inclusion-exclusion over column subsets in Gray-code order,
/// O(2^n n) operations.
LogComplex permanent_ryser(const ComplexMatrix& m, const RyserOptions& options = {});

/// Per(J + z A).
LogComplex permanent_of_J_plus_zA(const ComplexMatrix& a, Complex z, const RyserOptions& options = {});

/// Ryser kernel on a raw row-major n x n block, returning the native value.
/// n == 0 yields 1. Partitions are spread over up to `threads` workers; the
/// result does not depend on `threads`.
Complex ryser_kernel(std::span<const Complex> entries, int n, bool compensated = false, unsigned threads = 1);

}  // namespace permapprox
