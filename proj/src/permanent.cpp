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

#include "permapprox/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "permapprox/parallel.hpp"

namespace permapprox {

namespace {

struct Accumulator {
  double re = 0.0, im = 0.0;
  double re_comp = 0.0, im_comp = 0.0;
  bool compensated = false;

  static void neumaier(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  void add(double x, double y) {
    if (compensated) {
      neumaier(re, re_comp, x);
      neumaier(im, im_comp, y);
    } else {
      re += x;
      im += y;
    }
  }

  Complex value() const { return {re + re_comp, im + im_comp}; }
};

// Signed sum of the subset terms for Gray-code indices [begin, end).
Complex ryser_range(std::span<const Complex> entries, int n, std::uint64_t begin, std::uint64_t end,
                    bool compensated) {
  std::vector<double> sum_re(n, 0.0), sum_im(n, 0.0);
  const auto at = [&](int i, int j) { return entries[static_cast<std::size_t>(i) * n + j]; };

  std::uint64_t gray = begin ^ (begin >> 1);
  for (int j = 0; j < n; ++j) {
    if (!((gray >> j) & 1U)) continue;
    for (int i = 0; i < n; ++i) {
      sum_re[i] += at(i, j).real();
      sum_im[i] += at(i, j).imag();
    }
  }
  // Sign of the term is (-1)^|S|; every Gray step changes |S| by one.
  double sign = (std::popcount(gray) & 1) ? -1.0 : 1.0;

  Accumulator acc;
  acc.compensated = compensated;

  for (std::uint64_t k = begin;;) {
    if (gray != 0) {
      double p_re = sum_re[0], p_im = sum_im[0];
      for (int i = 1; i < n; ++i) {
        const double r = p_re * sum_re[i] - p_im * sum_im[i];
        p_im = p_re * sum_im[i] + p_im * sum_re[i];
        p_re = r;
      }
      acc.add(sign * p_re, sign * p_im);
    }
    if (++k >= end) break;
    const int j = std::countr_zero(k);
    gray ^= std::uint64_t{1} << j;
    if ((gray >> j) & 1U) {
      for (int i = 0; i < n; ++i) {
        sum_re[i] += at(i, j).real();
        sum_im[i] += at(i, j).imag();
      }
    } else {
      for (int i = 0; i < n; ++i) {
        sum_re[i] -= at(i, j).real();
        sum_im[i] -= at(i, j).imag();
      }
    }
    sign = -sign;
  }
  return acc.value();
}

void check_guard(int n, int max_n, const char* what) {
  if (n > max_n)
    throw CapacityError(std::string(what) + ": dimension " + std::to_string(n) + " exceeds guard " +
                        std::to_string(max_n));
}

}  // namespace

Complex ryser_kernel(std::span<const Complex> entries, int n, bool compensated, unsigned threads) {
  if (n == 0) return 1.0;
  if (n > 62) throw CapacityError("ryser_kernel: dimension " + std::to_string(n) + " cannot be enumerated");
  const std::uint64_t total = std::uint64_t{1} << n;
  // The partition layout depends on n alone, so the rounding pattern (and
  // the result, bit for bit) is the same for every thread count.
  const std::uint64_t parts = n >= kRyserPartitionMinN ? kRyserPartitions : 1;
  std::vector<Complex> partial(parts);
  parallel_for(parts, threads, [&](std::size_t p) {
    const std::uint64_t begin = total / parts * p;
    const std::uint64_t end = p + 1 == parts ? total : total / parts * (p + 1);
    partial[p] = ryser_range(entries, n, begin, end, compensated);
  });
  Complex sum = std::accumulate(partial.begin(), partial.end(), Complex{});
  return (n & 1) ? -sum : sum;
}

LogComplex permanent_naive(const ComplexMatrix& m) {
  const int n = m.n();
  check_guard(n, kNaiveMaxN, "permanent_naive");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex sum{};
  do {
    Complex prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= m(i, perm[i]);
    sum += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return LogComplex::from_complex(sum);
}

LogComplex permanent_ryser(const ComplexMatrix& m, const RyserOptions& options) {
  check_guard(m.n(), options.max_n, "permanent_ryser");
  return LogComplex::from_complex(ryser_kernel(m.entries(), m.n(), options.compensated, options.threads));
}

LogComplex permanent_of_J_plus_zA(const ComplexMatrix& a, Complex z, const RyserOptions& options) {
  check_guard(a.n(), options.max_n, "permanent_of_J_plus_zA");
  return permanent_ryser(ones_plus_scaled(a, z), options);
}

}  // namespace permapprox
