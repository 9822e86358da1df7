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
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "permapprox/matrix.hpp"

namespace permapprox {

/// SplitMix64 finalizer: a bijective 64-bit mixing function.
std::uint64_t splitmix64(std::uint64_t x);

/// Combines a base seed with two counters into one well-mixed 64-bit seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

/// Counter-based random stream. Draw i of the stream keyed by k is
/// splitmix64(k + (i + 1) * 0x9E3779B97F4A7C15), i.e. the SplitMix64 sequence
/// started at k. The value therefore depends only on (key, i).
class EntryStream {
 public:
  explicit EntryStream(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64();
  /// Uniform in (0, 1].
  double next_unit();
  /// Standard normal via Box-Muller; consumes two draws and returns both
  /// normals of the pair.
  std::pair<double, double> next_normal_pair();

 private:
  std::uint64_t state_;
};

enum class DistributionKind { ComplexGaussian, RealGaussian, ShiftedRademacher, Custom };

std::string_view to_string(DistributionKind kind);
/// Accepts "complex-gaussian", "real-gaussian", "shifted-rademacher".
DistributionKind parse_distribution_kind(std::string_view name);

/// Draws one centered (mean zero, unit variance) value from the stream.
using CenteredSampler = std::function<Complex(EntryStream&)>;

/// An entry distribution with mean mu, unit variance E|x - mu|^2 = 1, declared
/// quasi-variance xi = E(x - mu)^2 and third absolute central moment rho.
class EntryDistribution {
 public:
  DistributionKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  Complex mu() const { return mu_; }
  Complex xi() const { return xi_; }
  double rho() const { return rho_; }

  /// Same family, different mean.
  EntryDistribution with_mean(Complex mu) const;

  Complex sample(EntryStream& stream) const { return mu_ + sampler_(stream); }

  /// A user-supplied family. The moments must be declared analytically; the
  /// sampler draws the centered part. Throws std::invalid_argument when
  /// |xi| > 1 or rho is negative or not finite.
  static EntryDistribution custom(std::string name, Complex mu, Complex xi, double rho, CenteredSampler sampler);

 private:
  friend EntryDistribution builtin_distribution(DistributionKind kind, Complex mu);
  EntryDistribution() = default;

  DistributionKind kind_ = DistributionKind::Custom;
  std::string name_;
  Complex mu_;
  Complex xi_;
  double rho_ = 0.0;
  CenteredSampler sampler_;
};

/// Built-in families, all with unit variance:
///  - complex-gaussian: real and imaginary parts independent N(0, 1/2); xi = 0, rho = 3 sqrt(pi) / 4
///  - real-gaussian: N(0, 1); xi = 1, rho = 2 sqrt(2 / pi)
///  - shifted-rademacher: +-1 with probability 1/2; xi = 1, rho = 1
EntryDistribution builtin_distribution(DistributionKind kind, Complex mu);
EntryDistribution builtin_distribution(std::string_view kind, Complex mu);

/// A sampled matrix together with what is needed to regenerate it.
struct MatrixSample {
  ComplexMatrix matrix;
  std::uint64_t seed;
  EntryDistribution dist;
};

/// Entry (i, j) is dist.sample(EntryStream(mix_seed(seed, i * n + j))).
MatrixSample sample_matrix(const EntryDistribution& dist, int n, std::uint64_t seed);

/// A = R - mu J, the centered matrix whose entries have mean zero.
ComplexMatrix centered_matrix(const MatrixSample& sample);
ComplexMatrix centered_matrix(const ComplexMatrix& r, Complex mu);

}  // namespace permapprox
