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

#include "permapprox/distributions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace permapprox {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = splitmix64(base + kGolden);
  h = splitmix64(h ^ (a + 0x632BE59BD9B4E019ULL));
  return splitmix64(h ^ (b + 0x8CB92BA72F3D8DD7ULL));
}

std::uint64_t EntryStream::next_u64() {
  state_ += kGolden;
  return splitmix64(state_);
}

double EntryStream::next_unit() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

std::pair<double, double> EntryStream::next_normal_pair() {
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(angle), r * std::sin(angle)};
}

std::string_view to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::ComplexGaussian: return "complex-gaussian";
    case DistributionKind::RealGaussian: return "real-gaussian";
    case DistributionKind::ShiftedRademacher: return "shifted-rademacher";
    case DistributionKind::Custom: return "custom";
  }
  return "custom";
}

DistributionKind parse_distribution_kind(std::string_view name) {
  if (name == "complex-gaussian") return DistributionKind::ComplexGaussian;
  if (name == "real-gaussian") return DistributionKind::RealGaussian;
  if (name == "shifted-rademacher") return DistributionKind::ShiftedRademacher;
  throw std::invalid_argument("unknown distribution kind '" + std::string(name) + "'");
}

EntryDistribution EntryDistribution::with_mean(Complex mu) const {
  EntryDistribution copy = *this;
  copy.mu_ = mu;
  return copy;
}

EntryDistribution EntryDistribution::custom(std::string name, Complex mu, Complex xi, double rho,
                                            CenteredSampler sampler) {
  if (std::abs(xi) > 1.0 + 1e-12) throw std::invalid_argument("custom distribution: |xi| must not exceed 1");
  if (!(rho >= 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("custom distribution: rho must be finite and non-negative");
  if (!sampler) throw std::invalid_argument("custom distribution: sampler is empty");
  EntryDistribution d;
  d.kind_ = DistributionKind::Custom;
  d.name_ = std::move(name);
  d.mu_ = mu;
  d.xi_ = xi;
  d.rho_ = rho;
  d.sampler_ = std::move(sampler);
  return d;
}

EntryDistribution builtin_distribution(DistributionKind kind, Complex mu) {
  EntryDistribution d;
  d.kind_ = kind;
  d.name_ = std::string(to_string(kind));
  d.mu_ = mu;
  switch (kind) {
    case DistributionKind::ComplexGaussian:
      // |g|^2 ~ Exp(1), so E|g|^3 = Gamma(5/2).
      d.xi_ = 0.0;
      d.rho_ = 0.75 * std::sqrt(std::numbers::pi);
      d.sampler_ = [](EntryStream& s) {
        auto [a, b] = s.next_normal_pair();
        return Complex(a, b) * std::numbers::sqrt2 * 0.5;
      };
      break;
    case DistributionKind::RealGaussian:
      d.xi_ = 1.0;
      d.rho_ = 2.0 * std::sqrt(2.0 / std::numbers::pi);
      d.sampler_ = [](EntryStream& s) { return Complex(s.next_normal_pair().first, 0.0); };
      break;
    case DistributionKind::ShiftedRademacher:
      d.xi_ = 1.0;
      d.rho_ = 1.0;
      d.sampler_ = [](EntryStream& s) { return Complex((s.next_u64() >> 63) ? 1.0 : -1.0, 0.0); };
      break;
    case DistributionKind::Custom:
      throw std::invalid_argument("builtin_distribution: 'custom' is not a built-in family");
  }
  return d;
}

EntryDistribution builtin_distribution(std::string_view kind, Complex mu) {
  return builtin_distribution(parse_distribution_kind(kind), mu);
}

MatrixSample sample_matrix(const EntryDistribution& dist, int n, std::uint64_t seed) {
  ComplexMatrix m(n);
  auto out = m.entries();
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    EntryStream stream(mix_seed(seed, idx));
    out[idx] = dist.sample(stream);
  }
  return MatrixSample{std::move(m), seed, dist};
}

ComplexMatrix centered_matrix(const ComplexMatrix& r, Complex mu) {
  ComplexMatrix a = r;
  for (Complex& v : a.entries()) v -= mu;
  return a;
}

ComplexMatrix centered_matrix(const MatrixSample& sample) { return centered_matrix(sample.matrix, sample.dist.mu()); }

}  // namespace permapprox
