// Copyright 2026 The tanglekit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace tanglekit {

/// Counter-based splittable generator (SplitMix64 core). Every stochastic
/// operation in the library takes an explicit 64-bit seed and derives
/// independent substreams with split(), so whole test suites are
/// bit-reproducible. Not cryptographic.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Stateless mix of (seed, stream) into a fresh seed. Used to hand each
  /// trial / block / site its own independent stream.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    return mix(seed + 0x9e3779b97f4a7c15ULL * (stream + 1));
  }

  Rng split(std::uint64_t stream) const { return Rng(derive(state_, stream)); }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; avoids std::normal_distribution so the
  /// stream is identical across standard library implementations.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - next_uniform();  // (0, 1], keeps log finite
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  /// Complex Gaussian with independent standard-normal real/imag parts.
  std::complex<double> next_complex_normal() {
    const double re = next_normal();
    const double im = next_normal();
    return {re, im};
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace tanglekit
