/*
 * Copyright 2026 The orcp Authors
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

#ifndef ORCP_RNG_HPP
#define ORCP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace orcp {

/// One SplitMix64 scrambling step.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives the seed of an independent substream (trial index, sweep row, ...)
/// from a base seed. Distinct stream ids give decorrelated generators.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream));
}

/// Seeded pseudorandom source. Wraps std::mt19937_64 but converts raw bits to
/// doubles itself, so a given seed produces the same stream on every standard
/// library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Poisson draw by sequential CDF inversion; one uniform consumed per call.
  /// Valid for mean up to ~700, where exp(-mean) stays normal.
  int poisson(double mean) {
    if (!(mean > 0.0) || mean > 700.0) {
      throw std::invalid_argument("poisson: mean must be in (0, 700]");
    }
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    int k = 0;
    // cap guards against the cdf saturating a few ulp below 1
    const int cap = static_cast<int>(mean + 60.0 * std::sqrt(mean) + 60.0);
    while (u >= cdf && k < cap) {
      ++k;
      p *= mean / k;
      cdf += p;
    }
    return k;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace orcp

#endif  // ORCP_RNG_HPP
