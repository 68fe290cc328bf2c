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

#ifndef ORCP_POPULARITY_HPP
#define ORCP_POPULARITY_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace orcp {

/**
 * Zipf popularity model over a catalog of file_count files ranked 1..F by
 * decreasing popularity:
 *
 *     pmf(k) = (1 / k^s) / norm,    norm = sum_{n=1..F} 1 / n^s
 *
 * An exponent of 0 gives the uniform distribution. All files have unit size,
 * so probability mass doubles as traffic volume.
 *
 * The rank pmf and cdf are precomputed once (O(F) memory); pmf lookups and
 * tail masses are O(1) and inverse-cdf sampling is O(log F). Instances are
 * immutable after construction and safe for concurrent reads. Sampling takes
 * the uniform variate as an argument, so no generator state lives here.
 */
class Catalog {
 public:
  Catalog(int file_count, double exponent)
      : file_count_(file_count), exponent_(exponent) {
    if (file_count < 1) {
      throw std::invalid_argument("Catalog: file_count must be >= 1");
    }
    if (!std::isfinite(exponent) || exponent < 0.0) {
      throw std::invalid_argument(
          "Catalog: exponent must be finite and >= 0");
    }
    // norm by plain accumulation in ascending rank order
    norm_ = 0.0;
    for (int n = 1; n <= file_count_; ++n) {
      norm_ += 1.0 / std::pow(static_cast<double>(n), exponent_);
    }
    pmf_.resize(file_count_);
    cdf_.resize(file_count_);
    double running = 0.0;
    for (int k = 1; k <= file_count_; ++k) {
      pmf_[k - 1] = (1.0 / std::pow(static_cast<double>(k), exponent_)) / norm_;
      running = std::min(running + pmf_[k - 1], 1.0);
      cdf_[k - 1] = running;
    }
    cdf_.back() = 1.0;
  }

  int file_count() const { return file_count_; }
  double exponent() const { return exponent_; }

  /// The harmonic normalizer sum_{n=1..F} n^{-s}.
  double norm() const { return norm_; }

  /// Request probability of the file with popularity rank k, 1 <= k <= F.
  double pmf(int rank) const {
    check_rank(rank, 1, file_count_, "pmf: rank");
    return pmf_[rank - 1];
  }

  /// P(rank <= k).
  double cdf(int rank) const {
    check_rank(rank, 1, file_count_, "cdf: rank");
    return cdf_[rank - 1];
  }

  /// Total request probability of ranks k0..F. tail_mass(1) is 1 and
  /// tail_mass(F + 1) is exactly 0.
  double tail_mass(int k0) const {
    check_rank(k0, 1, file_count_ + 1, "tail_mass: k0");
    if (k0 == 1) return 1.0;
    return 1.0 - cdf_[k0 - 2];
  }

  /// Inverse-cdf sampling: the smallest rank k with cdf(k) > u, for
  /// u in [0, 1). Deterministic in u.
  int sample_rank(double u) const {
    if (!(u >= 0.0 && u < 1.0)) {
      throw std::invalid_argument("sample_rank: u must lie in [0, 1)");
    }
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<int>(it - cdf_.begin()) + 1;
  }

 private:
  static void check_rank(int value, int lo, int hi, const char* what) {
    if (value < lo || value > hi) {
      throw std::out_of_range(std::string(what) + " out of range [" +
                              std::to_string(lo) + ", " + std::to_string(hi) +
                              "]: " + std::to_string(value));
    }
  }

  int file_count_;
  double exponent_;
  double norm_;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

inline Catalog build_catalog(int file_count, double exponent) {
  return Catalog(file_count, exponent);
}

}  // namespace orcp

#endif  // ORCP_POPULARITY_HPP
