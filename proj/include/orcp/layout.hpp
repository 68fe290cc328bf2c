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

#ifndef ORCP_LAYOUT_HPP
#define ORCP_LAYOUT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "orcp/popularity.hpp"

namespace orcp {

/**
 * Cache placement parameters: bs_count base stations, each with room for
 * cache_size files, of which the redundant_count most popular files are
 * replicated at every station. The remaining cache_size - redundant_count
 * slots per station hold station-specific files that no other station
 * caches, assigned by the serpentine rank mapping (see slot_rank).
 *
 * The redundancy ratio eta equals redundant_count / cache_size.
 */
struct LayoutParams {
  int bs_count = 1;         // N
  int cache_size = 1;       // M, files per station
  int redundant_count = 0;  // R, in [0, M]
};

inline void validate(const LayoutParams& p) {
  if (p.bs_count < 1) {
    throw std::invalid_argument("LayoutParams: bs_count must be >= 1");
  }
  if (p.cache_size < 1) {
    throw std::invalid_argument("LayoutParams: cache_size must be >= 1");
  }
  if (p.redundant_count < 0 || p.redundant_count > p.cache_size) {
    throw std::invalid_argument(
        "LayoutParams: redundant_count must lie in [0, cache_size]");
  }
}

/// Number of station-specific cache slots across all stations, (M - R) * N.
inline std::int64_t specific_total(const LayoutParams& p) {
  return static_cast<std::int64_t>(p.cache_size - p.redundant_count) *
         p.bs_count;
}

/// Number of distinct ranks cached anywhere in the RAN, R + (M - R) * N.
inline std::int64_t distinct_cached(const LayoutParams& p) {
  return p.redundant_count + specific_total(p);
}

/// Checks that the layout's rank range fits the catalog (F >= R + (M-R)N).
/// Layouts that would spill past rank F are rejected, never truncated.
inline void validate_with(const LayoutParams& p, const Catalog& cat) {
  validate(p);
  if (distinct_cached(p) > cat.file_count()) {
    throw std::invalid_argument(
        "layout: cached rank range R + (M-R)*N = " +
        std::to_string(distinct_cached(p)) + " exceeds file_count " +
        std::to_string(cat.file_count()));
  }
}

/**
 * The serpentine (boustrophedon) mapping from a specific slot to a
 * popularity rank. Slot rows are filled left to right for odd slot indices
 * and right to left for even ones, which balances popularity mass across
 * stations:
 *
 *     rank = R + (m - 1) * N + j    when m is odd
 *     rank = R + m * N + 1 - j      when m is even
 *
 * for slot index m in 1..M-R and station index j in 1..N.
 */
inline int slot_rank(int slot, int bs, const LayoutParams& p) {
  validate(p);
  const int specific_slots = p.cache_size - p.redundant_count;
  if (slot < 1 || slot > specific_slots) {
    throw std::invalid_argument("slot_rank: slot index out of range [1, " +
                                std::to_string(specific_slots) +
                                "]: " + std::to_string(slot));
  }
  if (bs < 1 || bs > p.bs_count) {
    throw std::invalid_argument("slot_rank: bs index out of range [1, " +
                                std::to_string(p.bs_count) +
                                "]: " + std::to_string(bs));
  }
  const int r = p.redundant_count;
  const int n = p.bs_count;
  return (slot % 2 == 1) ? r + (slot - 1) * n + bs : r + slot * n + 1 - bs;
}

/// Inverse of slot_rank: the station that caches rank `rank` specifically.
/// Requires R < rank <= R + (M-R)*N.
inline int owner_of_rank(int rank, const LayoutParams& p) {
  validate(p);
  const std::int64_t d = static_cast<std::int64_t>(rank) - p.redundant_count;
  if (d < 1 || d > specific_total(p)) {
    throw std::invalid_argument("owner_of_rank: rank " + std::to_string(rank) +
                                " is not station-specific");
  }
  const int n = p.bs_count;
  const std::int64_t slot = (d + n - 1) / n;
  const std::int64_t pos = d - (slot - 1) * n;  // 1..N within the slot
  return static_cast<int>(slot % 2 == 1 ? pos : n + 1 - pos);
}

/// A materialized placement: per station, the ordered list of specific ranks
/// (the redundant set 1..R is implicit). per_bs_specific[j - 1] belongs to
/// station j.
struct CacheLayout {
  LayoutParams params;
  std::vector<std::vector<int>> per_bs_specific;
};

inline CacheLayout build_layout(const LayoutParams& p) {
  validate(p);
  CacheLayout out{p, std::vector<std::vector<int>>(p.bs_count)};
  const int specific_slots = p.cache_size - p.redundant_count;
  for (auto& ranks : out.per_bs_specific) {
    ranks.reserve(specific_slots);
  }
  for (int m = 1; m <= specific_slots; ++m) {
    for (int j = 1; j <= p.bs_count; ++j) {
      out.per_bs_specific[j - 1].push_back(slot_rank(m, j, p));
    }
  }
  return out;
}

/**
 * Total request probability f_j of station bs's specific files, evaluated in
 * closed form by pairing each odd slot with the even slot that follows it:
 *
 *   M-R even:  f_j = sum_{t=1..(M-R)/2} [pmf(R + (2t-2)N + j)
 *                                        + pmf(R + 2tN + 1 - j)]
 *   M-R odd,>1: the same sum up to (M-R-1)/2, plus pmf(R + (M-R-1)N + j)
 *   M-R = 1:   f_j = pmf(R + j)
 *   R = M:     f_j = 0
 *
 * Equivalent to summing pmf over build_layout's list for the station.
 */
inline double specific_mass(int bs, const LayoutParams& p, const Catalog& cat) {
  validate_with(p, cat);
  if (bs < 1 || bs > p.bs_count) {
    throw std::invalid_argument("specific_mass: bs index out of range [1, " +
                                std::to_string(p.bs_count) +
                                "]: " + std::to_string(bs));
  }
  const int mr = p.cache_size - p.redundant_count;
  if (mr == 0) return 0.0;
  const int r = p.redundant_count;
  const int n = p.bs_count;
  if (mr == 1) return cat.pmf(r + bs);
  double mass = 0.0;
  const int pairs = mr / 2;  // (M-R-1)/2 when odd, (M-R)/2 when even
  for (int t = 1; t <= pairs; ++t) {
    mass += cat.pmf(r + (2 * t - 2) * n + bs) + cat.pmf(r + 2 * t * n + 1 - bs);
  }
  if (mr % 2 == 1) {
    mass += cat.pmf(r + (mr - 1) * n + bs);
  }
  return mass;
}

/// Sum of specific_mass over all stations.
inline double sum_specific_mass(const LayoutParams& p, const Catalog& cat) {
  validate_with(p, cat);
  double total = 0.0;
  for (int j = 1; j <= p.bs_count; ++j) {
    total += specific_mass(j, p, cat);
  }
  return total;
}

/// Request probability f_Bh of files cached nowhere in the RAN, i.e. the
/// popularity tail past rank R + (M-R)*N. Exactly 0 when everything fits.
inline double backhaul_mass(const LayoutParams& p, const Catalog& cat) {
  validate_with(p, cat);
  return cat.tail_mass(static_cast<int>(distinct_cached(p)) + 1);
}

}  // namespace orcp

#endif  // ORCP_LAYOUT_HPP
