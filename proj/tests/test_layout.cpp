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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "orcp/layout.hpp"
#include "orcp/popularity.hpp"

using Catch::Matchers::WithinAbs;
using orcp::backhaul_mass;
using orcp::build_catalog;
using orcp::build_layout;
using orcp::Catalog;
using orcp::CacheLayout;
using orcp::LayoutParams;
using orcp::owner_of_rank;
using orcp::slot_rank;
using orcp::specific_mass;
using orcp::sum_specific_mass;

namespace {

// Enumeration oracle: f_j as the direct pmf sum over the materialized list.
double enumerated_mass(int bs, const LayoutParams& p, const Catalog& cat) {
  const CacheLayout layout = build_layout(p);
  double mass = 0.0;
  for (const int rank : layout.per_bs_specific[bs - 1]) {
    mass += cat.pmf(rank);
  }
  return mass;
}

}  // namespace

TEST_CASE("serpentine slot mapping", "[layout]") {
  CHECK(slot_rank(1, 1, {3, 4, 0}) == 1);
  CHECK(slot_rank(2, 1, {3, 4, 2}) == 8);   // 2 + 2*3 + 1 - 1
  CHECK(slot_rank(3, 2, {3, 5, 2}) == 10);  // 2 + 2*3 + 2

  const LayoutParams p{3, 4, 2};
  CHECK_THROWS_AS(slot_rank(0, 1, p), std::invalid_argument);
  CHECK_THROWS_AS(slot_rank(3, 1, p), std::invalid_argument);  // only M-R=2 slots
  CHECK_THROWS_AS(slot_rank(1, 0, p), std::invalid_argument);
  CHECK_THROWS_AS(slot_rank(1, 4, p), std::invalid_argument);
  CHECK_THROWS_AS(slot_rank(1, 1, LayoutParams{0, 4, 2}), std::invalid_argument);
  CHECK_THROWS_AS(slot_rank(1, 1, LayoutParams{3, 4, 5}), std::invalid_argument);
}

TEST_CASE("materialized layouts", "[layout]") {
  const CacheLayout fully_redundant = build_layout({2, 2, 2});
  CHECK(fully_redundant.per_bs_specific[0].empty());
  CHECK(fully_redundant.per_bs_specific[1].empty());

  const CacheLayout diverse = build_layout({2, 2, 0});
  CHECK(diverse.per_bs_specific[0] == std::vector<int>{1, 4});
  CHECK(diverse.per_bs_specific[1] == std::vector<int>{2, 3});

  const CacheLayout mixed = build_layout({3, 3, 1});
  std::set<int> all;
  for (const auto& ranks : mixed.per_bs_specific) {
    for (const int rank : ranks) {
      CHECK(all.insert(rank).second);  // pairwise disjoint
    }
  }
  CHECK(all == std::set<int>{2, 3, 4, 5, 6, 7});
}

TEST_CASE("coverage: specific lists partition the rank range", "[layout]") {
  for (int n = 1; n <= 20; ++n) {
    for (int m = 1; m <= 50; ++m) {
      for (int r = 0; r <= m; ++r) {
        const LayoutParams p{n, m, r};
        const CacheLayout layout = build_layout(p);
        const auto total = orcp::specific_total(p);
        std::vector<char> seen(static_cast<std::size_t>(total), 0);
        std::int64_t count = 0;
        for (int j = 1; j <= n; ++j) {
          const auto& ranks = layout.per_bs_specific[j - 1];
          REQUIRE(static_cast<int>(ranks.size()) == m - r);
          for (const int rank : ranks) {
            REQUIRE(rank > r);
            REQUIRE(rank <= r + total);
            REQUIRE(seen[rank - r - 1] == 0);
            seen[rank - r - 1] = 1;
            ++count;
            REQUIRE(owner_of_rank(rank, p) == j);
          }
        }
        REQUIRE(count == total);
      }
    }
  }
}

TEST_CASE("owner lookup rejects non-specific ranks", "[layout]") {
  const LayoutParams p{3, 4, 2};
  CHECK_THROWS_AS(owner_of_rank(2, p), std::invalid_argument);   // redundant
  CHECK_THROWS_AS(owner_of_rank(9, p), std::invalid_argument);   // past range
}

TEST_CASE("specific mass closed form", "[layout]") {
  const Catalog uniform8 = build_catalog(8, 0.0);
  CHECK(specific_mass(1, {2, 2, 2}, uniform8) == 0.0);
  CHECK(specific_mass(2, {2, 2, 2}, uniform8) == 0.0);
  CHECK_THAT(specific_mass(1, {2, 2, 0}, uniform8), WithinAbs(0.25, 1e-15));
  CHECK_THAT(specific_mass(2, {2, 2, 1}, uniform8), WithinAbs(0.125, 1e-15));

  CHECK_THROWS_AS(specific_mass(0, {2, 2, 0}, uniform8), std::invalid_argument);
  CHECK_THROWS_AS(specific_mass(3, {2, 2, 0}, uniform8), std::invalid_argument);
  // rank range 3*3 exceeds the 8-file catalog
  CHECK_THROWS_AS(specific_mass(1, {3, 3, 0}, uniform8), std::invalid_argument);
  CHECK_THROWS_AS(backhaul_mass({3, 3, 0}, uniform8), std::invalid_argument);
}

TEST_CASE("closed form equals enumeration across shapes", "[layout]") {
  for (const double s : {0.0, 0.6, 0.8, 1.2}) {
    for (int n = 1; n <= 7; n += 2) {
      for (int m = 1; m <= 13; m += 3) {
        const Catalog cat = build_catalog(2 * m * n, s);
        for (int r = 0; r <= m; ++r) {
          const LayoutParams p{n, m, r};
          for (int j = 1; j <= n; ++j) {
            REQUIRE_THAT(specific_mass(j, p, cat),
                         WithinAbs(enumerated_mass(j, p, cat), 1e-12));
          }
        }
      }
    }
  }
}

TEST_CASE("probability split covers everything", "[layout]") {
  for (const double s : {0.0, 0.8}) {
    const Catalog cat = build_catalog(600, s);
    for (int n = 1; n <= 6; ++n) {
      for (int r = 0; r <= 10; ++r) {
        const LayoutParams p{n, 10, r};
        double redundant = 0.0;
        for (int k = 1; k <= r; ++k) redundant += cat.pmf(k);
        const double split =
            redundant + sum_specific_mass(p, cat) + backhaul_mass(p, cat);
        REQUIRE_THAT(split, WithinAbs(1.0, 1e-12));
      }
    }
  }
}

TEST_CASE("redundancy shrinks diversity monotonically", "[layout]") {
  const Catalog cat = build_catalog(400, 0.8);
  for (const int n : {2, 5}) {
    double prev_backhaul = -1.0;
    double prev_specific = 2.0;
    for (int r = 0; r <= 20; ++r) {
      const LayoutParams p{n, 20, r};
      const double bh = backhaul_mass(p, cat);
      const double sp = sum_specific_mass(p, cat);
      CHECK(bh >= prev_backhaul);
      CHECK(sp <= prev_specific);
      prev_backhaul = bh;
      prev_specific = sp;
    }
  }
}

TEST_CASE("backhaul mass boundary cases", "[layout]") {
  const Catalog uniform8 = build_catalog(8, 0.0);
  CHECK_THAT(backhaul_mass({2, 2, 0}, uniform8), WithinAbs(0.5, 1e-15));
  CHECK_THAT(backhaul_mass({2, 2, 2}, uniform8), WithinAbs(0.75, 1e-15));
  const Catalog cat = build_catalog(12, 0.7);
  CHECK(backhaul_mass({1, 12, 0}, cat) == 0.0);  // everything cached
}
