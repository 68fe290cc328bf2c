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

#include <cmath>

#include "orcp/simulator.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using orcp::AccountingMode;
using orcp::build_catalog;
using orcp::Catalog;
using orcp::CostParams;
using orcp::Rng;
using orcp::run_trial;
using orcp::sample_bs_count;
using orcp::SimConfig;
using orcp::TrialResult;
using orcp::validate_model;

namespace {
const CostParams kPerRequest{1.0, 4.0, AccountingMode::per_request};
}

TEST_CASE("station count sampling", "[simulator]") {
  SimConfig cfg;
  cfg.fixed_bs_count = 6;
  Rng rng(1);
  CHECK(sample_bs_count(cfg, rng) == 6);

  // defaults: mean of the zero-truncated draw is mu / (1 - exp(-mu))
  SimConfig defaults;
  CHECK_THAT(orcp::poisson_mean(defaults), WithinRel(6.28318530718, 1e-9));
  Rng draw_rng(977);
  double sum = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const int n = sample_bs_count(defaults, draw_rng);
    REQUIRE(n >= 1);
    sum += n;
  }
  const double truncated =
      orcp::truncated_poisson_mean(orcp::poisson_mean(defaults));
  CHECK_THAT(sum / draws, WithinRel(truncated, 0.01));

  // large mean: truncation negligible
  SimConfig large;
  large.radius = 1000.0;
  large.bs_density = 100.0 / (std::numbers::pi * 1e6);
  CHECK_THAT(orcp::poisson_mean(large), WithinRel(100.0, 1e-12));
  Rng large_rng(31);
  sum = 0.0;
  for (int i = 0; i < draws; ++i) sum += sample_bs_count(large, large_rng);
  CHECK_THAT(sum / draws, WithinRel(100.0, 0.01));
}

TEST_CASE("sim config validation", "[simulator]") {
  SimConfig bad;
  bad.radius = 0.0;
  Rng rng(1);
  CHECK_THROWS_AS(sample_bs_count(bad, rng), std::invalid_argument);
  bad = SimConfig{};
  bad.fixed_bs_count = 0;
  CHECK_THROWS_AS(sample_bs_count(bad, rng), std::invalid_argument);
}

TEST_CASE("station positions stay on the disk", "[simulator]") {
  SimConfig cfg;
  Rng rng(61);
  const auto points = orcp::sample_bs_positions(cfg, 5000, rng);
  REQUIRE(points.size() == 5000);
  double mean_radius = 0.0;
  for (const auto& p : points) {
    const double radius = std::hypot(p.x, p.y);
    REQUIRE(radius <= cfg.radius);
    mean_radius += radius;
  }
  // uniform over a disk: E[radius] = 2r/3
  CHECK_THAT(mean_radius / 5000.0, WithinRel(2.0 * cfg.radius / 3.0, 0.02));

  Rng again(61);
  const auto replay = orcp::sample_bs_positions(cfg, 5000, again);
  CHECK(replay[0].x == points[0].x);
  CHECK(replay[4999].y == points[4999].y);
  CHECK_THROWS_AS(orcp::sample_bs_positions(cfg, 0, rng),
                  std::invalid_argument);
}

TEST_CASE("fully redundant caches never touch the RAN", "[simulator]") {
  const Catalog cat = build_catalog(50, 0.8);
  Rng rng(7);
  const TrialResult t = run_trial(4, 5, 5, cat, kPerRequest, 20000, rng);
  CHECK(t.empirical_ran_fraction == 0.0);
  CHECK_THAT(t.local_hit_fraction + t.empirical_backhaul_fraction,
             WithinAbs(1.0, 1e-12));
}

TEST_CASE("every request is charged exactly one tariff", "[simulator]") {
  const Catalog cat = build_catalog(200, 0.8);
  Rng rng(11);
  const TrialResult t = run_trial(3, 10, 4, cat, kPerRequest, 50000, rng);
  CHECK_THAT(t.local_hit_fraction + t.empirical_ran_fraction +
                 t.empirical_backhaul_fraction,
             WithinAbs(1.0, 1e-12));
  CHECK_THAT(t.empirical_cost_per_request,
             WithinAbs(kPerRequest.alpha * t.empirical_ran_fraction +
                           kPerRequest.alpha * kPerRequest.mu_br *
                               t.empirical_backhaul_fraction,
                       1e-12));
}

TEST_CASE("empirical cost converges to the analytic model", "[simulator]") {
  const Catalog uniform8 = build_catalog(8, 0.0);
  Rng rng(2026);
  const TrialResult t = run_trial(2, 2, 0, uniform8, kPerRequest, 200000, rng);
  CHECK_THAT(t.analytic_cost_per_request, WithinAbs(2.25, 1e-15));
  CHECK(std::abs(t.empirical_cost_per_request - t.analytic_cost_per_request) <=
        3.0 * t.std_error);

  // local hits: redundant mass plus the station's own specific share
  const Catalog cat = build_catalog(500, 0.8);
  Rng rng2(5);
  const orcp::LayoutParams p{6, 50, 6};
  const TrialResult big = run_trial(6, 50, 6, cat, kPerRequest, 200000, rng2);
  double redundant = 0.0;
  for (int k = 1; k <= 6; ++k) redundant += cat.pmf(k);
  const double expected_local =
      redundant + orcp::sum_specific_mass(p, cat) / 6.0;
  const double se =
      std::sqrt(expected_local * (1.0 - expected_local) / 200000.0);
  CHECK_THAT(big.local_hit_fraction, WithinAbs(expected_local, 3.0 * se));
}

TEST_CASE("trials are bit-identical for a given seed", "[simulator]") {
  const Catalog cat = build_catalog(300, 0.8);
  Rng a(909), b(909);
  const TrialResult ta = run_trial(5, 8, 3, cat, kPerRequest, 30000, a);
  const TrialResult tb = run_trial(5, 8, 3, cat, kPerRequest, 30000, b);
  CHECK(ta.empirical_cost_per_request == tb.empirical_cost_per_request);
  CHECK(ta.empirical_ran_fraction == tb.empirical_ran_fraction);
  CHECK(ta.empirical_backhaul_fraction == tb.empirical_backhaul_fraction);
  CHECK(ta.local_hit_fraction == tb.local_hit_fraction);
  CHECK(ta.std_error == tb.std_error);
}

TEST_CASE("trial input validation", "[simulator]") {
  const Catalog cat = build_catalog(100, 0.8);
  Rng rng(1);
  CostParams literal = kPerRequest;
  literal.mode = AccountingMode::paper_literal;
  CHECK_THROWS_AS(run_trial(2, 4, 1, cat, literal, 1000, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_trial(2, 4, 1, cat, kPerRequest, 0, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_trial(30, 4, 0, cat, kPerRequest, 1000, rng),
                  std::invalid_argument);  // 120 ranks > 100 files
}

TEST_CASE("model validation over a redundancy grid", "[simulator]") {
  const Catalog uniform8 = build_catalog(8, 0.0);
  SimConfig cfg;
  cfg.fixed_bs_count = 2;
  cfg.requests_per_trial = 50000;
  cfg.trials = 2;
  cfg.seed = 40;
  const auto report = validate_model(cfg, 2, uniform8, kPerRequest, {0, 1, 2});
  REQUIRE(report.rows.size() == 3);
  for (const auto& row : report.rows) {
    REQUIRE(row.feasible);
    CHECK(std::abs(row.z) <= 3.0);
    CHECK(row.pass);
  }
  CHECK(report.all_pass());

  // empty grid, empty report
  CHECK(validate_model(cfg, 2, uniform8, kPerRequest, {}).rows.empty());

  // infeasible point flagged, the rest evaluated
  const SimConfig cfg3 = [] {
    SimConfig c;
    c.fixed_bs_count = 3;
    c.requests_per_trial = 10000;
    c.trials = 1;
    c.seed = 8;
    return c;
  }();
  const auto mixed = validate_model(cfg3, 3, uniform8, kPerRequest, {0, 2, 3});
  REQUIRE(mixed.rows.size() == 3);
  CHECK_FALSE(mixed.rows[0].feasible);  // 9 ranks > 8 files
  CHECK(mixed.rows[1].feasible);
  CHECK(mixed.rows[2].feasible);
  CHECK(mixed.all_pass());

  // deterministic report
  const auto again = validate_model(cfg3, 3, uniform8, kPerRequest, {0, 2, 3});
  for (std::size_t i = 0; i < mixed.rows.size(); ++i) {
    CHECK(mixed.rows[i].empirical == again.rows[i].empirical);
    CHECK(mixed.rows[i].z == again.rows[i].z);
  }
}
