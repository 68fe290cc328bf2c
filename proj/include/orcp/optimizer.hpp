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

#ifndef ORCP_OPTIMIZER_HPP
#define ORCP_OPTIMIZER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "orcp/cost.hpp"
#include "orcp/layout.hpp"
#include "orcp/popularity.hpp"
#include "orcp/rng.hpp"

namespace orcp {

/**
 * Particle swarm configuration for the redundancy-ratio search over
 * eta in [0, 1].
 *
 * The defaults (the `literal` preset) carry a v_max of 1e-4, which keeps
 * particles nearly stationary: the search succeeds mainly through dense
 * random initialization, and the growing inertia w(t) = 0.9 + 0.5 t/T is
 * harmless only because of the clamp. The `practical` preset swaps in a
 * conventional tuning (v_max = 0.1, c1 = c2 = 2, inertia decreasing from
 * 0.9 to 0.4) that actually moves the swarm.
 */
struct PsoConfig {
  int swarm_size = 200;             // m
  int max_iters = 100;              // T
  double cognitive = 0.1;           // c1, pull toward the particle's own best
  double social = 10.0;             // c2, pull toward the global best
  double v_max = 1e-4;              // velocity magnitude clamp
  double v_init_half_range = 0.01;  // initial velocity uniform in [-h, h]
  double inertia_base = 0.9;        // w(t) = base + slope * t / T
  double inertia_slope = 0.5;
  int stall_window = 20;  // stop after this many iterations with no new best
  std::uint64_t seed = 0;

  static PsoConfig literal() { return {}; }

  static PsoConfig practical() {
    PsoConfig cfg;
    cfg.cognitive = 2.0;
    cfg.social = 2.0;
    cfg.v_max = 0.1;
    cfg.inertia_slope = -0.5;
    return cfg;
  }
};

inline void validate(const PsoConfig& cfg) {
  if (cfg.swarm_size < 1) {
    throw std::invalid_argument("PsoConfig: swarm_size must be >= 1");
  }
  if (cfg.max_iters < 1) {
    throw std::invalid_argument("PsoConfig: max_iters must be >= 1");
  }
  if (!(cfg.v_max > 0.0)) {
    throw std::invalid_argument("PsoConfig: v_max must be > 0");
  }
  if (!(cfg.v_init_half_range > 0.0)) {
    throw std::invalid_argument("PsoConfig: v_init_half_range must be > 0");
  }
  if (cfg.stall_window < 1) {
    throw std::invalid_argument("PsoConfig: stall_window must be >= 1");
  }
}

/// Result of a redundancy-ratio optimization. r_opt is the floor mapping of
/// eta_opt and cost_opt is the objective re-evaluated at eta_opt, never a
/// cached best. trace holds the global-best cost after each iteration.
struct OptimResult {
  double eta_opt = 0.0;
  int r_opt = 0;
  double cost_opt = 0.0;
  int iterations_run = 0;
  std::int64_t evaluations = 0;
  std::vector<double> trace;
};

/// The floor mapping from a continuous ratio to a redundant-file count:
/// R = floor(eta * M), with eta = 1 mapping to R = M.
inline int redundant_count_for(double eta, int cache_size) {
  if (eta >= 1.0) return cache_size;
  const int r = static_cast<int>(std::floor(eta * cache_size));
  return std::clamp(r, 0, cache_size);
}

/// Total transmission cost at redundancy ratio eta in [0, 1].
inline double objective(double eta, int bs_count, int cache_size,
                        const Catalog& cat, const CostParams& c) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("objective: eta must lie in [0, 1]");
  }
  const LayoutParams p{bs_count, cache_size, redundant_count_for(eta, cache_size)};
  return total_cost(p, cat, c);
}

/**
 * Exact solver: evaluates the total cost at every feasible R in 0..M and
 * returns the global minimum. Only M + 1 candidates exist since eta * M is
 * integral. Ties break toward the smaller R. Infeasible R values (rank range
 * past the catalog) are skipped.
 */
inline OptimResult exhaustive_oracle(int bs_count, int cache_size,
                                     const Catalog& cat, const CostParams& c) {
  validate(c);
  int best_r = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  std::int64_t evals = 0;
  for (int r = 0; r <= cache_size; ++r) {
    const LayoutParams p{bs_count, cache_size, r};
    if (distinct_cached(p) > cat.file_count()) continue;
    const double cost = total_cost(p, cat, c);
    ++evals;
    if (cost < best_cost) {
      best_cost = cost;
      best_r = r;
    }
  }
  if (best_r < 0) {
    throw std::invalid_argument(
        "exhaustive_oracle: no feasible redundancy level for this catalog");
  }
  OptimResult result;
  result.r_opt = best_r;
  result.eta_opt =
      best_r == cache_size ? 1.0 : static_cast<double>(best_r) / cache_size;
  if (redundant_count_for(result.eta_opt, cache_size) != best_r) {
    // rounding in R/M landed one bucket low; use the bucket midpoint
    result.eta_opt = (best_r + 0.5) / cache_size;
  }
  result.cost_opt = best_cost;
  result.iterations_run = 0;
  result.evaluations = evals;
  return result;
}

/// Snapshot handed to a PsoObserver after each iteration's position update.
struct PsoState {
  int iteration;
  std::span<const double> positions;
  std::span<const double> velocities;
  double best_cost;
};

using PsoObserver = std::function<void(const PsoState&)>;

/**
 * Adapted particle swarm search for the optimal redundancy ratio.
 *
 * Per iteration: evaluate the objective at every particle, update personal
 * bests and the global best, then move the swarm:
 *
 *     v_i <- w(t) v_i + c1 u1 (pbest_i - eta_i) + c2 u2 (gbest - eta_i)
 *     v_i <- sign(v_i) * min(|v_i|, v_max)
 *     eta_i <- clamp(eta_i + v_i, 0, 1)
 *
 * with u1, u2 fresh uniform [0,1) draws per particle per iteration, particle
 * index ascending. Initialization draws, per particle: first the velocity
 * (uniform in [-v_init_half_range, +v_init_half_range]), then the position
 * (uniform in [0, 1]). Runs are bit-reproducible given cfg.seed.
 *
 * Terminates after max_iters iterations, or earlier once the global best has
 * not improved for stall_window consecutive iterations.
 *
 * Requires the fully cacheable regime file_count >= bs_count * cache_size so
 * every eta in [0, 1] is feasible.
 */
inline OptimResult pso_optimize(int bs_count, int cache_size,
                                const Catalog& cat, const CostParams& c,
                                const PsoConfig& cfg,
                                const PsoObserver& observer = {}) {
  validate(c);
  validate(cfg);
  if (static_cast<std::int64_t>(bs_count) * cache_size > cat.file_count()) {
    throw std::invalid_argument(
        "pso_optimize: requires file_count >= bs_count * cache_size so every "
        "eta in [0, 1] is feasible");
  }

  Rng rng(cfg.seed);
  const int m = cfg.swarm_size;
  std::vector<double> pos(m);
  std::vector<double> vel(m);
  std::vector<double> pbest_pos(m, 0.0);
  std::vector<double> pbest_cost(m, std::numeric_limits<double>::infinity());
  for (int i = 0; i < m; ++i) {
    vel[i] = (2.0 * rng.uniform() - 1.0) * cfg.v_init_half_range;
    pos[i] = rng.uniform();
  }

  double gbest_pos = pos[0];
  double gbest_cost = std::numeric_limits<double>::infinity();
  std::int64_t evals = 0;
  std::vector<double> trace;
  trace.reserve(cfg.max_iters);

  int t = 0;
  int stall = 0;
  while (t < cfg.max_iters) {
    ++t;
    for (int i = 0; i < m; ++i) {
      const double q = objective(pos[i], bs_count, cache_size, cat, c);
      ++evals;
      if (q < pbest_cost[i]) {
        pbest_cost[i] = q;
        pbest_pos[i] = pos[i];
      }
    }
    int best = 0;
    for (int i = 1; i < m; ++i) {
      if (pbest_cost[i] < pbest_cost[best]) best = i;
    }
    if (pbest_cost[best] < gbest_cost) {
      gbest_cost = pbest_cost[best];
      gbest_pos = pbest_pos[best];
      stall = 0;
    } else {
      ++stall;
    }
    trace.push_back(gbest_cost);

    const double w =
        cfg.inertia_base + cfg.inertia_slope * static_cast<double>(t) / cfg.max_iters;
    for (int i = 0; i < m; ++i) {
      const double u1 = rng.uniform();
      const double u2 = rng.uniform();
      double v = w * vel[i] + cfg.cognitive * u1 * (pbest_pos[i] - pos[i]) +
                 cfg.social * u2 * (gbest_pos - pos[i]);
      if (std::abs(v) > cfg.v_max) v = std::copysign(cfg.v_max, v);
      vel[i] = v;
      pos[i] = std::clamp(pos[i] + v, 0.0, 1.0);
    }
    if (observer) observer({t, pos, vel, gbest_cost});
    if (stall >= cfg.stall_window) break;
  }

  OptimResult result;
  result.eta_opt = gbest_pos;
  result.r_opt = redundant_count_for(gbest_pos, cache_size);
  result.cost_opt = objective(gbest_pos, bs_count, cache_size, cat, c);
  ++evals;
  result.iterations_run = t;
  result.evaluations = evals;
  result.trace = std::move(trace);
  return result;
}

}  // namespace orcp

#endif  // ORCP_OPTIMIZER_HPP
