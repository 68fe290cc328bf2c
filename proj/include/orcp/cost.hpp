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

#ifndef ORCP_COST_HPP
#define ORCP_COST_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "orcp/layout.hpp"
#include "orcp/popularity.hpp"

namespace orcp {

/**
 * How the RAN component is aggregated.
 *
 * paper_literal: c_RAN = alpha * N * sum_j f_j, the aggregate double-sum
 * form. Every station is counted as fetching every specific file, including
 * its own.
 *
 * per_request: c_RAN = alpha * (N-1)/N * sum_j f_j, the expected RAN cost of
 * a single request arriving at a uniformly chosen station, with self-hits
 * free. This is the form a request-level simulation reproduces, and the
 * default. For N = 1 it is identically 0.
 *
 * The backhaul component is alpha * mu_br * f_Bh in both modes.
 */
enum class AccountingMode { paper_literal, per_request };

/// Unit transmission costs: alpha per byte within the RAN, and
/// beta = alpha * mu_br per byte over the backhaul, with mu_br >= 1.
struct CostParams {
  double alpha = 1.0;
  double mu_br = 1.0;
  AccountingMode mode = AccountingMode::per_request;
};

inline void validate(const CostParams& c) {
  if (!std::isfinite(c.alpha) || c.alpha < 0.0) {
    throw std::invalid_argument("CostParams: alpha must be finite and >= 0");
  }
  if (!std::isfinite(c.mu_br) || c.mu_br < 1.0) {
    throw std::invalid_argument("CostParams: mu_br must be finite and >= 1");
  }
}

/// Transmission cost inside the RAN under the selected accounting mode.
inline double ran_cost(const LayoutParams& p, const Catalog& cat,
                       const CostParams& c) {
  validate(c);
  const double specific = sum_specific_mass(p, cat);
  switch (c.mode) {
    case AccountingMode::paper_literal:
      return c.alpha * p.bs_count * specific;
    case AccountingMode::per_request:
      if (p.bs_count == 1) return 0.0;
      return c.alpha * (static_cast<double>(p.bs_count - 1) / p.bs_count) *
             specific;
  }
  throw std::logic_error("ran_cost: unknown accounting mode");
}

/// Backhaul transmission cost alpha * mu_br * f_Bh (mode independent).
inline double backhaul_cost(const LayoutParams& p, const Catalog& cat,
                            const CostParams& c) {
  validate(c);
  return c.alpha * c.mu_br * backhaul_mass(p, cat);
}

inline double total_cost(const LayoutParams& p, const Catalog& cat,
                         const CostParams& c) {
  return ran_cost(p, cat, c) + backhaul_cost(p, cat, c);
}

/// One point of the redundancy tradeoff curve. Infeasible points (rank range
/// past the catalog) carry NaN costs and feasible == false.
struct CostCurvePoint {
  int redundant_count = 0;
  bool feasible = false;
  double ran = std::numeric_limits<double>::quiet_NaN();
  double backhaul = std::numeric_limits<double>::quiet_NaN();
  double total = std::numeric_limits<double>::quiet_NaN();
};

/// Evaluates the full tradeoff curve for R = 0..M. The R = M point is always
/// feasible; points whose rank range exceeds the catalog are flagged.
inline std::vector<CostCurvePoint> cost_curve(int bs_count, int cache_size,
                                              const Catalog& cat,
                                              const CostParams& c) {
  validate(c);
  if (cache_size > cat.file_count()) {
    throw std::invalid_argument(
        "cost_curve: cache_size exceeds file_count, no feasible point");
  }
  std::vector<CostCurvePoint> curve;
  curve.reserve(cache_size + 1);
  for (int r = 0; r <= cache_size; ++r) {
    const LayoutParams p{bs_count, cache_size, r};
    CostCurvePoint point;
    point.redundant_count = r;
    if (distinct_cached(p) <= cat.file_count()) {
      point.feasible = true;
      point.ran = ran_cost(p, cat, c);
      point.backhaul = backhaul_cost(p, cat, c);
      point.total = point.ran + point.backhaul;
    }
    curve.push_back(point);
  }
  return curve;
}

}  // namespace orcp

#endif  // ORCP_COST_HPP
