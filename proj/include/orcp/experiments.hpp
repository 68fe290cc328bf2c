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

#ifndef ORCP_EXPERIMENTS_HPP
#define ORCP_EXPERIMENTS_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "orcp/cost.hpp"
#include "orcp/optimizer.hpp"
#include "orcp/popularity.hpp"
#include "orcp/rng.hpp"
#include "orcp/simulator.hpp"

namespace orcp {

enum class SweepAxis { mu_br, zipf_exponent, cache_size, redundant_count };
enum class OptimizerKind { oracle, pso_literal, pso_practical };
enum class OutputFormat { csv, json };

inline const char* axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::mu_br: return "mu_br";
    case SweepAxis::zipf_exponent: return "s";
    case SweepAxis::cache_size: return "m";
    case SweepAxis::redundant_count: return "r";
  }
  return "?";
}

inline const char* mode_name(AccountingMode mode) {
  return mode == AccountingMode::paper_literal ? "paper_literal"
                                               : "per_request";
}

inline const char* optimizer_name(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::oracle: return "oracle";
    case OptimizerKind::pso_literal: return "pso_literal";
    case OptimizerKind::pso_practical: return "pso_practical";
  }
  return "?";
}

namespace detail {
inline std::string normalize_token(std::string s) {
  for (char& ch : s) {
    ch = ch == '-' ? '_' : static_cast<char>(std::tolower(
                               static_cast<unsigned char>(ch)));
  }
  return s;
}
}  // namespace detail

inline AccountingMode parse_mode(const std::string& text) {
  const std::string t = detail::normalize_token(text);
  if (t == "per_request") return AccountingMode::per_request;
  if (t == "paper_literal") return AccountingMode::paper_literal;
  throw std::invalid_argument("mode: expected per_request or paper_literal, got '" +
                              text + "'");
}

inline SweepAxis parse_axis(const std::string& text) {
  const std::string t = detail::normalize_token(text);
  if (t == "mu_br") return SweepAxis::mu_br;
  if (t == "s") return SweepAxis::zipf_exponent;
  if (t == "m") return SweepAxis::cache_size;
  if (t == "r") return SweepAxis::redundant_count;
  throw std::invalid_argument("axis: expected one of mu_br, s, m, r, got '" +
                              text + "'");
}

inline OptimizerKind parse_optimizer(const std::string& text) {
  const std::string t = detail::normalize_token(text);
  if (t == "oracle") return OptimizerKind::oracle;
  if (t == "pso_literal") return OptimizerKind::pso_literal;
  if (t == "pso_practical") return OptimizerKind::pso_practical;
  throw std::invalid_argument(
      "optimizer: expected oracle, pso_literal or pso_practical, got '" + text +
      "'");
}

inline OutputFormat parse_format(const std::string& text) {
  const std::string t = detail::normalize_token(text);
  if (t == "csv") return OutputFormat::csv;
  if (t == "json") return OutputFormat::json;
  throw std::invalid_argument("format: expected csv or json, got '" + text +
                              "'");
}

/// A sweep over one axis of the default instance (N=6 fixed or PPP-drawn,
/// M=50, F=500, s=0.8, alpha=1, mu_br=4).
struct ExperimentSpec {
  int fixed_bs_count = 6;
  bool use_ppp = false;
  double radius = 100.0;
  double bs_density = 2e-4;
  int cache_size = 50;
  int file_count = 500;
  double zipf_exponent = 0.8;
  double alpha = 1.0;
  double mu_br = 4.0;
  AccountingMode mode = AccountingMode::per_request;
  SweepAxis axis = SweepAxis::mu_br;
  std::vector<double> values;
  OptimizerKind optimizer = OptimizerKind::oracle;
  std::string output_path;  // empty: caller decides (CLI prints to stdout)
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 0;
};

inline void validate(const ExperimentSpec& spec) {
  if (spec.fixed_bs_count < 1) {
    throw std::invalid_argument("spec: fixed_n must be >= 1");
  }
  if (spec.cache_size < 1) throw std::invalid_argument("spec: m must be >= 1");
  if (spec.file_count < 1) throw std::invalid_argument("spec: f must be >= 1");
  if (!std::isfinite(spec.zipf_exponent) || spec.zipf_exponent < 0.0) {
    throw std::invalid_argument("spec: s must be finite and >= 0");
  }
  if (!std::isfinite(spec.alpha) || spec.alpha < 0.0) {
    throw std::invalid_argument("spec: alpha must be finite and >= 0");
  }
  if (!std::isfinite(spec.mu_br) || spec.mu_br < 1.0) {
    throw std::invalid_argument("spec: mu_br must be finite and >= 1");
  }
  if (!(spec.radius > 0.0)) throw std::invalid_argument("spec: radius must be > 0");
  if (!(spec.bs_density > 0.0)) {
    throw std::invalid_argument("spec: lambda must be > 0");
  }
  if (spec.values.empty()) {
    throw std::invalid_argument("spec: values must be non-empty");
  }
  for (const double v : spec.values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("spec: values must be finite");
    }
    switch (spec.axis) {
      case SweepAxis::mu_br:
        if (v < 1.0) throw std::invalid_argument("spec: mu_br values must be >= 1");
        break;
      case SweepAxis::zipf_exponent:
        if (v < 0.0) throw std::invalid_argument("spec: s values must be >= 0");
        break;
      case SweepAxis::cache_size:
        if (v < 1.0 || v != std::floor(v)) {
          throw std::invalid_argument("spec: m values must be integers >= 1");
        }
        break;
      case SweepAxis::redundant_count:
        if (v < 0.0 || v > spec.cache_size || v != std::floor(v)) {
          throw std::invalid_argument(
              "spec: r values must be integers in [0, m]");
        }
        break;
    }
  }
}

/// One sweep point. Infeasible points stay in the row list (flagged, with a
/// note) but are skipped by the emitters.
struct SweepRow {
  double axis_value = 0.0;
  bool feasible = false;
  std::string note;
  int bs_count_used = 0;
  int file_count_used = 0;
  double eta_opt = 0.0;
  int r_opt = 0;
  double cost_opt = 0.0;
  double cost_eta0 = 0.0;
  double cost_eta1 = 0.0;
  double reduction_vs_eta0_pct = 0.0;
  double reduction_vs_eta1_pct = 0.0;
  AccountingMode mode = AccountingMode::per_request;
  OptimizerKind optimizer = OptimizerKind::oracle;
  std::uint64_t seed = 0;
};

/// Fixed-point decimal rendering with 12 significant digits and no exponent
/// notation; trailing zeros trimmed. Deterministic byte output.
inline std::string format_sig12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  const int exp10 = static_cast<int>(std::floor(std::log10(std::abs(v))));
  const int decimals = std::clamp(11 - exp10, 0, 400);
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

inline constexpr const char* kSweepCsvHeader =
    "axis,eta_opt,r_opt,cost_opt,cost_eta0,cost_eta1,"
    "reduction_vs_eta0_pct,reduction_vs_eta1_pct,mode,optimizer,seed";

/// Renders feasible rows as CSV (UTF-8, LF, header always present).
inline std::string emit_csv(const std::vector<SweepRow>& rows) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const SweepRow& row : rows) {
    if (!row.feasible) continue;
    out += format_sig12(row.axis_value);
    out += ',';
    out += format_sig12(row.eta_opt);
    out += ',';
    out += std::to_string(row.r_opt);
    out += ',';
    out += format_sig12(row.cost_opt);
    out += ',';
    out += format_sig12(row.cost_eta0);
    out += ',';
    out += format_sig12(row.cost_eta1);
    out += ',';
    out += format_sig12(row.reduction_vs_eta0_pct);
    out += ',';
    out += format_sig12(row.reduction_vs_eta1_pct);
    out += ',';
    out += mode_name(row.mode);
    out += ',';
    out += optimizer_name(row.optimizer);
    out += ',';
    out += std::to_string(row.seed);
    out += '\n';
  }
  return out;
}

/// Same rows as a JSON array with the CSV field names.
inline std::string emit_json(const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const SweepRow& row : rows) {
    if (!row.feasible) continue;
    nlohmann::ordered_json obj;
    obj["axis"] = row.axis_value;
    obj["eta_opt"] = row.eta_opt;
    obj["r_opt"] = row.r_opt;
    obj["cost_opt"] = row.cost_opt;
    obj["cost_eta0"] = row.cost_eta0;
    obj["cost_eta1"] = row.cost_eta1;
    obj["reduction_vs_eta0_pct"] = row.reduction_vs_eta0_pct;
    obj["reduction_vs_eta1_pct"] = row.reduction_vs_eta1_pct;
    obj["mode"] = mode_name(row.mode);
    obj["optimizer"] = optimizer_name(row.optimizer);
    obj["seed"] = row.seed;
    doc.push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

inline std::string render_rows(const std::vector<SweepRow>& rows,
                               OutputFormat format) {
  return format == OutputFormat::csv ? emit_csv(rows) : emit_json(rows);
}

namespace detail {

inline double reduction_pct(double cost_opt, double baseline) {
  if (baseline == 0.0) return 0.0;
  return 100.0 * (1.0 - cost_opt / baseline);
}

inline double eta_for_bucket(int r, int cache_size) {
  double eta = r == cache_size ? 1.0 : static_cast<double>(r) / cache_size;
  if (redundant_count_for(eta, cache_size) != r) {
    eta = (r + 0.5) / cache_size;
  }
  return eta;
}

}  // namespace detail

/**
 * Runs the sweep: for each axis value (ascending), solves the instance with
 * the selected optimizer, evaluates the eta = 0 and eta = 1 baselines, and
 * records the reductions. PSO rows record the derived per-row seed that
 * reproduces them directly.
 *
 * For the cache-size axis the whole sweep shares one catalog size so points
 * stay comparable: file_count is raised in multiples of the configured value
 * until the largest grid point fits (max M * N <= F), and each row notes the
 * scaling. For the redundant-count axis no optimizer runs; each row is the
 * tradeoff curve evaluated at that R, so reductions may be negative there.
 */
inline std::vector<SweepRow> run_sweep(const ExperimentSpec& spec) {
  validate(spec);

  int bs_count = spec.fixed_bs_count;
  if (spec.use_ppp) {
    SimConfig sim;
    sim.radius = spec.radius;
    sim.bs_density = spec.bs_density;
    Rng rng(mix_seed(spec.seed, 0x5050));
    bs_count = sample_bs_count(sim, rng);
  }

  std::vector<double> values = spec.values;
  std::sort(values.begin(), values.end());

  int sweep_file_count = spec.file_count;
  std::string scale_note;
  if (spec.axis == SweepAxis::cache_size) {
    const double max_m = values.back();
    const std::int64_t required =
        static_cast<std::int64_t>(max_m) * bs_count;
    while (sweep_file_count < required) sweep_file_count += spec.file_count;
    if (sweep_file_count != spec.file_count) {
      scale_note = "file_count scaled to " + std::to_string(sweep_file_count) +
                   " so the largest cache size fits";
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const double value = values[idx];
    SweepRow row;
    row.axis_value = value;
    row.mode = spec.mode;
    row.optimizer = spec.optimizer;
    row.seed = mix_seed(spec.seed, idx);
    row.bs_count_used = bs_count;
    row.note = scale_note;

    int cache_size = spec.cache_size;
    double exponent = spec.zipf_exponent;
    double mu = spec.mu_br;
    int fixed_r = -1;
    switch (spec.axis) {
      case SweepAxis::mu_br: mu = value; break;
      case SweepAxis::zipf_exponent: exponent = value; break;
      case SweepAxis::cache_size: cache_size = static_cast<int>(value); break;
      case SweepAxis::redundant_count: fixed_r = static_cast<int>(value); break;
    }
    row.file_count_used = sweep_file_count;

    if (static_cast<std::int64_t>(cache_size) * bs_count > sweep_file_count) {
      row.note = "infeasible: cache_size * bs_count exceeds file_count";
      rows.push_back(std::move(row));
      continue;
    }
    row.feasible = true;

    const Catalog cat(sweep_file_count, exponent);
    CostParams cost;
    cost.alpha = spec.alpha;
    cost.mu_br = mu;
    cost.mode = spec.mode;

    if (fixed_r >= 0) {
      row.r_opt = fixed_r;
      row.eta_opt = detail::eta_for_bucket(fixed_r, cache_size);
      row.cost_opt =
          total_cost({bs_count, cache_size, fixed_r}, cat, cost);
    } else if (spec.optimizer == OptimizerKind::oracle) {
      const OptimResult res = exhaustive_oracle(bs_count, cache_size, cat, cost);
      row.eta_opt = res.eta_opt;
      row.r_opt = res.r_opt;
      row.cost_opt = res.cost_opt;
    } else {
      PsoConfig cfg = spec.optimizer == OptimizerKind::pso_literal
                          ? PsoConfig::literal()
                          : PsoConfig::practical();
      cfg.seed = row.seed;
      const OptimResult res = pso_optimize(bs_count, cache_size, cat, cost, cfg);
      row.eta_opt = res.eta_opt;
      row.r_opt = res.r_opt;
      row.cost_opt = res.cost_opt;
    }

    row.cost_eta0 = total_cost({bs_count, cache_size, 0}, cat, cost);
    row.cost_eta1 = total_cost({bs_count, cache_size, cache_size}, cat, cost);
    row.reduction_vs_eta0_pct = detail::reduction_pct(row.cost_opt, row.cost_eta0);
    row.reduction_vs_eta1_pct = detail::reduction_pct(row.cost_opt, row.cost_eta1);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace detail {

template <typename T>
T get_field(const nlohmann::json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument("config: field '" + key +
                                "' has the wrong type");
  }
}

}  // namespace detail

/// Parses a flat JSON object into an ExperimentSpec. Unknown keys are errors.
inline ExperimentSpec spec_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw std::invalid_argument("config: expected a JSON object");
  }
  ExperimentSpec spec;
  for (const auto& [key, value] : doc.items()) {
    if (key == "fixed_n") {
      spec.fixed_bs_count = detail::get_field<int>(value, key);
    } else if (key == "use_ppp") {
      spec.use_ppp = detail::get_field<bool>(value, key);
    } else if (key == "radius") {
      spec.radius = detail::get_field<double>(value, key);
    } else if (key == "lambda") {
      spec.bs_density = detail::get_field<double>(value, key);
    } else if (key == "m") {
      spec.cache_size = detail::get_field<int>(value, key);
    } else if (key == "f") {
      spec.file_count = detail::get_field<int>(value, key);
    } else if (key == "s") {
      spec.zipf_exponent = detail::get_field<double>(value, key);
    } else if (key == "alpha") {
      spec.alpha = detail::get_field<double>(value, key);
    } else if (key == "mu_br") {
      spec.mu_br = detail::get_field<double>(value, key);
    } else if (key == "mode") {
      spec.mode = parse_mode(detail::get_field<std::string>(value, key));
    } else if (key == "axis") {
      spec.axis = parse_axis(detail::get_field<std::string>(value, key));
    } else if (key == "values") {
      spec.values = detail::get_field<std::vector<double>>(value, key);
    } else if (key == "optimizer") {
      spec.optimizer =
          parse_optimizer(detail::get_field<std::string>(value, key));
    } else if (key == "output") {
      spec.output_path = detail::get_field<std::string>(value, key);
    } else if (key == "format") {
      spec.format = parse_format(detail::get_field<std::string>(value, key));
    } else if (key == "seed") {
      spec.seed = detail::get_field<std::uint64_t>(value, key);
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  validate(spec);
  return spec;
}

inline ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open '" + path + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config: invalid JSON in '" + path +
                                "': " + e.what());
  }
  return spec_from_json(doc);
}

}  // namespace orcp

#endif  // ORCP_EXPERIMENTS_HPP
