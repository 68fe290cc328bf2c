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

// Command line front end: tradeoff curves, redundancy-ratio optimization,
// parameter sweeps, and Monte-Carlo validation.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orcp/orcp.hpp"

namespace {

struct InstanceFlags {
  int bs_count = 6;
  int cache_size = 50;
  int file_count = 500;
  double exponent = 0.8;
  double alpha = 1.0;
  double mu_br = 4.0;
  std::string mode = "per-request";
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& flags) {
  cmd->add_option("--n", flags.bs_count, "Number of base stations");
  cmd->add_option("--m", flags.cache_size, "Cache size per station (files)");
  cmd->add_option("--f", flags.file_count, "Catalog size (files)");
  cmd->add_option("--s", flags.exponent, "Zipf exponent");
  cmd->add_option("--alpha", flags.alpha, "Unit RAN transmission cost");
  cmd->add_option("--mu-br", flags.mu_br, "Backhaul to RAN unit cost ratio");
  cmd->add_option("--mode", flags.mode,
                  "Accounting mode: per-request or paper-literal");
}

orcp::CostParams cost_params(const InstanceFlags& flags) {
  orcp::CostParams c;
  c.alpha = flags.alpha;
  c.mu_br = flags.mu_br;
  c.mode = orcp::parse_mode(flags.mode);
  return c;
}

std::string fmt(double v) { return orcp::format_sig12(v); }

int run_oracle(const InstanceFlags& flags) {
  const orcp::Catalog cat(flags.file_count, flags.exponent);
  const orcp::CostParams cost = cost_params(flags);
  const auto curve =
      orcp::cost_curve(flags.bs_count, flags.cache_size, cat, cost);
  std::cout << "# R eta c_ran c_bh c_total\n";
  for (const auto& point : curve) {
    const double eta =
        static_cast<double>(point.redundant_count) / flags.cache_size;
    std::cout << point.redundant_count << ' ' << fmt(eta) << ' ';
    if (point.feasible) {
      std::cout << fmt(point.ran) << ' ' << fmt(point.backhaul) << ' '
                << fmt(point.total) << '\n';
    } else {
      std::cout << "infeasible\n";
    }
  }
  const auto best =
      orcp::exhaustive_oracle(flags.bs_count, flags.cache_size, cat, cost);
  std::cout << "optimum: r_opt=" << best.r_opt << " eta_opt="
            << fmt(best.eta_opt) << " cost=" << fmt(best.cost_opt) << '\n';
  return 0;
}

int run_optimize(const InstanceFlags& flags, const std::string& preset,
                 std::uint64_t seed, bool trace) {
  const orcp::Catalog cat(flags.file_count, flags.exponent);
  const orcp::CostParams cost = cost_params(flags);
  orcp::PsoConfig cfg;
  if (preset == "literal") {
    cfg = orcp::PsoConfig::literal();
  } else if (preset == "practical") {
    cfg = orcp::PsoConfig::practical();
  } else {
    throw std::invalid_argument(
        "preset: expected literal or practical, got '" + preset + "'");
  }
  cfg.seed = seed;
  const auto result =
      orcp::pso_optimize(flags.bs_count, flags.cache_size, cat, cost, cfg);
  if (trace) {
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
      std::cout << "iter " << i + 1 << " best " << fmt(result.trace[i])
                << '\n';
    }
  }
  std::cout << "eta_opt=" << fmt(result.eta_opt) << " r_opt=" << result.r_opt
            << " cost=" << fmt(result.cost_opt)
            << " iterations=" << result.iterations_run
            << " evaluations=" << result.evaluations << '\n';
  return 0;
}

int run_sweep_cmd(const orcp::ExperimentSpec& spec) {
  const auto rows = orcp::run_sweep(spec);
  const std::string document = orcp::render_rows(rows, spec.format);
  const bool to_file = !spec.output_path.empty();

  std::ostream& notes = to_file ? std::cout : std::cerr;
  for (const auto& row : rows) {
    if (!row.note.empty()) {
      notes << "# " << orcp::axis_name(spec.axis) << '='
            << fmt(row.axis_value) << ": " << row.note << '\n';
    }
  }

  if (to_file) {
    std::ofstream out(spec.output_path, std::ios::binary);
    if (!out) {
      throw std::invalid_argument("output: cannot write '" + spec.output_path +
                                  "'");
    }
    out << document;
    std::cout << "wrote " << spec.output_path << " (" << rows.size()
              << " rows)\n";
  } else {
    std::cout << document;
  }
  return 0;
}

int run_simulate(const InstanceFlags& flags, std::vector<int> r_grid,
                 bool use_ppp, double radius, double density,
                 std::int64_t requests, int trials, std::uint64_t seed,
                 bool print_positions) {
  const orcp::Catalog cat(flags.file_count, flags.exponent);
  const orcp::CostParams cost = cost_params(flags);

  orcp::SimConfig cfg;
  cfg.radius = radius;
  cfg.bs_density = density;
  if (!use_ppp) cfg.fixed_bs_count = flags.bs_count;
  cfg.requests_per_trial = requests;
  cfg.trials = trials;
  cfg.seed = seed;

  if (r_grid.empty()) {
    const int m = flags.cache_size;
    r_grid = {0, m / 4, m / 2, (3 * m) / 4, m};
    r_grid.erase(std::unique(r_grid.begin(), r_grid.end()), r_grid.end());
  }

  const auto report =
      orcp::validate_model(cfg, flags.cache_size, cat, cost, r_grid);
  orcp::Rng n_rng(orcp::mix_seed(cfg.seed, 0));
  std::cout << "# N=" << orcp::sample_bs_count(cfg, n_rng)
            << " M=" << flags.cache_size << " F=" << flags.file_count
            << " s=" << fmt(flags.exponent) << " mu_br=" << fmt(flags.mu_br)
            << " requests=" << requests << " trials=" << trials << '\n';
  std::cout << "# R analytic empirical std_error z status\n";
  int failures = 0;
  for (const auto& row : report.rows) {
    std::cout << row.redundant_count << ' ';
    if (!row.feasible) {
      std::cout << "infeasible\n";
      continue;
    }
    std::cout << fmt(row.analytic) << ' ' << fmt(row.empirical) << ' '
              << fmt(row.std_error) << ' ' << fmt(row.z) << ' '
              << (row.pass ? "PASS" : "FAIL") << '\n';
    if (!row.pass) ++failures;
  }
  if (failures == 0) {
    std::cout << "model check: all rows within 3 standard errors\n";
  } else {
    std::cout << "model check: " << failures << " row(s) outside 3 standard errors\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-cache redundancy/diversity tradeoff toolkit"};
  app.require_subcommand(1);

  InstanceFlags oracle_flags;
  auto* oracle_cmd = app.add_subcommand(
      "oracle", "Evaluate the tradeoff curve and the exact optimum");
  add_instance_flags(oracle_cmd, oracle_flags);

  InstanceFlags opt_flags;
  std::string preset = "literal";
  std::uint64_t opt_seed = 0;
  bool opt_trace = false;
  auto* optimize_cmd = app.add_subcommand(
      "optimize", "Particle swarm search for the optimal redundancy ratio");
  add_instance_flags(optimize_cmd, opt_flags);
  optimize_cmd->add_option("--preset", preset,
                           "Swarm preset: literal or practical");
  optimize_cmd->add_option("--seed", opt_seed, "Random seed");
  optimize_cmd->add_flag("--trace", opt_trace,
                         "Print the best-cost trace per iteration");

  InstanceFlags sweep_flags;
  std::string config_path;
  std::string axis = "mu_br";
  std::vector<double> sweep_values;
  std::string sweep_optimizer = "oracle";
  std::string sweep_out;
  std::string sweep_format = "csv";
  bool sweep_ppp = false;
  double sweep_radius = 100.0;
  double sweep_lambda = 2e-4;
  std::uint64_t sweep_seed = 0;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Parameter sweep with CSV or JSON output");
  auto* config_opt = sweep_cmd->add_option(
      "--config", config_path, "JSON config file (replaces the flags below)");
  add_instance_flags(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--axis", axis, "Sweep axis: mu_br, s, m or r");
  sweep_cmd
      ->add_option("--values", sweep_values, "Comma separated axis values")
      ->delimiter(',');
  sweep_cmd->add_option("--optimizer", sweep_optimizer,
                        "oracle, pso_literal or pso_practical");
  sweep_cmd->add_option("--out", sweep_out, "Output file path");
  sweep_cmd->add_option("--format", sweep_format, "csv or json");
  sweep_cmd->add_flag("--ppp", sweep_ppp,
                      "Draw the station count from the Poisson process");
  sweep_cmd->add_option("--radius", sweep_radius, "Service disk radius (m)");
  sweep_cmd->add_option("--lambda", sweep_lambda,
                        "Station density (stations per square meter)");
  sweep_cmd->add_option("--seed", sweep_seed, "Random seed");

  InstanceFlags sim_flags;
  std::vector<int> sim_r;
  bool sim_ppp = false;
  double sim_radius = 100.0;
  double sim_lambda = 2e-4;
  std::int64_t sim_requests = 100000;
  int sim_trials = 1;
  std::uint64_t sim_seed = 0;
  auto* simulate_cmd = app.add_subcommand(
      "simulate", "Monte-Carlo validation of the analytic model");
  add_instance_flags(simulate_cmd, sim_flags);
  simulate_cmd->add_option("--r", sim_r, "Redundant counts to check")
      ->delimiter(',');
  simulate_cmd->add_flag("--ppp", sim_ppp,
                         "Draw the station count from the Poisson process");
  simulate_cmd->add_option("--radius", sim_radius, "Service disk radius (m)");
  simulate_cmd->add_option("--lambda", sim_lambda,
                           "Station density (stations per square meter)");
  simulate_cmd->add_option("--requests", sim_requests, "Requests per trial");
  simulate_cmd->add_option("--trials", sim_trials, "Trials per grid point");
  simulate_cmd->add_option("--seed", sim_seed, "Random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (oracle_cmd->parsed()) return run_oracle(oracle_flags);
    if (optimize_cmd->parsed()) {
      return run_optimize(opt_flags, preset, opt_seed, opt_trace);
    }
    if (sweep_cmd->parsed()) {
      orcp::ExperimentSpec spec;
      if (!config_opt->empty()) {
        spec = orcp::load_spec(config_path);
      } else {
        spec.fixed_bs_count = sweep_flags.bs_count;
        spec.use_ppp = sweep_ppp;
        spec.radius = sweep_radius;
        spec.bs_density = sweep_lambda;
        spec.cache_size = sweep_flags.cache_size;
        spec.file_count = sweep_flags.file_count;
        spec.zipf_exponent = sweep_flags.exponent;
        spec.alpha = sweep_flags.alpha;
        spec.mu_br = sweep_flags.mu_br;
        spec.mode = orcp::parse_mode(sweep_flags.mode);
        spec.axis = orcp::parse_axis(axis);
        spec.values = sweep_values;
        spec.optimizer = orcp::parse_optimizer(sweep_optimizer);
        spec.output_path = sweep_out;
        spec.format = orcp::parse_format(sweep_format);
        spec.seed = sweep_seed;
      }
      return run_sweep_cmd(spec);
    }
    if (simulate_cmd->parsed()) {
      return run_simulate(sim_flags, sim_r, sim_ppp, sim_radius, sim_lambda,
                          sim_requests, sim_trials, sim_seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
