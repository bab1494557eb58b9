#pragma once

#include <cstdint>
#include <string>

#include "stmg/bench.hpp"
#include "stmg/mg.hpp"

namespace stmg {

/// Solver run configuration, read from a single JSON document. All fields
/// are required except the documented defaults omega_t = 1/2, gamma = 1,
/// max_iter = 250.
struct RunConfig {
  int p_t = 0;
  int dim = 1;
  int space_levels = 4;
  int time_levels = 4;
  double t_final = 1.0;
  double omega_t = 0.5;
  double omega_x = 2.0 / 3.0;
  int nu1 = 2;
  int nu2 = 2;
  int nu1_x = 2;
  int nu2_x = 2;
  int gamma = 1;
  double eps_mg = 1e-8;
  int max_iter = 250;
  std::uint64_t seed = 0;
  BlockSolverKind block_solver = BlockSolverKind::exact;
  CoarseningPolicy coarsening = CoarseningPolicy::mu_driven;
};

/// Parses and validates; throws std::invalid_argument naming the offending
/// field on any violation.
RunConfig parse_config(const std::string& json_text);
std::string dump_config(const RunConfig& config);

HierarchyParams hierarchy_params(const RunConfig& config);
CycleConfig cycle_config(const RunConfig& config);

std::string solve_report_json(const RunConfig& config,
                              const SolveReport& report);
std::string residual_history_csv(const SolveReport& report);
std::string scaling_csv(const std::vector<bench::ScalingRecord>& records,
                        bool with_forward_substitution_column);

}  // namespace stmg
