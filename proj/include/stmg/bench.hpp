#pragma once

#include <cstdint>
#include <vector>

#include "stmg/lfa.hpp"
#include "stmg/mg.hpp"

namespace stmg::bench {

/// Two-grid factor measurement setup: f = 0, seeded random initial guess
/// with values in [0,1). tau is derived from mu and the space level.
struct RhoProblem {
  int p_t = 0;
  int dim = 1;
  int space_level = 7;  // n_x = 255
  int time_level = 6;   // n_t = 64
  double mu = 1.0;
  Coarsening mode = Coarsening::semi;
};

struct RhoMeasurement {
  RhoProblem problem;
  lfa::TwoGridConfig cycle;
  double measured_rho = 0.0;
  double predicted_rho = 0.0;
  int n_iterations_used = 0;
  std::uint64_t seed_used = 0;
};

/// Runs two-grid cycles (exact block solves) until the relative residual
/// stagnation guard 1e-13 or 250 iterations; measured rho is the largest
/// step ratio ||r^{k+1}|| / ||r^k|| observed above the guard. A zero
/// initial residual (initial guess already solves the system) triggers a
/// reseed with seed + 1.
RhoMeasurement measure_convergence_factor(const RhoProblem& problem,
                                          const lfa::TwoGridConfig& cycle,
                                          std::uint64_t seed,
                                          const lfa::FrequencyGrid& grid = {});

/// Variant starting from an explicit initial guess; if that guess already
/// solves the system the measurement is rejected and the seeded reseed
/// path takes over.
RhoMeasurement measure_convergence_factor_from(const RhoProblem& problem,
                                               const lfa::TwoGridConfig& cycle,
                                               const BlockVector& initial_guess,
                                               std::uint64_t reseed_seed,
                                               const lfa::FrequencyGrid& grid = {});

struct ScalingProblem {
  int p_t = 1;
  int dim = 1;
  int space_level = 7;
  int time_level = 8;  // n_t = 256
  double t_final = 1.0;
  double eps_mg = 1e-8;
  std::uint64_t seed = 42;
  CycleConfig cycle;
  BlockSolverKind block_solver = BlockSolverKind::spatial_vcycle;
};

struct ScalingRecord {
  int threads = 1;
  Eigen::Index n_t = 0;
  Eigen::Index n_x = 0;
  int p_t = 0;
  int iterations = 0;
  double wall_time_seconds = 0.0;
  double fwd_sub_seconds = 0.0;  // weak-scaling comparison column
};

/// Fixed problem size, varying thread count. Wall time is the best of
/// three repetitions from identical initial data; iteration counts are
/// identical across thread counts by the determinism contract.
std::vector<ScalingRecord> strong_scaling(const ScalingProblem& problem,
                                          const std::vector<int>& threads);

/// Two time steps per thread, problem and threads doubling together; the
/// comparison column times the sequential forward substitution.
std::vector<ScalingRecord> weak_scaling(const ScalingProblem& base,
                                        const std::vector<int>& threads);

}  // namespace stmg::bench
