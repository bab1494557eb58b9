#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "stmg/smoother.hpp"
#include "stmg/st_system.hpp"
#include "stmg/transfer.hpp"

namespace stmg {

enum class Coarsening { none, semi, full };

/// One level of the space-time hierarchy. mu = tau / h^2 drives the
/// coarsening choice: semi coarsening (2 tau, h) doubles mu, full
/// space-time coarsening (2 tau, 2 h) halves it.
struct STLevel {
  DGTimeBlock dg;
  SpaceGrid grid;
  std::shared_ptr<const SpaceMatrices> space;
  Eigen::Index n_t = 1;
  double mu = 0.0;
  Coarsening coarsen_to_next = Coarsening::none;
  TimeTransfer time_transfer;

  std::shared_ptr<const BlockSolver> block_lu;            // direct block solves
  std::shared_ptr<const SpatialVCycleSolver> spatial_mg;  // inexact block solves

  STOperator op() const { return {&dg, &space_ref(), n_t}; }
  const SpaceMatrices& space_ref() const { return *space; }
  BlockSolveContext solver_context() const {
    return {block_lu.get(), spatial_mg.get()};
  }
};

struct STHierarchy {
  std::vector<STLevel> levels;  // [0] = finest
  int p_t = 0;
  int dim = 1;

  STLevel& finest() { return levels.front(); }
  const STLevel& finest() const { return levels.front(); }
};

enum class CoarseningPolicy { mu_driven, always_semi, prefer_full };

struct HierarchyParams {
  int p_t = 0;
  int dim = 1;
  int space_level = 4;   // finest space level
  int time_level = 4;    // finest n_t = 2^time_level
  double t_final = 1.0;  // tau = t_final / n_t on the finest level
  double mu_star = 0.3;  // full coarsening threshold (mu >= mu_star)
  CoarseningPolicy policy = CoarseningPolicy::mu_driven;
  BlockSolverKind block_solver = BlockSolverKind::exact;
};

/// Builds the descending ladder: on each level apply full space-time
/// coarsening if mu_L >= mu_star and the space grid can still be
/// coarsened, otherwise semi coarsening in time; stops at n_t = 1.
/// Every coarse level is rediscretized at (tau_L, h_L).
STHierarchy build_hierarchy(const HierarchyParams& params);

struct CycleConfig {
  int nu1 = 2;
  int nu2 = 2;
  int gamma = 1;
  SmootherConfig smoother;
};

/// Recursive gamma-cycle starting at level_idx; the last level is solved
/// exactly by forward substitution (a single LU solve once n_t = 1).
void mg_cycle(const STHierarchy& hierarchy, std::size_t level_idx,
              BlockVector& u, const BlockVector& f, const CycleConfig& cfg);

/// Two-level hierarchy with a forced coarsening mode; mg_cycle on it is
/// exactly the two-grid cycle (pre-smooth, exact coarse solve, correct,
/// post-smooth).
STHierarchy build_two_grid(const HierarchyParams& params, Coarsening mode);

struct SolveReport {
  int iterations = 0;
  std::vector<double> residual_history;  // ||r^0||, ||r^1||, ...
  bool converged = false;
  double wall_time_seconds = 0.0;
  std::uint64_t seed = 0;  // seed of the random initial guess, if any
};

/// Cycles on the finest level until ||r^k|| <= eps_mg ||r^0|| or max_iter.
SolveReport solve(const STHierarchy& hierarchy, const BlockVector& f,
                  BlockVector& u, const CycleConfig& cfg, double eps_mg,
                  int max_iter = 250);

/// Deterministic uniform [0,1) fill (splitmix-seeded mt19937_64, fixed
/// 53-bit mapping), independent of platform and thread count.
void fill_random(BlockVector& v, std::uint64_t seed);

}  // namespace stmg
