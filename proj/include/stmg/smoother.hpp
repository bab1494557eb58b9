#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "stmg/st_system.hpp"
#include "stmg/transfer.hpp"

namespace stmg {

enum class BlockSolverKind { exact, spatial_vcycle };

struct SmootherConfig {
  double omega_t = 0.5;  // damping of the block Jacobi iteration
  int nu = 1;            // smoothing steps per call
  BlockSolverKind block_solver = BlockSolverKind::exact;
  // spatial multigrid used when block_solver == spatial_vcycle
  double omega_x = 2.0 / 3.0;
  int nu1_x = 2;
  int nu2_x = 2;
  int gamma_x = 1;
};

/// Approximates the inverse of one time-step block A by a single geometric
/// multigrid cycle in space (damped Jacobi smoothing on every level, direct
/// solve on the 1-node grid), with zero initial guess.
class SpatialVCycleSolver {
 public:
  SpatialVCycleSolver(const DGTimeBlock& dg, int dim, int finest_space_level);

  /// One cycle for A x = b starting from x0 (pass a zero matrix for the
  /// D-approximation semantics of the smoother).
  Eigen::MatrixXd cycle(const Eigen::Ref<const Eigen::MatrixXd>& b,
                        const Eigen::Ref<const Eigen::MatrixXd>& x0,
                        const SmootherConfig& cfg) const;

  const SpaceGrid& finest_grid() const { return levels_.front().grid; }

 private:
  struct Level {
    SpaceGrid grid;
    SpaceMatrices mats;
    Eigen::PartialPivLU<Eigen::MatrixXd> jacobi_block;  // diag(M) K + diag(K) M
  };

  void recurse(std::size_t lev, Eigen::MatrixXd& x, const Eigen::MatrixXd& b,
               const SmootherConfig& cfg) const;
  void jacobi_sweeps(const Level& level, int count, double omega,
                     Eigen::MatrixXd& x, const Eigen::MatrixXd& b) const;

  DGTimeBlock dg_;
  std::vector<Level> levels_;  // [0] = finest, back() = 1-node grid
  Eigen::PartialPivLU<Eigen::MatrixXd> coarsest_lu_;
};

/// Block solver behind the damped block Jacobi smoother: either the cached
/// direct factorization (exact) or one spatial V-cycle per block.
struct BlockSolveContext {
  const BlockSolver* exact = nullptr;
  const SpatialVCycleSolver* vcycle = nullptr;
};

/// cfg.nu damped block Jacobi steps u <- u + omega_t D~^{-1} (f - L u).
/// The residual is frozen before the block solves; the n_t solves are
/// independent and run in parallel over time steps.
void block_jacobi_step(const STOperator& op, const BlockSolveContext& ctx,
                       BlockVector& u, const BlockVector& f,
                       const SmootherConfig& cfg);
void block_jacobi_step_serial(const STOperator& op,
                              const BlockSolveContext& ctx, BlockVector& u,
                              const BlockVector& f, const SmootherConfig& cfg);

}  // namespace stmg
