#pragma once

#include <memory>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "stmg/block_vector.hpp"
#include "stmg/dg_time.hpp"
#include "stmg/fem_space.hpp"

namespace stmg {

/// The all-at-once space-time operator: block lower bidiagonal with
/// A = K_tau (x) M_h + M_tau (x) K_h on the diagonal and
/// B = -N_tau (x) M_h below. Applied matrix-free via the Kronecker
/// identity; never materialized as a space-time matrix.
struct STOperator {
  const DGTimeBlock* dg = nullptr;
  const SpaceMatrices* space = nullptr;
  Eigen::Index n_t = 0;

  Eigen::Index n_x() const { return space->M.rows(); }
  Eigen::Index n_loc() const { return dg->n_loc(); }
  BlockVector make_vector() const { return {n_t, n_x(), n_loc()}; }
};

/// y_n = A u_n + B u_{n-1} for every block row (no B term for n = 0).
/// OpenMP-parallel over time steps; apply_serial is the plain-loop
/// reference used by tests and the kernel benchmark.
void apply(const STOperator& op, const BlockVector& u, BlockVector& y);
void apply_serial(const STOperator& op, const BlockVector& u, BlockVector& y);

/// r = f - L u.
void residual(const STOperator& op, const BlockVector& u, const BlockVector& f,
              BlockVector& r);
void residual_serial(const STOperator& op, const BlockVector& u,
                     const BlockVector& f, BlockVector& r);

/// One-step kernels shared by both drivers.
void apply_block_row(const STOperator& op, const BlockVector& u,
                     Eigen::Index n, BlockVector& y);

/// A u_n = M_h U K^T + K_h U M^T for a single time-step slice U.
void apply_diag_block(const DGTimeBlock& dg, const SpaceMatrices& space,
                      const Eigen::Ref<const Eigen::MatrixXd>& u,
                      Eigen::Ref<Eigen::MatrixXd> y);

/// Cached sparse LU factorization of the time-step block A.
class BlockSolver {
 public:
  BlockSolver(const DGTimeBlock& dg, const SpaceMatrices& space);

  /// Solves A x = b for one time-step slice (n_x x n_loc).
  Eigen::MatrixXd solve(const Eigen::Ref<const Eigen::MatrixXd>& b) const;

  const Eigen::SparseMatrix<double>& matrix() const { return A_; }

 private:
  Eigen::SparseMatrix<double> A_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
};

/// Sparse A = K_tau (x) M_h + M_tau (x) K_h (one time step).
Eigen::SparseMatrix<double> assemble_block_matrix(const DGTimeBlock& dg,
                                                  const SpaceMatrices& space);

/// Sequential time stepping with a direct block solve per step; the
/// reference solver for all acceptance tests.
BlockVector forward_substitution_solve(const STOperator& op,
                                       const BlockSolver& block_lu,
                                       const BlockVector& f);

}  // namespace stmg
