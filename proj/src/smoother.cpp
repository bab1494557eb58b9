#include "stmg/smoother.hpp"

#include <cassert>
#include <stdexcept>

namespace stmg {

SpatialVCycleSolver::SpatialVCycleSolver(const DGTimeBlock& dg, int dim,
                                         int finest_space_level)
    : dg_(dg) {
  levels_.reserve(finest_space_level + 1);
  for (int l = finest_space_level; l >= 0; --l) {
    Level level;
    level.grid = build_space_grid(dim, l);
    level.mats = assemble_space(level.grid);
    // Uniform grid: every diagonal entry of M and K is the same, so one
    // factorization serves all nodes of the level.
    const double m_diag = level.mats.M.coeff(0, 0);
    const double k_diag = level.mats.K.coeff(0, 0);
    level.jacobi_block.compute(m_diag * dg_.K + k_diag * dg_.M);
    levels_.push_back(std::move(level));
  }
  const Level& coarsest = levels_.back();
  coarsest_lu_.compute(
      Eigen::MatrixXd(assemble_block_matrix(dg_, coarsest.mats)));
}

void SpatialVCycleSolver::jacobi_sweeps(const Level& level, int count,
                                        double omega, Eigen::MatrixXd& x,
                                        const Eigen::MatrixXd& b) const {
  Eigen::MatrixXd r(x.rows(), x.cols());
  for (int s = 0; s < count; ++s) {
    apply_diag_block(dg_, level.mats, x, r);
    r = b - r;
    x.noalias() += omega * level.jacobi_block.solve(r.transpose()).transpose();
  }
}

void SpatialVCycleSolver::recurse(std::size_t lev, Eigen::MatrixXd& x,
                                  const Eigen::MatrixXd& b,
                                  const SmootherConfig& cfg) const {
  const Level& level = levels_[lev];
  if (lev + 1 == levels_.size()) {
    const Eigen::Index n_x = b.rows(), n_loc = b.cols();
    const Eigen::VectorXd sol =
        coarsest_lu_.solve(Eigen::Map<const Eigen::VectorXd>(b.data(),
                                                             n_x * n_loc));
    x = Eigen::Map<const Eigen::MatrixXd>(sol.data(), n_x, n_loc);
    return;
  }
  jacobi_sweeps(level, cfg.nu1_x, cfg.omega_x, x, b);

  Eigen::MatrixXd r(x.rows(), x.cols());
  apply_diag_block(dg_, level.mats, x, r);
  r = b - r;

  const Level& next = levels_[lev + 1];
  Eigen::MatrixXd rc(next.grid.n_nodes, x.cols());
  restrict_space_slice(level.grid, next.grid, r, rc);

  Eigen::MatrixXd ec = Eigen::MatrixXd::Zero(rc.rows(), rc.cols());
  for (int g = 0; g < cfg.gamma_x; ++g) recurse(lev + 1, ec, rc, cfg);

  Eigen::MatrixXd correction(x.rows(), x.cols());
  prolong_space_slice(next.grid, level.grid, ec, correction);
  x += correction;

  jacobi_sweeps(level, cfg.nu2_x, cfg.omega_x, x, b);
}

Eigen::MatrixXd SpatialVCycleSolver::cycle(
    const Eigen::Ref<const Eigen::MatrixXd>& b,
    const Eigen::Ref<const Eigen::MatrixXd>& x0,
    const SmootherConfig& cfg) const {
  Eigen::MatrixXd x = x0;
  recurse(0, x, b, cfg);
  return x;
}

namespace {

Eigen::MatrixXd solve_block(const BlockSolveContext& ctx,
                            const Eigen::Ref<const Eigen::MatrixXd>& rhs,
                            const SmootherConfig& cfg) {
  if (cfg.block_solver == BlockSolverKind::exact) {
    assert(ctx.exact);
    return ctx.exact->solve(rhs);
  }
  assert(ctx.vcycle);
  return ctx.vcycle->cycle(rhs, Eigen::MatrixXd::Zero(rhs.rows(), rhs.cols()),
                           cfg);
}

}  // namespace

void block_jacobi_step(const STOperator& op, const BlockSolveContext& ctx,
                       BlockVector& u, const BlockVector& f,
                       const SmootherConfig& cfg) {
  BlockVector r = op.make_vector();
  for (int s = 0; s < cfg.nu; ++s) {
    residual(op, u, f, r);  // frozen residual; implicit barrier follows
#pragma omp parallel for schedule(static)
    for (Eigen::Index n = 0; n < op.n_t; ++n)
      u.step(n) += cfg.omega_t * solve_block(ctx, r.step(n), cfg);
  }
}

void block_jacobi_step_serial(const STOperator& op,
                              const BlockSolveContext& ctx, BlockVector& u,
                              const BlockVector& f,
                              const SmootherConfig& cfg) {
  BlockVector r = op.make_vector();
  for (int s = 0; s < cfg.nu; ++s) {
    residual_serial(op, u, f, r);
    for (Eigen::Index n = 0; n < op.n_t; ++n)
      u.step(n) += cfg.omega_t * solve_block(ctx, r.step(n), cfg);
  }
}

}  // namespace stmg
