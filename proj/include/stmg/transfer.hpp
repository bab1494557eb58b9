#pragma once

#include <Eigen/Dense>

#include "stmg/block_vector.hpp"
#include "stmg/dg_time.hpp"
#include "stmg/fem_space.hpp"

namespace stmg {

/// Local time restriction blocks: coarse step n receives
/// R1 * fine_{2n} + R2 * fine_{2n+1}; the prolongation blocks are the
/// transposes R1^T = M_tau^{-1} Mt1, R2^T = M_tau^{-1} Mt2 built from the
/// L2 projections of the coarse basis on (0, 2 tau) onto the fine basis.
/// They reproduce polynomials of degree <= p_t exactly and do not depend
/// on tau.
struct TimeTransfer {
  Eigen::MatrixXd R1;
  Eigen::MatrixXd R2;
};

TimeTransfer build_time_transfer(int p_t, double tau,
                                 TimeBasis basis = TimeBasis::legendre);

/// Semi coarsening: identity in space, time transfer across step pairs.
/// Requires an even number of fine time steps.
BlockVector restrict_semi(const TimeTransfer& t, const BlockVector& fine);
BlockVector prolong_semi(const TimeTransfer& t, const BlockVector& coarse);

/// Spatial full-weighting restriction (stencil 1/2 {1 2 1} per axis) from
/// level L to L-1 applied to one time-step slice; prolongation is the
/// transpose. dim and the per-axis node counts come from the grids.
void restrict_space_slice(const SpaceGrid& fine, const SpaceGrid& coarse,
                          const Eigen::Ref<const Eigen::MatrixXd>& u,
                          Eigen::Ref<Eigen::MatrixXd> out);
void prolong_space_slice(const SpaceGrid& coarse, const SpaceGrid& fine,
                         const Eigen::Ref<const Eigen::MatrixXd>& u,
                         Eigen::Ref<Eigen::MatrixXd> out);

/// Full space-time coarsening: Kronecker of the space and time transfers.
BlockVector restrict_full(const TimeTransfer& t, const SpaceGrid& fine_grid,
                          const SpaceGrid& coarse_grid, const BlockVector& fine);
BlockVector prolong_full(const TimeTransfer& t, const SpaceGrid& coarse_grid,
                         const SpaceGrid& fine_grid, const BlockVector& coarse);

}  // namespace stmg
