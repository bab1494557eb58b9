#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace stmg {

/// Uniform P1 grid on (0,1) (dim 1) or (0,1)^2 (dim 2, tensor product)
/// with homogeneous Dirichlet boundary; only interior nodes are kept.
/// In 1D, level L has h = 2^-(L+1) and 2^(L+1) - 1 interior nodes.
struct SpaceGrid {
  int dim = 1;
  int level = 0;
  double h = 0.5;
  Eigen::Index n_per_dim = 1;  // interior nodes per axis
  Eigen::Index n_nodes = 1;
};

/// Mass and stiffness matrices on the interior nodes. In 1D these are the
/// tridiagonal stencils h/6 {1,4,1} and 1/h {-1,2,-1}; in 2D the tensor
/// products M1 (x) M1 and K1 (x) M1 + M1 (x) K1.
struct SpaceMatrices {
  Eigen::SparseMatrix<double> M;
  Eigen::SparseMatrix<double> K;
};

SpaceGrid build_space_grid(int dim, int level);
SpaceMatrices assemble_space(const SpaceGrid& grid);

}  // namespace stmg
