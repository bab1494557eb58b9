#include "stmg/fem_space.hpp"

#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

namespace stmg {

namespace {

Eigen::SparseMatrix<double> tridiagonal(Eigen::Index n, double off,
                                        double diag) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(3 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i > 0) trip.emplace_back(i, i - 1, off);
    trip.emplace_back(i, i, diag);
    if (i + 1 < n) trip.emplace_back(i, i + 1, off);
  }
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

}  // namespace

SpaceGrid build_space_grid(int dim, int level) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("dim must be 1 or 2");
  if (level < 0) throw std::invalid_argument("level must be >= 0");
  SpaceGrid grid;
  grid.dim = dim;
  grid.level = level;
  grid.h = std::ldexp(1.0, -(level + 1));
  grid.n_per_dim = (Eigen::Index(1) << (level + 1)) - 1;
  grid.n_nodes = dim == 1 ? grid.n_per_dim : grid.n_per_dim * grid.n_per_dim;
  return grid;
}

SpaceMatrices assemble_space(const SpaceGrid& grid) {
  const Eigen::Index n = grid.n_per_dim;
  const double h = grid.h;
  const Eigen::SparseMatrix<double> M1 = tridiagonal(n, h / 6.0, 4.0 * h / 6.0);
  const Eigen::SparseMatrix<double> K1 = tridiagonal(n, -1.0 / h, 2.0 / h);

  SpaceMatrices out;
  if (grid.dim == 1) {
    out.M = M1;
    out.K = K1;
  } else {
    out.M = Eigen::kroneckerProduct(M1, M1);
    out.K = Eigen::SparseMatrix<double>(Eigen::kroneckerProduct(K1, M1)) +
            Eigen::SparseMatrix<double>(Eigen::kroneckerProduct(M1, K1));
  }
  out.M.makeCompressed();
  out.K.makeCompressed();
  return out;
}

}  // namespace stmg
