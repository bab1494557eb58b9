#include "stmg/st_system.hpp"

#include <stdexcept>
#include <vector>

namespace stmg {

double BlockVector::norm() const {
  std::vector<double> partial(n_t_);
#pragma omp parallel for schedule(static)
  for (Eigen::Index n = 0; n < n_t_; ++n)
    partial[n] = data_.segment(n * n_x_ * n_loc_, n_x_ * n_loc_).squaredNorm();
  double sum = 0.0;
  for (double p : partial) sum += p;
  return std::sqrt(sum);
}

void apply_diag_block(const DGTimeBlock& dg, const SpaceMatrices& space,
                      const Eigen::Ref<const Eigen::MatrixXd>& u,
                      Eigen::Ref<Eigen::MatrixXd> y) {
  y.noalias() = (space.M * u) * dg.K.transpose();
  y.noalias() += (space.K * u) * dg.M.transpose();
}

void apply_block_row(const STOperator& op, const BlockVector& u,
                     Eigen::Index n, BlockVector& y) {
  auto yn = y.step(n);
  Eigen::MatrixXd out(yn.rows(), yn.cols());
  apply_diag_block(*op.dg, *op.space, u.step(n), out);
  if (n > 0)
    out.noalias() -= (op.space->M * u.step(n - 1)) * op.dg->N.transpose();
  yn = out;
}

namespace {

void check_shape(const STOperator& op, const BlockVector& u) {
  if (u.n_t() != op.n_t || u.n_x() != op.n_x() || u.n_loc() != op.n_loc())
    throw std::invalid_argument("space-time vector shape mismatch");
}

}  // namespace

void apply(const STOperator& op, const BlockVector& u, BlockVector& y) {
  check_shape(op, u);
  check_shape(op, y);
#pragma omp parallel for schedule(static)
  for (Eigen::Index n = 0; n < op.n_t; ++n) apply_block_row(op, u, n, y);
}

void apply_serial(const STOperator& op, const BlockVector& u, BlockVector& y) {
  check_shape(op, u);
  check_shape(op, y);
  for (Eigen::Index n = 0; n < op.n_t; ++n) apply_block_row(op, u, n, y);
}

void residual(const STOperator& op, const BlockVector& u, const BlockVector& f,
              BlockVector& r) {
  check_shape(op, u);
  check_shape(op, f);
  check_shape(op, r);
#pragma omp parallel for schedule(static)
  for (Eigen::Index n = 0; n < op.n_t; ++n) {
    apply_block_row(op, u, n, r);
    r.step(n) = f.step(n) - r.step(n);
  }
}

void residual_serial(const STOperator& op, const BlockVector& u,
                     const BlockVector& f, BlockVector& r) {
  for (Eigen::Index n = 0; n < op.n_t; ++n) {
    apply_block_row(op, u, n, r);
    r.step(n) = f.step(n) - r.step(n);
  }
}

Eigen::SparseMatrix<double> assemble_block_matrix(const DGTimeBlock& dg,
                                                  const SpaceMatrices& space) {
  const Eigen::Index n_x = space.M.rows();
  const int n_loc = dg.n_loc();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(n_loc * n_loc * (space.M.nonZeros() + space.K.nonZeros()));
  for (int l = 0; l < n_loc; ++l) {
    for (int k = 0; k < n_loc; ++k) {
      for (int col = 0; col < space.M.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(space.M, col); it;
             ++it)
          trip.emplace_back(l * n_x + it.row(), k * n_x + it.col(),
                            dg.K(l, k) * it.value());
      for (int col = 0; col < space.K.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(space.K, col); it;
             ++it)
          trip.emplace_back(l * n_x + it.row(), k * n_x + it.col(),
                            dg.M(l, k) * it.value());
    }
  }
  Eigen::SparseMatrix<double> A(n_loc * n_x, n_loc * n_x);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  return A;
}

BlockSolver::BlockSolver(const DGTimeBlock& dg, const SpaceMatrices& space)
    : A_(assemble_block_matrix(dg, space)) {
  lu_.compute(A_);
  if (lu_.info() != Eigen::Success)
    throw std::runtime_error("time-step block factorization failed");
}

Eigen::MatrixXd BlockSolver::solve(
    const Eigen::Ref<const Eigen::MatrixXd>& b) const {
  const Eigen::Index n_x = b.rows(), n_loc = b.cols();
  const Eigen::VectorXd x =
      lu_.solve(Eigen::Map<const Eigen::VectorXd>(b.data(), n_x * n_loc));
  return Eigen::Map<const Eigen::MatrixXd>(x.data(), n_x, n_loc);
}

BlockVector forward_substitution_solve(const STOperator& op,
                                       const BlockSolver& block_lu,
                                       const BlockVector& f) {
  BlockVector u = op.make_vector();
  Eigen::MatrixXd rhs;
  for (Eigen::Index n = 0; n < op.n_t; ++n) {
    rhs = f.step(n);
    if (n > 0)
      rhs.noalias() += (op.space->M * u.step(n - 1)) * op.dg->N.transpose();
    u.step(n) = block_lu.solve(rhs);
  }
  return u;
}

}  // namespace stmg
