#include "stmg/transfer.hpp"

#include <stdexcept>

namespace stmg {

namespace {

double basis_value(TimeBasis basis, int l, double t, double tau) {
  if (basis == TimeBasis::legendre)
    return legendre_value(l, 2.0 * t / tau - 1.0);
  return std::pow(t / tau, l);
}

void check_pair(const BlockVector& fine, const BlockVector& coarse) {
  if (fine.n_t() != 2 * coarse.n_t() || fine.n_loc() != coarse.n_loc())
    throw std::invalid_argument("time transfer shape mismatch");
}

// 1D full-weighting stencil along a strided array: out[j] over m coarse
// nodes from n = 2m+1 fine nodes (coarse node j sits at fine node 2j+1).
void restrict_line(const double* u, Eigen::Index stride_u, Eigen::Index m,
                   double* out, Eigen::Index stride_out) {
  for (Eigen::Index j = 0; j < m; ++j) {
    const double* c = u + (2 * j) * stride_u;
    out[j * stride_out] =
        0.5 * (c[0] + 2.0 * c[stride_u] + c[2 * stride_u]);
  }
}

void prolong_line(const double* c, Eigen::Index stride_c, Eigen::Index m,
                  double* out, Eigen::Index stride_out) {
  const Eigen::Index n = 2 * m + 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    double v;
    if (i % 2 == 1) {
      v = c[(i / 2) * stride_c];
    } else {
      const Eigen::Index j = i / 2;  // mean of neighbors j-1, j
      v = 0.0;
      if (j > 0) v += 0.5 * c[(j - 1) * stride_c];
      if (j < m) v += 0.5 * c[j * stride_c];
    }
    out[i * stride_out] = v;
  }
}

}  // namespace

TimeTransfer build_time_transfer(int p_t, double tau, TimeBasis basis) {
  const DGTimeBlock fine = assemble_dg_block(p_t, tau, basis);
  const int n_loc = p_t + 1;
  const QuadratureRule rule = gauss_legendre(n_loc);

  Eigen::MatrixXd Mt1 = Eigen::MatrixXd::Zero(n_loc, n_loc);
  Eigen::MatrixXd Mt2 = Eigen::MatrixXd::Zero(n_loc, n_loc);
  for (int q = 0; q < n_loc; ++q) {
    const double s = 0.5 * tau * (rule.nodes[q] + 1.0);  // in (0, tau)
    const double w = 0.5 * tau * rule.weights[q];
    for (int k = 0; k < n_loc; ++k) {
      const double fk = basis_value(basis, k, s, tau);
      for (int l = 0; l < n_loc; ++l) {
        Mt1(k, l) += w * basis_value(basis, l, s, 2.0 * tau) * fk;
        Mt2(k, l) += w * basis_value(basis, l, s + tau, 2.0 * tau) * fk;
      }
    }
  }
  TimeTransfer t;
  const Eigen::PartialPivLU<Eigen::MatrixXd> m_lu(fine.M);
  t.R1 = m_lu.solve(Mt1).transpose();
  t.R2 = m_lu.solve(Mt2).transpose();
  return t;
}

BlockVector restrict_semi(const TimeTransfer& t, const BlockVector& fine) {
  if (fine.n_t() % 2 != 0)
    throw std::invalid_argument("restrict_semi requires an even step count");
  BlockVector coarse(fine.n_t() / 2, fine.n_x(), fine.n_loc());
#pragma omp parallel for schedule(static)
  for (Eigen::Index n = 0; n < coarse.n_t(); ++n) {
    coarse.step(n).noalias() = fine.step(2 * n) * t.R1.transpose();
    coarse.step(n).noalias() += fine.step(2 * n + 1) * t.R2.transpose();
  }
  return coarse;
}

BlockVector prolong_semi(const TimeTransfer& t, const BlockVector& coarse) {
  BlockVector fine(2 * coarse.n_t(), coarse.n_x(), coarse.n_loc());
  check_pair(fine, coarse);
#pragma omp parallel for schedule(static)
  for (Eigen::Index n = 0; n < coarse.n_t(); ++n) {
    fine.step(2 * n).noalias() = coarse.step(n) * t.R1;
    fine.step(2 * n + 1).noalias() = coarse.step(n) * t.R2;
  }
  return fine;
}

void restrict_space_slice(const SpaceGrid& fine, const SpaceGrid& coarse,
                          const Eigen::Ref<const Eigen::MatrixXd>& u,
                          Eigen::Ref<Eigen::MatrixXd> out) {
  const Eigen::Index n1 = fine.n_per_dim, m1 = coarse.n_per_dim;
  if (coarse.level + 1 != fine.level || coarse.dim != fine.dim)
    throw std::invalid_argument("space transfer level mismatch");
  if (fine.dim == 1) {
    for (Eigen::Index l = 0; l < u.cols(); ++l)
      restrict_line(u.col(l).data(), 1, m1, out.col(l).data(), 1);
    return;
  }
  Eigen::MatrixXd tmp(m1, n1);  // x-restricted, still fine in y
  for (Eigen::Index l = 0; l < u.cols(); ++l) {
    for (Eigen::Index iy = 0; iy < n1; ++iy)
      restrict_line(u.col(l).data() + iy * n1, 1, m1, tmp.data() + iy * m1, 1);
    for (Eigen::Index jx = 0; jx < m1; ++jx)
      restrict_line(tmp.data() + jx, m1, m1, out.col(l).data() + jx, m1);
  }
}

void prolong_space_slice(const SpaceGrid& coarse, const SpaceGrid& fine,
                         const Eigen::Ref<const Eigen::MatrixXd>& u,
                         Eigen::Ref<Eigen::MatrixXd> out) {
  const Eigen::Index n1 = fine.n_per_dim, m1 = coarse.n_per_dim;
  if (coarse.level + 1 != fine.level || coarse.dim != fine.dim)
    throw std::invalid_argument("space transfer level mismatch");
  if (fine.dim == 1) {
    for (Eigen::Index l = 0; l < u.cols(); ++l)
      prolong_line(u.col(l).data(), 1, m1, out.col(l).data(), 1);
    return;
  }
  Eigen::MatrixXd tmp(n1, m1);  // x-prolonged, still coarse in y
  for (Eigen::Index l = 0; l < u.cols(); ++l) {
    for (Eigen::Index jy = 0; jy < m1; ++jy)
      prolong_line(u.col(l).data() + jy * m1, 1, m1, tmp.data() + jy * n1, 1);
    for (Eigen::Index ix = 0; ix < n1; ++ix)
      prolong_line(tmp.data() + ix, n1, m1, out.col(l).data() + ix, n1);
  }
}

BlockVector restrict_full(const TimeTransfer& t, const SpaceGrid& fine_grid,
                          const SpaceGrid& coarse_grid,
                          const BlockVector& fine) {
  if (fine_grid.level == 0)
    throw std::invalid_argument("cannot coarsen the level-0 space grid");
  const BlockVector tmp = restrict_semi(t, fine);
  BlockVector coarse(tmp.n_t(), coarse_grid.n_nodes, tmp.n_loc());
#pragma omp parallel for schedule(static)
  for (Eigen::Index n = 0; n < coarse.n_t(); ++n)
    restrict_space_slice(fine_grid, coarse_grid, tmp.step(n), coarse.step(n));
  return coarse;
}

BlockVector prolong_full(const TimeTransfer& t, const SpaceGrid& coarse_grid,
                         const SpaceGrid& fine_grid, const BlockVector& coarse) {
  BlockVector tmp(coarse.n_t(), fine_grid.n_nodes, coarse.n_loc());
#pragma omp parallel for schedule(static)
  for (Eigen::Index n = 0; n < coarse.n_t(); ++n)
    prolong_space_slice(coarse_grid, fine_grid, coarse.step(n), tmp.step(n));
  return prolong_semi(t, tmp);
}

}  // namespace stmg
