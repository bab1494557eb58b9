#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "stmg/mg.hpp"
#include "stmg/transfer.hpp"

using namespace stmg;

namespace {

// Value of the DG function with the given Legendre coefficients at local
// time t in (0, tau).
double eval_dg(const Eigen::VectorXd& coeffs, double t, double tau) {
  double v = 0.0;
  for (int l = 0; l < coeffs.size(); ++l)
    v += coeffs(l) * legendre_value(l, 2.0 * t / tau - 1.0);
  return v;
}

}  // namespace

TEST_CASE("time transfer blocks for low degrees") {
  SUBCASE("p_t = 0: constants project to constants") {
    const TimeTransfer t = build_time_transfer(0, 0.4);
    CHECK(t.R1(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t.R2(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("p_t = 1: frozen projection blocks") {
    const TimeTransfer t = build_time_transfer(1, 1.0);
    Eigen::MatrixXd r1t(2, 2), r2t(2, 2);
    r1t << 1.0, -0.5, 0.0, 0.5;  // R1^T = M^{-1} Mt1
    r2t << 1.0, 0.5, 0.0, 0.5;
    CHECK((t.R1.transpose() - r1t).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((t.R2.transpose() - r2t).cwiseAbs().maxCoeff() < 1e-13);
  }
  SUBCASE("p_t = 2: frozen projection blocks") {
    const TimeTransfer t = build_time_transfer(2, 0.25);
    Eigen::MatrixXd r1t(3, 3);
    r1t << 1.0, -0.5, 0.0, 0.0, 0.5, -0.75, 0.0, 0.0, 0.25;
    CHECK((t.R1.transpose() - r1t).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("prolongation reproduces coarse polynomials") {
  const double tau = 0.6;
  for (int p = 0; p <= 5; ++p) {
    const TimeTransfer t = build_time_transfer(p, tau);
    for (int mode = 0; mode <= p; ++mode) {
      // coarse basis polynomial number `mode` on (0, 2 tau)
      Eigen::VectorXd coarse = Eigen::VectorXd::Zero(p + 1);
      coarse(mode) = 1.0;
      const Eigen::VectorXd fine1 = t.R1.transpose() * coarse;
      const Eigen::VectorXd fine2 = t.R2.transpose() * coarse;
      for (double s : {0.05 * tau, 0.33 * tau, 0.92 * tau}) {
        const double want1 = legendre_value(mode, 2.0 * s / (2.0 * tau) - 1.0);
        const double want2 =
            legendre_value(mode, 2.0 * (s + tau) / (2.0 * tau) - 1.0);
        CHECK(eval_dg(fine1, s, tau) == doctest::Approx(want1).epsilon(1e-12));
        CHECK(eval_dg(fine2, s, tau) == doctest::Approx(want2).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("p_t = 1: prolongating the coarse linear t reproduces t") {
  const double tau = 1.0;
  const TimeTransfer t = build_time_transfer(1, tau);
  // t on (0, 2 tau) in shifted Legendre coordinates: t = tau + tau P1
  Eigen::VectorXd coarse(2);
  coarse << tau, tau;
  const Eigen::VectorXd f1 = t.R1.transpose() * coarse;
  const Eigen::VectorXd f2 = t.R2.transpose() * coarse;
  for (double s : {0.1, 0.5, 0.9}) {
    CHECK(eval_dg(f1, s, tau) == doctest::Approx(s).epsilon(1e-13));
    CHECK(eval_dg(f2, s, tau) == doctest::Approx(s + tau).epsilon(1e-13));
  }
}

TEST_CASE("p_t = 0 pair restriction gives the L2 mean contribution") {
  const double tau = 0.5;
  const TimeTransfer t = build_time_transfer(0, tau);
  BlockVector fine(2, 1, 1);
  fine(0, 0, 0) = 3.0;
  fine(1, 0, 0) = 5.0;
  const BlockVector coarse = restrict_semi(t, fine);
  CHECK(coarse(0, 0, 0) == doctest::Approx(8.0));
  // mass-rescaled, this is the L2 projection (the mean):
  // M_{2tau}^{-1} R M_tau (a, b) = (a + b) / 2
  CHECK(tau * 8.0 / (2.0 * tau) == doctest::Approx(4.0));
}

TEST_CASE("prolong of the projected constant is the constant") {
  for (int p = 0; p <= 3; ++p) {
    const double tau = 0.3;
    const TimeTransfer t = build_time_transfer(p, tau);
    const DGTimeBlock fine_dg = assemble_dg_block(p, tau);
    const DGTimeBlock coarse_dg = assemble_dg_block(p, 2.0 * tau);
    // function-space restriction Pi = M_coarse^{-1} R M_fine
    Eigen::VectorXd ones_coeff = Eigen::VectorXd::Zero(p + 1);
    ones_coeff(0) = 1.0;  // the constant function
    const Eigen::VectorXd rmf = t.R1 * (fine_dg.M * ones_coeff) +
                                t.R2 * (fine_dg.M * ones_coeff);
    const Eigen::VectorXd coarse_coeff =
        coarse_dg.M.partialPivLu().solve(rmf);
    const Eigen::VectorXd back1 = t.R1.transpose() * coarse_coeff;
    CHECK((back1 - ones_coeff).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("adjointness of semi and full transfers") {
  const TimeTransfer t = build_time_transfer(1, 0.2);
  const SpaceGrid fine_grid = build_space_grid(1, 2);
  const SpaceGrid coarse_grid = build_space_grid(1, 1);

  BlockVector u(8, 7, 2), v(4, 7, 2);
  fill_random(u, 101);
  fill_random(v, 102);
  const BlockVector ru = restrict_semi(t, u);
  const BlockVector pv = prolong_semi(t, v);
  const double lhs = ru.flat().dot(v.flat());
  const double rhs = u.flat().dot(pv.flat());
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

  BlockVector w(4, 3, 2);
  fill_random(w, 103);
  const BlockVector rfu = restrict_full(t, fine_grid, coarse_grid, u);
  const BlockVector pfw = prolong_full(t, coarse_grid, fine_grid, w);
  CHECK(rfu.flat().dot(w.flat()) ==
        doctest::Approx(u.flat().dot(pfw.flat())).epsilon(1e-12));

  SUBCASE("2d variant") {
    const SpaceGrid f2 = build_space_grid(2, 2);
    const SpaceGrid c2 = build_space_grid(2, 1);
    BlockVector u2(4, f2.n_nodes, 2), w2(2, c2.n_nodes, 2);
    fill_random(u2, 104);
    fill_random(w2, 105);
    const BlockVector r2 = restrict_full(t, f2, c2, u2);
    const BlockVector p2 = prolong_full(t, c2, f2, w2);
    CHECK(r2.flat().dot(w2.flat()) ==
          doctest::Approx(u2.flat().dot(p2.flat())).epsilon(1e-12));
  }
}

TEST_CASE("odd step counts are rejected; level-0 space cannot coarsen") {
  const TimeTransfer t = build_time_transfer(0, 1.0);
  BlockVector odd(3, 2, 1);
  CHECK_THROWS_AS(restrict_semi(t, odd), std::invalid_argument);

  const SpaceGrid g0 = build_space_grid(1, 0);
  BlockVector u(2, 1, 1);
  CHECK_THROWS_AS(restrict_full(t, g0, g0, u), std::invalid_argument);
}

TEST_CASE("space restriction stencil weights and Fourier response") {
  const SpaceGrid fine = build_space_grid(1, 3);   // 15 nodes
  const SpaceGrid coarse = build_space_grid(1, 2);  // 7 nodes

  SUBCASE("unit vector weights") {
    // e at fine node 2j+1 (a coarse point) contributes weight 1 to coarse
    // node j; its neighbors contribute 1/2.
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(fine.n_nodes, 1);
    u(5, 0) = 1.0;  // fine node 5 = coarse node 2
    Eigen::MatrixXd out(coarse.n_nodes, 1);
    restrict_space_slice(fine, coarse, u, out);
    CHECK(out(2, 0) == doctest::Approx(1.0));
    u.setZero();
    u(4, 0) = 1.0;  // odd fine position between coarse nodes 1 and 2
    restrict_space_slice(fine, coarse, u, out);
    CHECK(out(1, 0) == doctest::Approx(0.5));
    CHECK(out(2, 0) == doctest::Approx(0.5));
  }

  SUBCASE("interior rows act like the symbol 1 + cos(theta)") {
    const double theta = 2.0 * std::numbers::pi * 3.0 / 16.0;
    Eigen::MatrixXd re(fine.n_nodes, 1), im(fine.n_nodes, 1);
    for (Eigen::Index i = 0; i < fine.n_nodes; ++i) {
      re(i, 0) = std::cos(theta * double(i + 1));
      im(i, 0) = std::sin(theta * double(i + 1));
    }
    Eigen::MatrixXd re_c(coarse.n_nodes, 1), im_c(coarse.n_nodes, 1);
    restrict_space_slice(fine, coarse, re, re_c);
    restrict_space_slice(fine, coarse, im, im_c);
    const double symbol = 1.0 + std::cos(theta);
    for (Eigen::Index j = 1; j + 1 < coarse.n_nodes; ++j) {
      const std::complex<double> got(re_c(j, 0), im_c(j, 0));
      const std::complex<double> want =
          symbol * std::polar(1.0, 2.0 * theta * double(j + 1));
      CHECK(std::abs(got - want) < 1e-12);
    }
  }
}

TEST_CASE("coarse operators are rediscretized, not Galerkin products") {
  // The hierarchy assembles L_{2tau,2h} directly; its spectrum must agree
  // with an independent assembly at the coarse parameters.
  const DGTimeBlock dg_coarse = assemble_dg_block(1, 0.5);
  const SpaceGrid g = build_space_grid(1, 1);
  const SpaceMatrices sm = assemble_space(g);
  const test::MatrixXd direct = test::dense_block(
      dg_coarse, test::dense_space_matrix(sm.M), test::dense_space_matrix(sm.K));
  const test::MatrixXd via_solver(assemble_block_matrix(dg_coarse, sm));
  CHECK((direct - via_solver).cwiseAbs().maxCoeff() < 1e-13);
}
