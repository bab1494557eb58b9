#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "stmg/mg.hpp"
#include "stmg/smoother.hpp"
#include "stmg/threading.hpp"

using namespace stmg;

namespace {

struct Setting {
  DGTimeBlock dg;
  SpaceGrid grid;
  SpaceMatrices space;
  STOperator op;
  BlockSolver lu;

  Setting(int p_t, double tau, int dim, int level, Eigen::Index n_t)
      : dg(assemble_dg_block(p_t, tau)),
        grid(build_space_grid(dim, level)),
        space(assemble_space(grid)),
        op{&dg, &space, n_t},
        lu(dg, space) {}
};

}  // namespace

TEST_CASE("exact solutions are fixed points of the smoother") {
  Setting s(1, 0.1, 1, 3, 4);
  BlockVector f = s.op.make_vector();
  fill_random(f, 17);
  const BlockVector exact = forward_substitution_solve(s.op, s.lu, f);

  for (double omega : {0.3, 0.5, 1.0}) {
    SmootherConfig cfg;
    cfg.omega_t = omega;
    cfg.nu = 2;
    BlockVector u = exact;
    block_jacobi_step(s.op, {&s.lu, nullptr}, u, f, cfg);
    CHECK((u.flat() - exact.flat()).cwiseAbs().maxCoeff() <=
          1e-12 * exact.flat().cwiseAbs().maxCoeff());
  }
}

TEST_CASE("omega_t = 1 with exact blocks solves a single-step system") {
  Setting s(2, 0.4, 1, 3, 1);
  BlockVector f = s.op.make_vector();
  fill_random(f, 23);
  const BlockVector exact = forward_substitution_solve(s.op, s.lu, f);

  SmootherConfig cfg;
  cfg.omega_t = 1.0;
  cfg.nu = 1;
  BlockVector u = s.op.make_vector();
  block_jacobi_step(s.op, {&s.lu, nullptr}, u, f, cfg);
  CHECK((u.flat() - exact.flat()).cwiseAbs().maxCoeff() <=
        1e-11 * exact.flat().cwiseAbs().maxCoeff());
}

TEST_CASE("high time-frequency modes are damped at least by ~1/sqrt(2)") {
  // Periodic desk problem (n_t = 16, n_x = 15, p_t = 0, omega = 1/2):
  // one explicit smoother step damps the theta_t = pi mode by no more
  // than 1/sqrt(2) + 0.02.
  const test::PeriodicProblem pp(15, 16, 0, 0.8);
  const test::MatrixXd s = pp.smoother_matrix(0.5);
  const double bound = 1.0 / std::sqrt(2.0) + 0.02;
  for (int kx : {0, 1, 5, 7}) {
    const double tx = 2.0 * std::numbers::pi * kx / double(pp.n_x);
    Eigen::VectorXd mode(pp.dim());
    for (Eigen::Index n = 0; n < pp.n_t; ++n)
      for (Eigen::Index r = 0; r < pp.n_x; ++r)
        mode(n * pp.n_x + r) =
            std::cos(std::numbers::pi * double(n + 1) + tx * double(r + 1));
    const double damping = (s * mode).norm() / mode.norm();
    CHECK(damping <= bound);
  }
}

TEST_CASE("spatial v-cycle: exact data is a fixed point") {
  const DGTimeBlock dg = assemble_dg_block(1, 0.05);
  const SpatialVCycleSolver vc(dg, 1, 4);
  const SpaceMatrices sm = assemble_space(build_space_grid(1, 4));

  Eigen::MatrixXd x_star(sm.M.rows(), dg.n_loc());
  x_star.setRandom();
  Eigen::MatrixXd b(x_star.rows(), x_star.cols());
  apply_diag_block(dg, sm, x_star, b);

  SmootherConfig cfg;
  const Eigen::MatrixXd got = vc.cycle(b, x_star, cfg);
  CHECK((got - x_star).cwiseAbs().maxCoeff() <=
        1e-12 * x_star.cwiseAbs().maxCoeff());
}

TEST_CASE("spatial v-cycle contracts the error by at least 4x per cycle") {
  // level 5, p_t = 0, Poisson-like block
  const int level = 5;
  const SpaceGrid grid = build_space_grid(1, level);
  const double tau = grid.h * grid.h;  // mu = 1
  const DGTimeBlock dg = assemble_dg_block(0, tau);
  const SpatialVCycleSolver vc(dg, 1, level);
  const SpaceMatrices sm = assemble_space(grid);

  Eigen::MatrixXd x_star(grid.n_nodes, 1);
  x_star.setRandom();
  Eigen::MatrixXd b(x_star.rows(), 1);
  apply_diag_block(dg, sm, x_star, b);

  SmootherConfig cfg;  // nu1_x = nu2_x = 2, omega_x = 2/3 defaults
  CHECK(cfg.nu1_x == 2);
  CHECK(cfg.nu2_x == 2);
  CHECK(cfg.omega_x == doctest::Approx(2.0 / 3.0));

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(grid.n_nodes, 1);
  double err = (x - x_star).norm();
  for (int k = 0; k < 4; ++k) {
    x = vc.cycle(b, x, cfg);
    const double err_next = (x - x_star).norm();
    CHECK(err_next <= 0.25 * err);
    err = err_next;
  }
}

TEST_CASE("vcycle-backed smoother keeps exact solutions fixed") {
  Setting s(1, 0.02, 1, 4, 4);
  const SpatialVCycleSolver vc(s.dg, 1, 4);
  BlockVector f = s.op.make_vector();
  fill_random(f, 31);
  const BlockVector exact = forward_substitution_solve(s.op, s.lu, f);

  SmootherConfig cfg;
  cfg.block_solver = BlockSolverKind::spatial_vcycle;
  BlockVector u = exact;
  block_jacobi_step(s.op, {nullptr, &vc}, u, f, cfg);
  CHECK((u.flat() - exact.flat()).cwiseAbs().maxCoeff() <=
        1e-11 * exact.flat().cwiseAbs().maxCoeff());
}

TEST_CASE("smoother is deterministic across thread counts") {
  Setting s(1, 0.25, 1, 4, 8);
  BlockVector f = s.op.make_vector();
  fill_random(f, 41);

  SmootherConfig cfg;
  cfg.nu = 3;

  const int before = max_threads();
  BlockVector u1 = s.op.make_vector();
  fill_random(u1, 42);
  BlockVector u2 = u1;
  BlockVector u3 = u1;

  set_num_threads(1);
  block_jacobi_step(s.op, {&s.lu, nullptr}, u1, f, cfg);
  set_num_threads(2);
  block_jacobi_step(s.op, {&s.lu, nullptr}, u2, f, cfg);
  block_jacobi_step_serial(s.op, {&s.lu, nullptr}, u3, f, cfg);
  set_num_threads(before);

  CHECK((u1.flat() - u2.flat()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((u1.flat() - u3.flat()).cwiseAbs().maxCoeff() == 0.0);
}
