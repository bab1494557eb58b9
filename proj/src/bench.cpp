#include "stmg/bench.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "stmg/threading.hpp"

namespace stmg::bench {

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

HierarchyParams scaling_hierarchy_params(const ScalingProblem& p) {
  HierarchyParams hp;
  hp.p_t = p.p_t;
  hp.dim = p.dim;
  hp.space_level = p.space_level;
  hp.time_level = p.time_level;
  hp.t_final = p.t_final;
  hp.mu_star = lfa::critical_mu(p.p_t);
  hp.block_solver = p.block_solver;
  return hp;
}

ScalingRecord run_scaling_case(const ScalingProblem& p, int threads,
                               bool time_forward_substitution) {
  set_num_threads(threads);
  const STHierarchy hierarchy = build_hierarchy(scaling_hierarchy_params(p));
  const STOperator op = hierarchy.finest().op();

  BlockVector u0 = op.make_vector();
  fill_random(u0, p.seed);
  const BlockVector f(op.n_t, op.n_x(), op.n_loc());

  ScalingRecord rec;
  rec.threads = threads;
  rec.n_t = op.n_t;
  rec.n_x = op.n_x();
  rec.p_t = p.p_t;
  rec.wall_time_seconds = std::numeric_limits<double>::infinity();
  CycleConfig cycle = p.cycle;
  cycle.smoother.block_solver = p.block_solver;
  for (int rep = 0; rep < 3; ++rep) {
    BlockVector u = u0;
    const auto start = std::chrono::steady_clock::now();
    const SolveReport report = solve(hierarchy, f, u, cycle, p.eps_mg);
    rec.wall_time_seconds = std::min(rec.wall_time_seconds,
                                     elapsed_seconds(start));
    rec.iterations = report.iterations;
  }

  if (time_forward_substitution) {
    const STLevel& finest = hierarchy.finest();
    const BlockSolver block_lu(finest.dg, finest.space_ref());
    rec.fwd_sub_seconds = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 3; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      const BlockVector u = forward_substitution_solve(op, block_lu, f);
      rec.fwd_sub_seconds = std::min(rec.fwd_sub_seconds,
                                     elapsed_seconds(start));
      (void)u;
    }
  }
  return rec;
}

}  // namespace

namespace {

RhoMeasurement measure_impl(const RhoProblem& problem,
                            const lfa::TwoGridConfig& cycle,
                            const BlockVector* initial_guess,
                            std::uint64_t seed,
                            const lfa::FrequencyGrid& grid) {
  const SpaceGrid space = build_space_grid(problem.dim, problem.space_level);
  const double tau = problem.mu * space.h * space.h;
  const Eigen::Index n_t = Eigen::Index(1) << problem.time_level;

  HierarchyParams hp;
  hp.p_t = problem.p_t;
  hp.dim = problem.dim;
  hp.space_level = problem.space_level;
  hp.time_level = problem.time_level;
  hp.t_final = tau * double(n_t);
  hp.block_solver = BlockSolverKind::exact;
  const STHierarchy two_grid = build_two_grid(hp, problem.mode);
  const STOperator op = two_grid.finest().op();

  CycleConfig cc;
  cc.nu1 = cycle.nu1;
  cc.nu2 = cycle.nu2;
  cc.gamma = 1;
  cc.smoother.omega_t = cycle.omega_t;
  cc.smoother.block_solver = BlockSolverKind::exact;

  RhoMeasurement out;
  out.problem = problem;
  out.cycle = cycle;
  out.seed_used = seed;

  const BlockVector f(op.n_t, op.n_x(), op.n_loc());
  BlockVector u = op.make_vector();
  BlockVector r = op.make_vector();

  double r0 = 0.0;
  bool use_given = initial_guess != nullptr;
  bool seeded_before = false;
  for (;;) {
    if (use_given) {
      u = *initial_guess;
      use_given = false;
    } else {
      if (seeded_before) ++out.seed_used;  // rejected draw; reseed
      fill_random(u, out.seed_used);
      seeded_before = true;
    }
    residual(op, u, f, r);
    r0 = r.norm();
    if (r0 > 0.0) break;
  }

  const double floor = 1e-13 * r0;
  double prev = r0;
  double rho = 0.0;
  for (int k = 0; k < 250; ++k) {
    mg_cycle(two_grid, 0, u, f, cc);
    residual(op, u, f, r);
    const double rk = r.norm();
    ++out.n_iterations_used;
    if (prev > floor) rho = std::max(rho, rk / prev);
    prev = rk;
    if (rk <= floor) break;
  }
  out.measured_rho = rho;
  out.predicted_rho =
      lfa::twogrid_factor(problem.p_t, problem.mu, cycle, problem.mode, grid);
  return out;
}

}  // namespace

RhoMeasurement measure_convergence_factor(const RhoProblem& problem,
                                          const lfa::TwoGridConfig& cycle,
                                          std::uint64_t seed,
                                          const lfa::FrequencyGrid& grid) {
  return measure_impl(problem, cycle, nullptr, seed, grid);
}

RhoMeasurement measure_convergence_factor_from(const RhoProblem& problem,
                                               const lfa::TwoGridConfig& cycle,
                                               const BlockVector& initial_guess,
                                               std::uint64_t reseed_seed,
                                               const lfa::FrequencyGrid& grid) {
  return measure_impl(problem, cycle, &initial_guess, reseed_seed, grid);
}

std::vector<ScalingRecord> strong_scaling(const ScalingProblem& problem,
                                          const std::vector<int>& threads) {
  const Eigen::Index n_t = Eigen::Index(1) << problem.time_level;
  for (int t : threads)
    if (t <= 0 || n_t % t != 0)
      throw std::invalid_argument(
          "strong scaling: n_t must be divisible by every thread count");
  const int restore = max_threads();
  std::vector<ScalingRecord> records;
  records.reserve(threads.size());
  for (int t : threads) records.push_back(run_scaling_case(problem, t, false));
  set_num_threads(restore);
  return records;
}

std::vector<ScalingRecord> weak_scaling(const ScalingProblem& base,
                                        const std::vector<int>& threads) {
  const int restore = max_threads();
  std::vector<ScalingRecord> records;
  records.reserve(threads.size());
  for (int t : threads) {
    // 2 time steps per thread, fixed step size: T grows with the grid.
    const int time_level = int(std::lround(std::log2(2.0 * t)));
    if ((1 << time_level) != 2 * t)
      throw std::invalid_argument("weak scaling: thread count must be 2^k");
    ScalingProblem p = base;
    p.time_level = time_level;
    p.t_final = base.t_final * double(1 << time_level) /
                double(Eigen::Index(1) << base.time_level);
    records.push_back(run_scaling_case(p, t, true));
  }
  set_num_threads(restore);
  return records;
}

}  // namespace stmg::bench
