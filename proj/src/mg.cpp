#include "stmg/mg.hpp"

#include <chrono>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace stmg {

STHierarchy build_hierarchy(const HierarchyParams& p) {
  if (p.time_level < 0 || p.space_level < 0)
    throw std::invalid_argument("hierarchy levels must be >= 0");

  STHierarchy h;
  h.p_t = p.p_t;
  h.dim = p.dim;

  // Space matrices are shared between levels that reuse a grid.
  std::unordered_map<int, std::shared_ptr<const SpaceMatrices>> space_cache;
  auto space_for = [&](int level) {
    auto& entry = space_cache[level];
    if (!entry)
      entry = std::make_shared<SpaceMatrices>(
          assemble_space(build_space_grid(p.dim, level)));
    return entry;
  };

  Eigen::Index n_t = Eigen::Index(1) << p.time_level;
  double tau = p.t_final / double(n_t);
  int space_level = p.space_level;

  while (true) {
    STLevel level;
    level.dg = assemble_dg_block(p.p_t, tau);
    level.grid = build_space_grid(p.dim, space_level);
    level.space = space_for(space_level);
    level.n_t = n_t;
    level.mu = tau / (level.grid.h * level.grid.h);
    level.time_transfer = build_time_transfer(p.p_t, tau);
    h.levels.push_back(std::move(level));
    if (n_t == 1) break;

    bool full = false;
    switch (p.policy) {
      case CoarseningPolicy::mu_driven:
        full = h.levels.back().mu >= p.mu_star && space_level > 0;
        break;
      case CoarseningPolicy::always_semi:
        full = false;
        break;
      case CoarseningPolicy::prefer_full:
        full = space_level > 0;
        break;
    }
    h.levels.back().coarsen_to_next = full ? Coarsening::full : Coarsening::semi;
    n_t /= 2;
    tau *= 2.0;
    if (full) --space_level;
  }

  // Direct factorizations: always on the coarsest level; on every level
  // when the smoother uses exact block solves. The spatial multigrid
  // stack is built per level for the inexact variant.
  for (std::size_t i = 0; i < h.levels.size(); ++i) {
    STLevel& level = h.levels[i];
    const bool coarsest = i + 1 == h.levels.size();
    if (coarsest || p.block_solver == BlockSolverKind::exact)
      level.block_lu =
          std::make_shared<BlockSolver>(level.dg, level.space_ref());
    if (!coarsest && p.block_solver == BlockSolverKind::spatial_vcycle)
      level.spatial_mg = std::make_shared<SpatialVCycleSolver>(
          level.dg, p.dim, level.grid.level);
  }
  return h;
}

STHierarchy build_two_grid(const HierarchyParams& p, Coarsening mode) {
  if (p.time_level < 1)
    throw std::invalid_argument("two-grid cycle needs at least 2 time steps");
  if (mode == Coarsening::full && p.space_level == 0)
    throw std::invalid_argument("full coarsening needs space level > 0");

  HierarchyParams q = p;
  q.policy = mode == Coarsening::full ? CoarseningPolicy::prefer_full
                                      : CoarseningPolicy::always_semi;
  STHierarchy h = build_hierarchy(q);
  h.levels.resize(2);
  STLevel& coarse = h.levels[1];
  if (!coarse.block_lu)
    coarse.block_lu =
        std::make_shared<BlockSolver>(coarse.dg, coarse.space_ref());
  coarse.coarsen_to_next = Coarsening::none;
  return h;
}

void mg_cycle(const STHierarchy& hierarchy, std::size_t level_idx,
              BlockVector& u, const BlockVector& f, const CycleConfig& cfg) {
  const STLevel& level = hierarchy.levels[level_idx];
  const STOperator op = level.op();

  if (level_idx + 1 == hierarchy.levels.size()) {
    u = forward_substitution_solve(op, *level.block_lu, f);
    return;
  }

  SmootherConfig pre = cfg.smoother;
  pre.nu = cfg.nu1;
  block_jacobi_step(op, level.solver_context(), u, f, pre);

  BlockVector r = op.make_vector();
  residual(op, u, f, r);

  const STLevel& next = hierarchy.levels[level_idx + 1];
  BlockVector rc = level.coarsen_to_next == Coarsening::full
                       ? restrict_full(level.time_transfer, level.grid,
                                       next.grid, r)
                       : restrict_semi(level.time_transfer, r);

  BlockVector ec(rc.n_t(), rc.n_x(), rc.n_loc());
  for (int g = 0; g < cfg.gamma; ++g)
    mg_cycle(hierarchy, level_idx + 1, ec, rc, cfg);

  const BlockVector correction =
      level.coarsen_to_next == Coarsening::full
          ? prolong_full(level.time_transfer, next.grid, level.grid, ec)
          : prolong_semi(level.time_transfer, ec);
  u.flat() += correction.flat();

  SmootherConfig post = cfg.smoother;
  post.nu = cfg.nu2;
  block_jacobi_step(op, level.solver_context(), u, f, post);
}

SolveReport solve(const STHierarchy& hierarchy, const BlockVector& f,
                  BlockVector& u, const CycleConfig& cfg, double eps_mg,
                  int max_iter) {
  if (!(eps_mg > 0.0)) throw std::invalid_argument("eps_mg must be positive");
  const auto start = std::chrono::steady_clock::now();

  const STOperator op = hierarchy.finest().op();
  BlockVector r = op.make_vector();
  residual(op, u, f, r);
  const double r0 = r.norm();

  SolveReport report;
  report.residual_history.push_back(r0);
  if (r0 == 0.0) {
    report.converged = true;
  } else {
    for (int k = 0; k < max_iter; ++k) {
      mg_cycle(hierarchy, 0, u, f, cfg);
      residual(op, u, f, r);
      const double rk = r.norm();
      report.residual_history.push_back(rk);
      ++report.iterations;
      if (rk <= eps_mg * r0) {
        report.converged = true;
        break;
      }
    }
  }
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

void fill_random(BlockVector& v, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto& data = v.flat();
  for (Eigen::Index i = 0; i < data.size(); ++i)
    data[i] = double(gen() >> 11) * 0x1.0p-53;
}

}  // namespace stmg
