#include "stmg/lfa.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stmg::lfa {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

Complex phase(double theta) { return {std::cos(theta), -std::sin(theta)}; }

// L_{tau,h} symbol for an arbitrary block/mesh pair, Lemma form:
// (h/3)(2 + cos tx) [K + h^-2 beta(tx) M - e^{-i tt} N].
ComplexMatrix op_symbol_for(const DGTimeBlock& dg, double h, double theta_x,
                            double theta_t) {
  const double scale = h / 3.0 * (2.0 + std::cos(theta_x));
  ComplexMatrix s =
      (dg.K + beta(theta_x) / (h * h) * dg.M).cast<Complex>() -
      phase(theta_t) * dg.N.cast<Complex>();
  return scale * s;
}

Eigen::MatrixXd diag_symbol_for(const DGTimeBlock& dg, double h,
                                double theta_x) {
  return (h / 3.0 * (2.0 + std::cos(theta_x))) * dg.K +
         (2.0 / h * (1.0 - std::cos(theta_x))) * dg.M;
}

ComplexMatrix matrix_power(const ComplexMatrix& m, int nu) {
  ComplexMatrix out = ComplexMatrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < nu; ++i) out = out * m;
  return out;
}

double space_restriction_symbol(double theta_x) {
  return 1.0 + std::cos(theta_x);
}

}  // namespace

double beta(double theta_x) {
  const double c = std::cos(theta_x);
  return 6.0 * (1.0 - c) / (2.0 + c);
}

double alpha(int p_t, double mu, double theta_x) {
  return pade_stability(p_t, -mu * beta(theta_x));
}

double shift(double theta) { return theta > 0.0 ? theta - kPi : theta + kPi; }

double spectral_radius(const ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

SymbolBuilder::SymbolBuilder(int p_t, double mu)
    : p_t_(p_t), mu_(mu),
      fine_(assemble_dg_block(p_t, mu)),
      coarse_(assemble_dg_block(p_t, 2.0 * mu)) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  const TimeTransfer t = build_time_transfer(p_t, mu);
  R1_ = t.R1;
  R2_ = t.R2;
}

ComplexMatrix SymbolBuilder::op_symbol(double theta_x, double theta_t) const {
  return op_symbol_for(fine_, 1.0, theta_x, theta_t);
}

ComplexMatrix SymbolBuilder::op_symbol_coarse_semi(double theta_x,
                                                   double theta_t) const {
  return op_symbol_for(coarse_, 1.0, theta_x, 2.0 * theta_t);
}

ComplexMatrix SymbolBuilder::op_symbol_coarse_full(double theta_x,
                                                   double theta_t) const {
  return op_symbol_for(coarse_, 2.0, 2.0 * theta_x, 2.0 * theta_t);
}

ComplexMatrix SymbolBuilder::diag_symbol(double theta_x) const {
  return diag_symbol_for(fine_, 1.0, theta_x).cast<Complex>();
}

ComplexMatrix SymbolBuilder::smoother_symbol(double omega_t, double theta_x,
                                             double theta_t) const {
  const int n = n_loc();
  const Eigen::MatrixXd shifted = fine_.K + beta(theta_x) * fine_.M;
  const Eigen::MatrixXd propagator = shifted.partialPivLu().solve(fine_.N);
  return (1.0 - omega_t) * ComplexMatrix::Identity(n, n) +
         omega_t * phase(theta_t) * propagator.cast<Complex>();
}

double SymbolBuilder::smoother_rho_closed_form(double omega_t, double theta_x,
                                               double theta_t) const {
  const double a = alpha(p_t_, mu_, theta_x);
  const double s2 = (1.0 - omega_t) * (1.0 - omega_t) +
                    2.0 * omega_t * (1.0 - omega_t) * a * std::cos(theta_t) +
                    a * a * omega_t * omega_t;
  const double moving = std::sqrt(std::max(s2, 0.0));
  // The eigenvalue 1 - omega_t has multiplicity N_t - 1; for p_t = 0 the
  // symbol is scalar and only the moving eigenvalue exists.
  if (p_t_ == 0) return moving;
  return std::max(std::abs(1.0 - omega_t), moving);
}

ComplexMatrix SymbolBuilder::time_restriction_symbol(double theta_t) const {
  return phase(theta_t) * R1_.cast<Complex>() + R2_.cast<Complex>();
}

ComplexMatrix SymbolBuilder::time_prolongation_symbol(double theta_t) const {
  return 0.5 * (phase(-theta_t) * R1_.transpose().cast<Complex>() +
                R2_.transpose().cast<Complex>());
}

ComplexMatrix SymbolBuilder::harmonic_smoother(const TwoGridConfig& cfg,
                                               int nu, double theta_x,
                                               double theta_t) const {
  return harmonic_smoother_symbol(cfg.omega_t, nu, theta_x, theta_t);
}

ComplexMatrix SymbolBuilder::harmonic_smoother_symbol(double omega_t, int nu,
                                                      double theta_x,
                                                      double theta_t) const {
  const int n = n_loc();
  const double hx[2] = {theta_x, shift(theta_x)};
  const double ht[2] = {theta_t, shift(theta_t)};
  ComplexMatrix s = ComplexMatrix::Zero(4 * n, 4 * n);
  for (int j = 0; j < 4; ++j) {
    const ComplexMatrix block =
        matrix_power(smoother_symbol(omega_t, hx[j % 2], ht[j / 2]), nu);
    s.block(j * n, j * n, n, n) = block;
  }
  return s;
}

ComplexMatrix SymbolBuilder::coarse_correction_symbol(Coarsening mode,
                                                      double theta_x,
                                                      double theta_t) const {
  const int n = n_loc();
  const double gx = shift(theta_x), gt = shift(theta_t);
  const double hx[2] = {theta_x, gx};
  const double ht[2] = {theta_t, gt};

  ComplexMatrix op = ComplexMatrix::Zero(4 * n, 4 * n);
  for (int j = 0; j < 4; ++j)
    op.block(j * n, j * n, n, n) = op_symbol(hx[j % 2], ht[j / 2]);

  const ComplexMatrix rt = time_restriction_symbol(theta_t);
  const ComplexMatrix rt_g = time_restriction_symbol(gt);
  const ComplexMatrix pt = time_prolongation_symbol(theta_t);
  const ComplexMatrix pt_g = time_prolongation_symbol(gt);

  ComplexMatrix cgc;
  if (mode == Coarsening::semi) {
    ComplexMatrix restrict_sym = ComplexMatrix::Zero(2 * n, 4 * n);
    restrict_sym.block(0, 0, n, n) = rt;
    restrict_sym.block(0, 2 * n, n, n) = rt_g;
    restrict_sym.block(n, n, n, n) = rt;
    restrict_sym.block(n, 3 * n, n, n) = rt_g;

    ComplexMatrix prolong_sym = ComplexMatrix::Zero(4 * n, 2 * n);
    prolong_sym.block(0, 0, n, n) = pt;
    prolong_sym.block(n, n, n, n) = pt;
    prolong_sym.block(2 * n, 0, n, n) = pt_g;
    prolong_sym.block(3 * n, n, n, n) = pt_g;

    // Block-diagonal inverse of the coarse symbols at (tx, 2tt) and
    // (gamma(tx), 2tt).
    ComplexMatrix coarse = ComplexMatrix::Zero(2 * n, 2 * n);
    coarse.block(0, 0, n, n) = op_symbol_coarse_semi(theta_x, theta_t);
    coarse.block(n, n, n, n) = op_symbol_coarse_semi(gx, theta_t);

    cgc = prolong_sym * coarse.partialPivLu().solve(restrict_sym * op);
  } else {
    ComplexMatrix restrict_sym(n, 4 * n);
    restrict_sym.block(0, 0, n, n) = space_restriction_symbol(theta_x) * rt;
    restrict_sym.block(0, n, n, n) = space_restriction_symbol(gx) * rt;
    restrict_sym.block(0, 2 * n, n, n) = space_restriction_symbol(theta_x) * rt_g;
    restrict_sym.block(0, 3 * n, n, n) = space_restriction_symbol(gx) * rt_g;

    ComplexMatrix prolong_sym(4 * n, n);
    prolong_sym.block(0, 0, n, n) = 0.5 * space_restriction_symbol(theta_x) * pt;
    prolong_sym.block(n, 0, n, n) = 0.5 * space_restriction_symbol(gx) * pt;
    prolong_sym.block(2 * n, 0, n, n) =
        0.5 * space_restriction_symbol(theta_x) * pt_g;
    prolong_sym.block(3 * n, 0, n, n) = 0.5 * space_restriction_symbol(gx) * pt_g;

    const ComplexMatrix coarse = op_symbol_coarse_full(theta_x, theta_t);
    cgc = prolong_sym * coarse.partialPivLu().solve(restrict_sym * op);
  }
  return ComplexMatrix::Identity(4 * n, 4 * n) - cgc;
}

ComplexMatrix SymbolBuilder::twogrid_symbol(const TwoGridConfig& cfg,
                                            Coarsening mode, double theta_x,
                                            double theta_t) const {
  if (theta_x == 0.0)
    throw std::domain_error(
        "twogrid_symbol: theta_x = 0 is the singular frequency of the "
        "Laplacian symbol and is excluded");
  const ComplexMatrix cgc = coarse_correction_symbol(mode, theta_x, theta_t);
  return harmonic_smoother(cfg, cfg.nu2, theta_x, theta_t) * cgc *
         harmonic_smoother(cfg, cfg.nu1, theta_x, theta_t);
}

ComplexMatrix SymbolBuilder::spatial_twogrid_symbol(
    const SpatialSmootherConfig& sp, double theta_x) const {
  const int n = n_loc();
  const double gx = shift(theta_x);

  // All spatial symbols are real (no time frequency enters).
  const Eigen::MatrixXd a_tx = diag_symbol_for(fine_, 1.0, theta_x);
  const Eigen::MatrixXd a_gx = diag_symbol_for(fine_, 1.0, gx);
  const Eigen::MatrixXd a_coarse = diag_symbol_for(fine_, 2.0, 2.0 * theta_x);

  // Jacobi block in space (h = 1): (2/3) K + 2 M.
  const Eigen::PartialPivLU<Eigen::MatrixXd> dx_lu(
      Eigen::MatrixXd((2.0 / 3.0) * fine_.K + 2.0 * fine_.M));
  auto jacobi_power = [&](const Eigen::MatrixXd& a, int nu) {
    const Eigen::MatrixXd s =
        Eigen::MatrixXd::Identity(n, n) - sp.omega_x * dx_lu.solve(a);
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < nu; ++i) out = out * s;
    return out;
  };

  Eigen::MatrixXd pre = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  pre.block(0, 0, n, n) = jacobi_power(a_tx, sp.nu1_x);
  pre.block(n, n, n, n) = jacobi_power(a_gx, sp.nu1_x);
  Eigen::MatrixXd post = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  post.block(0, 0, n, n) = jacobi_power(a_tx, sp.nu2_x);
  post.block(n, n, n, n) = jacobi_power(a_gx, sp.nu2_x);

  Eigen::MatrixXd a_fine = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  a_fine.block(0, 0, n, n) = a_tx;
  a_fine.block(n, n, n, n) = a_gx;

  Eigen::MatrixXd restrict_sym(n, 2 * n);
  restrict_sym.block(0, 0, n, n) =
      space_restriction_symbol(theta_x) * Eigen::MatrixXd::Identity(n, n);
  restrict_sym.block(0, n, n, n) =
      space_restriction_symbol(gx) * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd prolong_sym = 0.5 * restrict_sym.transpose();

  const Eigen::MatrixXd cgc =
      Eigen::MatrixXd::Identity(2 * n, 2 * n) -
      prolong_sym * a_coarse.partialPivLu().solve(restrict_sym * a_fine);
  return (post * cgc * pre).cast<Complex>();
}

ComplexMatrix SymbolBuilder::approx_smoother_symbol(
    double omega_t, const ComplexMatrix& spatial_iter, double theta_x,
    double theta_t) const {
  const int n = n_loc();
  const double hx[2] = {theta_x, shift(theta_x)};
  const double ht[2] = {theta_t, shift(theta_t)};

  ComplexMatrix op = ComplexMatrix::Zero(4 * n, 4 * n);
  ComplexMatrix diag = ComplexMatrix::Zero(4 * n, 4 * n);
  for (int j = 0; j < 4; ++j) {
    op.block(j * n, j * n, n, n) = op_symbol(hx[j % 2], ht[j / 2]);
    diag.block(j * n, j * n, n, n) = diag_symbol(hx[j % 2]);
  }

  ComplexMatrix spatial = ComplexMatrix::Zero(4 * n, 4 * n);
  spatial.block(0, 0, 2 * n, 2 * n) = spatial_iter;
  spatial.block(2 * n, 2 * n, 2 * n, 2 * n) = spatial_iter;

  return ComplexMatrix::Identity(4 * n, 4 * n) -
         omega_t * (ComplexMatrix::Identity(4 * n, 4 * n) - spatial) *
             diag.partialPivLu().solve(op);
}

ComplexMatrix SymbolBuilder::twogrid_symbol_inexact(
    const TwoGridConfig& cfg, const SpatialSmootherConfig& sp, Coarsening mode,
    double theta_x, double theta_t) const {
  if (theta_x == 0.0)
    throw std::domain_error(
        "twogrid_symbol_inexact: theta_x = 0 is excluded");
  const ComplexMatrix spatial = spatial_twogrid_symbol(sp, theta_x);
  const ComplexMatrix smoother =
      approx_smoother_symbol(cfg.omega_t, spatial, theta_x, theta_t);
  const ComplexMatrix cgc = coarse_correction_symbol(mode, theta_x, theta_t);
  return matrix_power(smoother, cfg.nu2) * cgc * matrix_power(smoother, cfg.nu1);
}

double smoothing_factor(int p_t, double mu, double omega_t, Coarsening mode,
                        const FrequencyGrid& grid) {
  if (mode == Coarsening::none)
    throw std::invalid_argument("smoothing factor needs semi or full mode");
  const int nx = std::max(grid.n_theta_x, 64);
  const int nt = std::max(grid.n_theta_t, 64);
  const SymbolBuilder builder(p_t, mu);

  // Closed sampling regions; the supremum sits on the included boundary.
  const double tx_lo = mode == Coarsening::semi ? 0.0 : kPi / 2.0;
  const double tt_lo = mode == Coarsening::semi ? kPi / 2.0 : 0.0;

  double rho = 0.0;
#pragma omp parallel for reduction(max : rho) schedule(static)
  for (int i = 0; i <= nx; ++i) {
    const double tx = tx_lo + (kPi - tx_lo) * double(i) / double(nx);
    for (int j = 0; j <= nt; ++j) {
      const double tt = tt_lo + (kPi - tt_lo) * double(j) / double(nt);
      rho = std::max(rho,
                     spectral_radius(builder.smoother_symbol(omega_t, tx, tt)));
    }
  }
  return rho;
}

double critical_mu(int p_t) {
  const double target = std::sqrt(2.0) - 1.0;
  auto f = [&](double mu) { return pade_stability(p_t, -3.0 * mu) - target; };
  double lo = 1e-12, hi = 10.0;
  if (f(lo) < 0.0 || f(hi) > 0.0)
    throw std::runtime_error("critical_mu: no sign change on (0, 10]");
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) >= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

template <class SymbolFn>
double max_rho_over_low_quarter(const FrequencyGrid& grid, SymbolFn&& symbol) {
  const int nx = grid.n_theta_x, nt = grid.n_theta_t;
  // theta = 2 k pi / n; the quarter (0, pi/2] x [0, pi/2] covers the grid
  // up to the exact symmetries rho(-tx, tt) = rho(tx, tt) and
  // rho(tx, -tt) = rho(tx, tt); theta_x = 0 is excluded.
  double rho = 0.0;
#pragma omp parallel for reduction(max : rho) schedule(dynamic)
  for (int k = 1; k <= nx / 4; ++k) {
    const double tx = 2.0 * kPi * k / nx;
    for (int l = 0; l <= nt / 4; ++l) {
      const double tt = 2.0 * kPi * l / nt;
      rho = std::max(rho, spectral_radius(symbol(tx, tt)));
    }
  }
  return rho;
}

}  // namespace

double twogrid_factor(int p_t, double mu, const TwoGridConfig& cfg,
                      Coarsening mode, const FrequencyGrid& grid) {
  const SymbolBuilder builder(p_t, mu);
  return max_rho_over_low_quarter(grid, [&](double tx, double tt) {
    return builder.twogrid_symbol(cfg, mode, tx, tt);
  });
}

double twogrid_factor_inexact(int p_t, double mu, const TwoGridConfig& cfg,
                              const SpatialSmootherConfig& sp, Coarsening mode,
                              const FrequencyGrid& grid) {
  const SymbolBuilder builder(p_t, mu);
  return max_rho_over_low_quarter(grid, [&](double tx, double tt) {
    return builder.twogrid_symbol_inexact(cfg, sp, mode, tx, tt);
  });
}

}  // namespace stmg::lfa
