#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "stmg/dg_time.hpp"
#include "stmg/mg.hpp"

namespace stmg::lfa {

/// beta(theta_x) = 6 (1 - cos)/(2 + cos), the Fourier symbol ratio of the
/// P1 stiffness and mass stencils; ranges over [0, 12].
double beta(double theta_x);

/// alpha(theta_x, mu) = R(-mu beta(theta_x)).
double alpha(int p_t, double mu, double theta_x);

/// Frequency shift to the aliased harmonic, gamma(t) = t -/+ pi, mapping
/// (-pi/2, pi/2] onto the high range (gamma(0) = pi).
double shift(double theta);

/// Sampling of (-pi, pi]^2 with theta = 2 k pi / n per axis. theta_x = 0 is
/// excluded from two-grid maximization (the Laplacian symbol vanishes
/// there); theta_t = 0 is kept.
struct FrequencyGrid {
  int n_theta_x = 256;
  int n_theta_t = 256;
};

struct TwoGridConfig {
  double omega_t = 0.5;
  int nu1 = 1;
  int nu2 = 1;
};

struct SpatialSmootherConfig {
  double omega_x = 2.0 / 3.0;
  int nu1_x = 2;
  int nu2_x = 2;
};

using ComplexMatrix = Eigen::MatrixXcd;

double spectral_radius(const ComplexMatrix& m);

/// Symbol factory for one (p_t, mu). Everything is nondimensionalized to
/// tau = mu, h = 1; symbols depend on (tau, h) only through mu.
class SymbolBuilder {
 public:
  SymbolBuilder(int p_t, double mu);

  int p_t() const { return p_t_; }
  double mu() const { return mu_; }
  int n_loc() const { return p_t_ + 1; }

  /// Fourier symbol of the fine operator L_{tau,h}.
  ComplexMatrix op_symbol(double theta_x, double theta_t) const;
  /// Coarse symbols of the rediscretized operators L_{2tau,h} at
  /// (theta_x, 2 theta_t) and L_{2tau,2h} at (2 theta_x, 2 theta_t).
  ComplexMatrix op_symbol_coarse_semi(double theta_x, double theta_t) const;
  ComplexMatrix op_symbol_coarse_full(double theta_x, double theta_t) const;

  /// Symbol of the block diagonal A(theta_x) (the Jacobi block).
  ComplexMatrix diag_symbol(double theta_x) const;

  /// Symbol of one damped block Jacobi step,
  /// (1 - w) I + w e^{-i theta_t} (K + beta M)^{-1} N.
  ComplexMatrix smoother_symbol(double omega_t, double theta_x,
                                double theta_t) const;

  /// Closed form of the spectral radius of smoother_symbol:
  /// max{|1-w|, sqrt((1-w)^2 + 2 w (1-w) a cos(theta_t) + a^2 w^2)}.
  double smoother_rho_closed_form(double omega_t, double theta_x,
                                  double theta_t) const;

  /// Time restriction/prolongation symbols R(theta) = e^{-i theta} R1 + R2
  /// and P(theta) = (e^{i theta} R1 + R2)^T / 2.
  ComplexMatrix time_restriction_symbol(double theta_t) const;
  ComplexMatrix time_prolongation_symbol(double theta_t) const;

  /// 4 N_t x 4 N_t two-grid symbol on the space of harmonics
  /// {(tx,tt), (g tx,tt), (tx,g tt), (g tx,g tt)}. Throws for theta_x = 0
  /// (singular coarse symbol).
  ComplexMatrix twogrid_symbol(const TwoGridConfig& cfg, Coarsening mode,
                               double theta_x, double theta_t) const;

  /// Same with the block solves approximated by one spatial two-grid
  /// iteration (damped Jacobi in space).
  ComplexMatrix twogrid_symbol_inexact(const TwoGridConfig& cfg,
                                       const SpatialSmootherConfig& sp,
                                       Coarsening mode, double theta_x,
                                       double theta_t) const;

  /// 2 N_t x 2 N_t symbol of the spatial two-grid iteration matrix used by
  /// the inexact block solver, on the pair (theta_x, gamma(theta_x)).
  ComplexMatrix spatial_twogrid_symbol(const SpatialSmootherConfig& sp,
                                       double theta_x) const;

  /// Block-smoother symbol on the harmonics with an explicitly supplied
  /// spatial iteration matrix (zero reproduces the exact-solve smoother).
  ComplexMatrix approx_smoother_symbol(double omega_t,
                                       const ComplexMatrix& spatial_iter,
                                       double theta_x, double theta_t) const;

  /// Block-diagonal smoother symbol on the four harmonics, nu steps.
  ComplexMatrix harmonic_smoother_symbol(double omega_t, int nu,
                                         double theta_x, double theta_t) const;

 private:
  ComplexMatrix harmonic_smoother(const TwoGridConfig& cfg, int nu,
                                  double theta_x, double theta_t) const;
  ComplexMatrix coarse_correction_symbol(Coarsening mode, double theta_x,
                                         double theta_t) const;

  int p_t_;
  double mu_;
  DGTimeBlock fine_;    // tau = mu
  DGTimeBlock coarse_;  // tau = 2 mu
  Eigen::MatrixXd R1_, R2_;
};

/// Smoothing factors per the min-max analysis: the supremum of the symbol
/// spectral radius over the closed high-frequency region of the chosen
/// coarsening. semi: theta_t in [pi/2, pi] x theta_x in [0, pi];
/// full: theta_x in [pi/2, pi] x theta_t in [0, pi] (the space-high strip;
/// the time-high strip is governed by the semi bound 1/sqrt(2)).
double smoothing_factor(int p_t, double mu, double omega_t, Coarsening mode,
                        const FrequencyGrid& grid = {});

/// mu* solving R(-3 mu*) = sqrt(2) - 1 by bisection to 1e-12.
double critical_mu(int p_t);

/// Asymptotic two-grid convergence factor: max spectral radius of the
/// two-grid symbol over the sampled low-frequency quarter with theta_x != 0.
double twogrid_factor(int p_t, double mu, const TwoGridConfig& cfg,
                      Coarsening mode, const FrequencyGrid& grid = {});
double twogrid_factor_inexact(int p_t, double mu, const TwoGridConfig& cfg,
                              const SpatialSmootherConfig& sp, Coarsening mode,
                              const FrequencyGrid& grid = {});

}  // namespace stmg::lfa
