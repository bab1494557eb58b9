#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace stmg {

inline constexpr int kMaxTimeDegree = 10;

/// Matrices of one discontinuous Galerkin time step of degree p_t:
/// K[k,l] = -int psi_l psi_k' + psi_l(tau) psi_k(tau),
/// M[k,l] =  int psi_l psi_k,
/// N[k,l] =  psi_l(tau) psi_k(0)  (coupling to the previous step).
/// All matrices are N_t x N_t with N_t = p_t + 1.
struct DGTimeBlock {
  int p_t = 0;
  double tau = 1.0;
  Eigen::MatrixXd K;
  Eigen::MatrixXd M;
  Eigen::MatrixXd N;

  int n_loc() const { return p_t + 1; }
};

/// Time basis used for the assembly. Legendre is the default (M becomes
/// diagonal); the monomial basis exists to check basis invariance.
enum class TimeBasis { legendre, monomial };

/// Assembles the DG time-step matrices on (0, tau) by Gauss-Legendre
/// quadrature with p_t + 1 points (exact for degree 2 p_t + 1).
/// Throws std::invalid_argument for p_t outside [0, kMaxTimeDegree] or
/// tau <= 0.
DGTimeBlock assemble_dg_block(int p_t, double tau,
                              TimeBasis basis = TimeBasis::legendre);

/// Stability function R(z) of the DG(p_t) scheme: the (p_t, p_t+1)
/// subdiagonal Pade approximation of e^z.
std::complex<double> pade_stability(int p_t, std::complex<double> z);
double pade_stability(int p_t, double z);

/// Eigenvalues of (K + lambda M)^{-1} N. For a valid block these are
/// {0 (multiplicity N_t - 1), R(lambda tau)}; serves as the independent
/// cross-check of pade_stability.
Eigen::VectorXcd stability_eigenvalues(const DGTimeBlock& block, double lambda);

/// True iff R(z) >= (5 - 3 sqrt(3))/2 for every sampled z (all must be <= 0).
bool pade_lower_bound_holds(int p_t, std::span<const double> z_grid);

/// Gauss-Legendre rule on (-1, 1).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int n_points);

/// Value and derivative of the Legendre polynomial P_n at x in (-1, 1].
double legendre_value(int n, double x);
double legendre_derivative(int n, double x);

}  // namespace stmg
