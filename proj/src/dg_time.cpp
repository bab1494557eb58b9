#include "stmg/dg_time.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stmg {

namespace {

// Pairwise sum of a short term array.
double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 2) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

std::complex<double> pairwise_sum(std::span<const std::complex<double>> v) {
  if (v.size() <= 2) {
    std::complex<double> s = 0.0;
    for (auto x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

void check_degree(int p_t) {
  if (p_t < 0 || p_t > kMaxTimeDegree)
    throw std::invalid_argument("time degree p_t out of supported range [0," +
                                std::to_string(kMaxTimeDegree) + "]: " +
                                std::to_string(p_t));
}

// Coefficients of the (m, m+1) Pade numerator/denominator of e^z via the
// factorial closed form, built multiplicatively to stay in range.
//   P(z) = sum_j p_j z^j,  Q(z) = sum_j q_j (-z)^j.
struct PadeCoeffs {
  std::vector<double> p, q;
};

PadeCoeffs pade_coeffs(int p_t) {
  const int m = p_t, n = p_t + 1;
  PadeCoeffs c;
  c.p.resize(m + 1);
  c.q.resize(n + 1);
  c.p[0] = 1.0;
  for (int j = 0; j < m; ++j)
    c.p[j + 1] = c.p[j] * double(m - j) / (double(m + n - j) * double(j + 1));
  c.q[0] = 1.0;
  for (int j = 0; j < n; ++j)
    c.q[j + 1] = c.q[j] * double(n - j) / (double(m + n - j) * double(j + 1));
  return c;
}

// Local time basis on (0, tau), evaluated at local coordinate t.
double basis_value(TimeBasis basis, int l, double t, double tau) {
  switch (basis) {
    case TimeBasis::legendre:
      return legendre_value(l, 2.0 * t / tau - 1.0);
    case TimeBasis::monomial:
      return std::pow(t / tau, l);
  }
  return 0.0;
}

double basis_derivative(TimeBasis basis, int l, double t, double tau) {
  switch (basis) {
    case TimeBasis::legendre:
      return legendre_derivative(l, 2.0 * t / tau - 1.0) * 2.0 / tau;
    case TimeBasis::monomial:
      return l == 0 ? 0.0 : double(l) * std::pow(t / tau, l - 1) / tau;
  }
  return 0.0;
}

}  // namespace

QuadratureRule gauss_legendre(int n_points) {
  QuadratureRule rule;
  rule.nodes.resize(n_points);
  rule.weights.resize(n_points);
  for (int i = 0; i < n_points; ++i) {
    // Newton from the Chebyshev initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n_points + 0.5));
    for (int it = 0; it < 100; ++it) {
      const double f = legendre_value(n_points, x);
      const double df = legendre_derivative(n_points, x);
      const double dx = f / df;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double df = legendre_derivative(n_points, x);
    rule.nodes[n_points - 1 - i] = x;
    rule.weights[n_points - 1 - i] = 2.0 / ((1.0 - x * x) * df * df);
  }
  return rule;
}

double legendre_value(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return p0;
  for (int l = 1; l < n; ++l) {
    const double p2 = ((2 * l + 1) * x * p1 - l * p0) / (l + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double legendre_derivative(int n, double x) {
  if (n == 0) return 0.0;
  if (std::abs(x) == 1.0) {
    const double sign = (x > 0 || n % 2 == 1) ? 1.0 : -1.0;
    return sign * 0.5 * n * (n + 1);
  }
  return n * (x * legendre_value(n, x) - legendre_value(n - 1, x)) /
         (x * x - 1.0);
}

DGTimeBlock assemble_dg_block(int p_t, double tau, TimeBasis basis) {
  check_degree(p_t);
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");

  const int n_loc = p_t + 1;
  DGTimeBlock block;
  block.p_t = p_t;
  block.tau = tau;
  block.K = Eigen::MatrixXd::Zero(n_loc, n_loc);
  block.M = Eigen::MatrixXd::Zero(n_loc, n_loc);
  block.N = Eigen::MatrixXd::Zero(n_loc, n_loc);

  const QuadratureRule rule = gauss_legendre(n_loc);
  const int nq = n_loc;

  // Basis values/derivatives at the mapped quadrature points.
  Eigen::MatrixXd val(n_loc, nq), der(n_loc, nq);
  std::vector<double> w(nq);
  for (int q = 0; q < nq; ++q) {
    const double t = 0.5 * tau * (rule.nodes[q] + 1.0);
    w[q] = 0.5 * tau * rule.weights[q];
    for (int l = 0; l < n_loc; ++l) {
      val(l, q) = basis_value(basis, l, t, tau);
      der(l, q) = basis_derivative(basis, l, t, tau);
    }
  }

  std::vector<double> terms(nq);
  for (int k = 0; k < n_loc; ++k) {
    const double at_end_k = basis_value(basis, k, tau, tau);
    const double at_start_k = basis_value(basis, k, 0.0, tau);
    for (int l = 0; l < n_loc; ++l) {
      const double at_end_l = basis_value(basis, l, tau, tau);
      for (int q = 0; q < nq; ++q) terms[q] = -w[q] * val(l, q) * der(k, q);
      block.K(k, l) = pairwise_sum(terms) + at_end_l * at_end_k;
      for (int q = 0; q < nq; ++q) terms[q] = w[q] * val(l, q) * val(k, q);
      block.M(k, l) = pairwise_sum(terms);
      block.N(k, l) = at_end_l * at_start_k;
    }
  }
  return block;
}

std::complex<double> pade_stability(int p_t, std::complex<double> z) {
  check_degree(p_t);
  const PadeCoeffs c = pade_coeffs(p_t);

  std::vector<std::complex<double>> terms;
  terms.reserve(c.q.size());
  std::complex<double> zj = 1.0;
  for (double pj : c.p) {
    terms.push_back(pj * zj);
    zj *= z;
  }
  const std::complex<double> num =
      pairwise_sum(std::span<const std::complex<double>>(terms));

  terms.clear();
  zj = 1.0;
  for (double qj : c.q) {
    terms.push_back(qj * zj);
    zj *= -z;
  }
  const std::complex<double> den =
      pairwise_sum(std::span<const std::complex<double>>(terms));

  if (den == 0.0)
    throw std::domain_error("pade_stability: z is a pole of the denominator");
  return num / den;
}

double pade_stability(int p_t, double z) {
  return pade_stability(p_t, std::complex<double>(z, 0.0)).real();
}

Eigen::VectorXcd stability_eigenvalues(const DGTimeBlock& block,
                                       double lambda) {
  const Eigen::MatrixXd A = block.K + lambda * block.M;
  const Eigen::MatrixXd T = A.partialPivLu().solve(block.N);
  return Eigen::EigenSolver<Eigen::MatrixXd>(T, false).eigenvalues();
}

bool pade_lower_bound_holds(int p_t, std::span<const double> z_grid) {
  const double bound = 0.5 * (5.0 - 3.0 * std::sqrt(3.0));
  for (double z : z_grid) {
    if (z > 0.0)
      throw std::invalid_argument("lower bound check expects z <= 0");
    if (pade_stability(p_t, z) < bound) return false;
  }
  return true;
}

}  // namespace stmg
