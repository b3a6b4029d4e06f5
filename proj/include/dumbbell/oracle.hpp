#pragma once

#include <Eigen/Dense>

#include "dumbbell/competitors.hpp"
#include "dumbbell/prolate.hpp"

namespace dumbbell {

// Brute-force checks kept independent of the closed forms they validate.

struct QuadratureSpec {
  int n_mu = 2000;
  int n_nu = 2000;

  void validate() const {
    if (n_mu < 16 || n_nu < 16)
      throw std::invalid_argument("QuadratureSpec: node counts must be >= 16");
  }
};

// Midpoint quadrature of the shell Dirichlet energy in (mu, nu); the phi
// integral is analytic (the integrand is phi-free). Returns the half-shell
// value, converging to half_shell_energy at second order in node spacing.
double quad_shell_energy(const ProlateShell& shell, const QuadratureSpec& spec);

// Exact tridiagonal solve of the 1D discrete Dirichlet problem (W off) on a
// uniform chain of n cells with frozen end values: the affine interpolant.
Eigen::VectorXd solve_1d_chain(int n, double left_value, double right_value);

// Exhaustive minimisation of the asymptotic mixed-energy quadratic over an
// n x n grid on [alpha,beta]^2; oracle for optimal_AB. n >= 100.
MixedChoice grid_search_AB(const NeckParams& neck, double alpha, double beta,
                           int n);

}  // namespace dumbbell
