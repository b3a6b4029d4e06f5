#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace dumbbell {

// Prolate spheroidal coordinates with foci (0, +-a, 0):
//   x = a sinh(mu) sin(nu) cos(phi)
//   y = a cosh(mu) cos(nu)
//   z = a sinh(mu) sin(nu) sin(phi)
// mu > 0, nu in [0,pi], phi in [0,2pi]. Level sets of mu are confocal
// ellipsoids, prolate along y.
Eigen::Vector3d prolate_map(double a, double mu, double nu, double phi);

// det J = -a^3 sinh(mu) sin(nu) (sin^2(nu) + sinh^2(mu))
double prolate_jacobian_det(double a, double mu, double nu);

// Recover mu for a point by bisection on
//   y^2/(a^2 cosh^2 mu) + (x^2+z^2)/(a^2 sinh^2 mu) = 1,
// which is strictly decreasing in mu. Points on the focal segment
// (x=z=0, |y| <= a) return 0. Bisection on (0, 40], tolerance 1e-12.
double prolate_mu(double a, const Eigen::Vector3d& p);

// Is the point strictly inside the ellipsoid { mu < mu_bound }? Uses the
// monotonicity of the level function, no inversion needed.
bool inside_ellipsoid(double a, double mu_bound, const Eigen::Vector3d& p);

// Harmonic shell between the confocal ellipsoids mu = 2m (value v_inner) and
// mu = 2M (value v_outer). The radial solution of Laplace's equation in these
// coordinates is c * ln|k tanh(mu/2)|.
struct ProlateShell {
  double a = 1.0;
  double m = 0.1;  // inner boundary at mu = 2m
  double M = 1.0;  // outer boundary at mu = 2M
  double v_inner = 0.0;
  double v_outer = 1.0;

  void validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("ProlateShell: a must be > 0");
    if (!(m > 0.0) || !(M > m))
      throw std::invalid_argument("ProlateShell: requires 0 < m < M");
  }
  double jump() const { return v_outer - v_inner; }
  // ln(tanh M / tanh m), the shell's logarithmic thickness.
  double log_span() const;
  // Coefficient c of the radial solution.
  double profile_coefficient() const { return jump() / log_span(); }
};

// h(mu) = v_inner + jump * ln(tanh(mu/2)/tanh m) / ln(tanh M/tanh m).
// Monotone in mu; throws outside [2m, 2M].
double shell_profile(const ProlateShell& shell, double mu);

// Dirichlet energy 1/2 int |grad h|^2 over half of the shell:
// pi a jump^2 / ln(tanh M / tanh m). A full shell doubles this.
double half_shell_energy(const ProlateShell& shell);
double full_shell_energy(const ProlateShell& shell);

}  // namespace dumbbell
