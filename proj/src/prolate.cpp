#include "dumbbell/prolate.hpp"

#include <cmath>

namespace dumbbell {

Eigen::Vector3d prolate_map(double a, double mu, double nu, double phi) {
  const double sh = std::sinh(mu);
  const double ch = std::cosh(mu);
  const double sn = std::sin(nu);
  const double cn = std::cos(nu);
  return {a * sh * sn * std::cos(phi), a * ch * cn, a * sh * sn * std::sin(phi)};
}

double prolate_jacobian_det(double a, double mu, double nu) {
  const double sh = std::sinh(mu);
  const double sn = std::sin(nu);
  return -a * a * a * sh * sn * (sn * sn + sh * sh);
}

namespace {

// Level function y^2/(a ch)^2 + rho^2/(a sh)^2, strictly decreasing in mu.
double level(double a, double y2, double rho2, double mu) {
  const double ach = a * std::cosh(mu);
  const double ash = a * std::sinh(mu);
  return y2 / (ach * ach) + rho2 / (ash * ash);
}

}  // namespace

double prolate_mu(double a, const Eigen::Vector3d& p) {
  if (!(a > 0.0)) throw std::invalid_argument("prolate_mu: a must be > 0");
  const double y2 = p.y() * p.y();
  const double rho2 = p.x() * p.x() + p.z() * p.z();
  if (rho2 == 0.0) {
    const double ay = std::abs(p.y());
    if (ay <= a) return 0.0;  // focal segment
    return std::acosh(ay / a);
  }
  double lo = 1e-18, hi = 40.0;
  if (level(a, y2, rho2, hi) > 1.0)
    throw std::invalid_argument("prolate_mu: point outside mu <= 40 range");
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (level(a, y2, rho2, mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

bool inside_ellipsoid(double a, double mu_bound, const Eigen::Vector3d& p) {
  const double y2 = p.y() * p.y();
  const double rho2 = p.x() * p.x() + p.z() * p.z();
  if (rho2 == 0.0 && y2 == 0.0) return true;  // centre
  return level(a, y2, rho2, mu_bound) < 1.0;
}

double ProlateShell::log_span() const {
  return std::log(std::tanh(M) / std::tanh(m));
}

double shell_profile(const ProlateShell& shell, double mu) {
  shell.validate();
  const double lo = 2.0 * shell.m;
  const double hi = 2.0 * shell.M;
  const double tol = 1e-12 * (hi - lo);
  if (mu < lo - tol || mu > hi + tol)
    throw std::invalid_argument("shell_profile: mu outside [2m, 2M]");
  mu = std::min(std::max(mu, lo), hi);
  return shell.v_inner +
         shell.jump() *
             std::log(std::tanh(0.5 * mu) / std::tanh(shell.m)) /
             shell.log_span();
}

double half_shell_energy(const ProlateShell& shell) {
  shell.validate();
  const double j = shell.jump();
  return M_PI * shell.a * j * j / shell.log_span();
}

double full_shell_energy(const ProlateShell& shell) {
  return 2.0 * half_shell_energy(shell);
}

}  // namespace dumbbell
