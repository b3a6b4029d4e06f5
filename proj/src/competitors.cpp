#include "dumbbell/competitors.hpp"

#include <cmath>

namespace dumbbell {

ShellFit fit_shell_to_neck(const NeckParams& neck) {
  neck.validate();
  if (!(neck.eta < neck.delta))
    throw RegimeViolationError(
        "fit_shell_to_neck: no real solution for eta >= delta");
  ShellFit fit;
  fit.a = 2.0 * std::sqrt(neck.delta * neck.delta - neck.eta * neck.eta);
  fit.m = 0.5 * std::atanh(neck.eta / neck.delta);
  return fit;
}

double default_outer_coordinate(const ShellFit& fit, double flat_radius) {
  const double target = 0.5 * flat_radius / fit.a;  // cosh(2M)
  if (!(target > std::cosh(2.0 * fit.m)))
    throw std::runtime_error(
        "shell does not fit: flat radius too small for a cosh(2M) = r0/2");
  return 0.5 * std::acosh(target);
}

double affine_energy(const NeckParams& neck, double A, double B) {
  const double d = B - A;
  return neck.delta * neck.eta * d * d / neck.eps;
}

MixedChoice optimal_AB(const NeckParams& neck, double alpha, double beta) {
  neck.validate();
  if (!(neck.eta < neck.delta))
    throw RegimeViolationError("optimal_AB: requires eta < delta");
  const double L = std::abs(std::log(neck.eta / neck.delta));
  const double w_shell = M_PI / L;
  const double w_neck = neck.eta / neck.eps;
  const double mid = 0.5 * (alpha + beta);
  MixedChoice c;
  c.A = (w_shell * alpha + w_neck * mid) / (w_shell + w_neck);
  c.B = (w_shell * beta + w_neck * mid) / (w_shell + w_neck);
  return c;
}

namespace {

void check_choice(const MixedChoice& c, double alpha, double beta) {
  if (!(alpha <= c.A && c.A <= c.B && c.B <= beta))
    throw std::invalid_argument(
        "MixedChoice: requires alpha <= A <= B <= beta");
}

}  // namespace

double mixed_energy_exact(const NeckParams& neck, const MixedChoice& choice,
                          double outer_M, double alpha, double beta) {
  check_choice(choice, alpha, beta);
  const ShellFit fit = fit_shell_to_neck(neck);
  if (!(outer_M > fit.m))
    throw std::invalid_argument("mixed_energy_exact: outer M <= fitted m");
  const double span = std::log(std::tanh(outer_M) / std::tanh(fit.m));
  const double da = choice.A - alpha;
  const double db = choice.B - beta;
  return M_PI * fit.a * (da * da + db * db) / span +
         affine_energy(neck, choice.A, choice.B);
}

double mixed_energy_asymptotic(const NeckParams& neck,
                               const MixedChoice& choice, double alpha,
                               double beta) {
  check_choice(choice, alpha, beta);
  if (!(neck.eta < neck.delta))
    throw RegimeViolationError("mixed_energy_asymptotic: requires eta < delta");
  const double L = std::abs(std::log(neck.eta / neck.delta));
  const double da = choice.A - alpha;
  const double db = choice.B - beta;
  return 2.0 * M_PI * neck.delta * (da * da + db * db) / L +
         affine_energy(neck, choice.A, choice.B);
}

Eigen::VectorXd build_competitor_field(const DumbbellGrid& grid,
                                       CompetitorKind kind,
                                       const CompetitorParams& params) {
  if (!grid.neck())
    throw std::invalid_argument(
        "build_competitor_field: grid carries no neck parameters");
  const NeckParams neck = *grid.neck();
  const double alpha = params.alpha;
  const double beta = params.beta;

  double A = params.A, B = params.B;
  if (kind == CompetitorKind::Shell) A = B = 0.5 * (alpha + beta);
  if (kind != CompetitorKind::Affine) check_choice({A, B}, alpha, beta);

  ShellFit fit;
  double M = 0.0;
  ProlateShell left_shell, right_shell;
  if (kind != CompetitorKind::Affine) {
    fit = fit_shell_to_neck(neck);
    if (params.outer_M > 0.0) {
      M = params.outer_M;
      if (!(M > fit.m))
        throw std::invalid_argument("build_competitor_field: outer M <= m");
    } else {
      if (!grid.bulk())
        throw std::invalid_argument(
            "build_competitor_field: no outer M given and the grid has no "
            "bulk spec for the default policy");
      M = default_outer_coordinate(fit, grid.bulk()->flat_radius);
    }
    if (grid.bulk() &&
        !(fit.a * std::cosh(2.0 * M) < grid.bulk()->flat_radius))
      throw std::runtime_error(
          "build_competitor_field: shell does not fit (a cosh(2M) >= r0)");
    left_shell = {fit.a, fit.m, M, A, alpha};
    right_shell = {fit.a, fit.m, M, B, beta};
  }

  const double eps = neck.eps;
  const int n = grid.active_count();
  Eigen::VectorXd u(n);
  for (int c = 0; c < n; ++c) {
    const Vec3 p = grid.position(c);
    const double x = p.x();
    if (std::abs(x) < eps) {
      u[c] = (B - A) * x / (2.0 * eps) + 0.5 * (B + A);
      continue;
    }
    const bool left = x <= -eps;
    if (kind == CompetitorKind::Affine) {
      u[c] = left ? A : B;
      continue;
    }
    // Unshift to the ellipsoid frame centred at the neck edge plane.
    const Eigen::Vector3d q(left ? x + eps : x - eps, p.y(), p.z());
    const ProlateShell& shell = left ? left_shell : right_shell;
    const double far_value = left ? alpha : beta;
    const double near_value = left ? A : B;
    if (inside_ellipsoid(fit.a, 2.0 * fit.m, q)) {
      u[c] = near_value;
    } else if (inside_ellipsoid(fit.a, 2.0 * M, q)) {
      double mu = prolate_mu(fit.a, q);
      mu = std::min(std::max(mu, 2.0 * fit.m), 2.0 * M);
      u[c] = shell_profile(shell, mu);
    } else {
      u[c] = far_value;
    }
  }
  return u;
}

}  // namespace dumbbell
