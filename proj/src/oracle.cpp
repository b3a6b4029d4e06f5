#include "dumbbell/oracle.hpp"

#include <cmath>
#include <limits>

#include "dumbbell/prolate.hpp"

namespace dumbbell {

namespace {

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

double quad_shell_energy(const ProlateShell& shell,
                         const QuadratureSpec& spec) {
  shell.validate();
  spec.validate();
  const double a = shell.a;
  const double c = shell.profile_coefficient();
  const double mu_lo = 2.0 * shell.m;
  const double mu_hi = 2.0 * shell.M;
  const double dmu = (mu_hi - mu_lo) / spec.n_mu;
  const double dnu = M_PI / spec.n_nu;

  // Midpoint rule keeps clear of nu in {0, pi} and mu = 2m, where single
  // factors of the integrand degenerate.
  Kahan outer;
  for (int i = 0; i < spec.n_mu; ++i) {
    const double mu = mu_lo + (i + 0.5) * dmu;
    const double sh = std::sinh(mu);
    const double ch = std::cosh(mu);
    const double sh2 = sh * sh;
    const double ch2 = ch * ch;
    Kahan inner;
    for (int j = 0; j < spec.n_nu; ++j) {
      const double nu = (j + 0.5) * dnu;
      const double sn = std::sin(nu);
      const double cn = std::cos(nu);
      const double sn2 = sn * sn;
      const double denom = sn2 + sh2;
      const double grad2 = (ch2 * sn2 + sh2 * cn * cn) / (sh2 * denom * denom);
      const double det = std::abs(prolate_jacobian_det(a, mu, nu));
      inner.add(grad2 * det);
    }
    outer.add(inner.sum);
  }
  // Half shell: phi covers pi instead of 2 pi.
  return M_PI * c * c / (2.0 * a * a) * outer.sum * dmu * dnu;
}

Eigen::VectorXd solve_1d_chain(int n, double left_value, double right_value) {
  if (n < 2) throw std::invalid_argument("solve_1d_chain: need n >= 2");
  Eigen::VectorXd u(n);
  u[0] = left_value;
  u[n - 1] = right_value;
  const int m = n - 2;
  if (m <= 0) return u;

  // Thomas solve of the interior Laplace system u_{i-1} - 2u_i + u_{i+1} = 0.
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(m, 2.0);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs[0] = left_value;
  rhs[m - 1] += right_value;
  for (int i = 1; i < m; ++i) {
    const double w = -1.0 / diag[i - 1];
    diag[i] += w;  // 2 - 1/diag[i-1]
    rhs[i] -= w * rhs[i - 1];
  }
  Eigen::VectorXd x(m);
  x[m - 1] = rhs[m - 1] / diag[m - 1];
  for (int i = m - 2; i >= 0; --i) x[i] = (rhs[i] + x[i + 1]) / diag[i];
  for (int i = 0; i < m; ++i) u[i + 1] = x[i];
  return u;
}

MixedChoice grid_search_AB(const NeckParams& neck, double alpha, double beta,
                           int n) {
  if (n < 100)
    throw std::invalid_argument("grid_search_AB: need n >= 100 grid points");
  neck.validate();
  if (!(neck.eta < neck.delta))
    throw RegimeViolationError("grid_search_AB: requires eta < delta");
  const double L = std::abs(std::log(neck.eta / neck.delta));
  const double shell_w = 2.0 * M_PI * neck.delta / L;
  const double neck_w = neck.delta * neck.eta / neck.eps;

  double best = std::numeric_limits<double>::infinity();
  MixedChoice out{alpha, beta};
  for (int i = 0; i < n; ++i) {
    const double A = alpha + (beta - alpha) * i / (n - 1);
    const double da = A - alpha;
    for (int j = 0; j < n; ++j) {
      const double B = alpha + (beta - alpha) * j / (n - 1);
      const double db = B - beta;
      const double dn = B - A;
      const double e = shell_w * (da * da + db * db) + neck_w * dn * dn;
      if (e < best) {
        best = e;
        out = {A, B};
      }
    }
  }
  return out;
}

}  // namespace dumbbell
