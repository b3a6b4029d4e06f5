#include "dumbbell/minimise.hpp"

#include <algorithm>
#include <cmath>

namespace dumbbell {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::GradTol: return "GradTol";
    case Termination::EnergyTol: return "EnergyTol";
    case Termination::MaxIters: return "MaxIters";
    case Termination::NoDescent: return "NoDescent";
    case Termination::NonFinite: return "NonFinite";
  }
  return "?";
}

Eigen::VectorXd initial_state(const DumbbellGrid& grid, double alpha,
                              double beta) {
  const int n = grid.active_count();
  const double mid = 0.5 * (alpha + beta);
  Eigen::VectorXd u(n);
  for (int c = 0; c < n; ++c) {
    switch (grid.region(c)) {
      case Region::LeftBulk: u[c] = alpha; break;
      case Region::RightBulk: u[c] = beta; break;
      default: u[c] = mid; break;
    }
  }
  return u;
}

double l2_distance(const DumbbellGrid& grid, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& v) {
  double s = 0.0, carry = 0.0;
  for (int c = 0; c < grid.active_count(); ++c) {
    const double d = u[c] - v[c];
    const double x = grid.volume(c) * d * d - carry;
    const double t = s + x;
    carry = (t - s) - x;
    s = t;
  }
  return std::sqrt(s);
}

namespace {

struct Projector {
  const DumbbellGrid& grid;
  const Eigen::VectorXd& centre;
  double lo, hi;
  std::optional<double> radius;
  const std::vector<std::uint8_t>& frozen;

  void apply(Eigen::VectorXd& u) const {
    for (int c = 0; c < u.size(); ++c) {
      if (!frozen.empty() && frozen[static_cast<std::size_t>(c)]) continue;
      u[c] = std::min(std::max(u[c], lo), hi);
    }
    if (radius) {
      const double norm = l2_distance(grid, u, centre);
      if (norm > *radius) {
        const double t = *radius / norm;
        u = centre + t * (u - centre);
      }
    }
  }
};

}  // namespace

SolveResult minimise(const DumbbellGrid& grid, const DoubleWell& well,
                     const Eigen::VectorXd& init, const SolveOptions& options) {
  if (init.size() != grid.active_count())
    throw std::invalid_argument("minimise: init does not match the grid");
  if (options.ball_radius) {
    if (!(*options.ball_radius > 0.0))
      throw std::invalid_argument("minimise: ball_radius must be positive");
    const double vl = grid.region_volume(Region::LeftBulk);
    const double vr = grid.region_volume(Region::RightBulk);
    if (vl > 0.0 && vr > 0.0) {
      const double bound = std::min(std::abs(well.alpha) * std::sqrt(vl),
                                    std::abs(well.beta) * std::sqrt(vr));
      if (!(*options.ball_radius < bound))
        throw std::invalid_argument(
            "minimise: ball_radius must satisfy d < min(|alpha| "
            "|Omega_l|^(1/2), |beta| |Omega_r|^(1/2))");
    }
  }

  const int n = grid.active_count();
  const Eigen::VectorXd& vol = grid.volumes();
  const double jump = well.jump();
  const double grad_tol =
      options.grad_tol >= 0.0 ? options.grad_tol
                              : 1e-7 * (jump > 0.0 ? jump : 1.0);

  std::vector<std::uint8_t> frozen;
  if (!options.frozen_cells.empty()) {
    frozen.assign(static_cast<std::size_t>(n), 0);
    for (std::int32_t c : options.frozen_cells)
      frozen.at(static_cast<std::size_t>(c)) = 1;
  }

  const Projector project{grid,
                          init,
                          well.alpha - options.clamp_margin,
                          well.beta + options.clamp_margin,
                          options.ball_radius,
                          frozen};

  SolveResult res;
  res.diagnostics.ball_radius_used = options.ball_radius;
  Eigen::VectorXd u = init;
  project.apply(u);

  // Diagonal preconditioner: stiffness row sums plus the convex part of the
  // potential curvature. Equalises the per-cell curvature across graded
  // anisotropic cells; the scaled gradient stays a descent direction.
  Eigen::VectorXd stiffness_diag = Eigen::VectorXd::Zero(n);
  for (const auto& s : grid.segments()) {
    const double w = s.area / s.dist;
    stiffness_diag[s.a] += w;
    stiffness_diag[s.b] += w;
  }
  const auto precond = [&](const Eigen::VectorXd& u_now) {
    Eigen::VectorXd p(n);
    for (int c = 0; c < n; ++c) {
      const double wpp = std::max(well.second_derivative(u_now[c]), 0.0);
      const double d = stiffness_diag[c] + wpp * vol[c];
      p[c] = d > 0.0 ? d : vol[c];
    }
    return p;
  };
  const auto direction = [&](const Eigen::VectorXd& g,
                             const Eigen::VectorXd& p) {
    Eigen::VectorXd d = g.cwiseQuotient(p);
    if (!frozen.empty())
      for (int c = 0; c < n; ++c)
        if (frozen[static_cast<std::size_t>(c)]) d[c] = 0.0;
    return d;
  };
  // Stationarity residual: gradient per unit volume, frozen cells excluded.
  const auto residual_of = [&](const Eigen::VectorXd& g) {
    double r = 0.0;
    for (int c = 0; c < n; ++c) {
      if (!frozen.empty() && frozen[static_cast<std::size_t>(c)]) continue;
      r = std::max(r, std::abs(g[c]) / vol[c]);
    }
    return r;
  };

  double E = energy_total(grid, u, well);
  res.diagnostics.energy_history.push_back(E);
  if (!std::isfinite(E)) {
    res.diagnostics.reason = Termination::NonFinite;
    res.field = std::move(u);
    res.breakdown = EnergyBreakdown{};
    return res;
  }

  Eigen::VectorXd g = energy_gradient(grid, u, well);
  Eigen::VectorXd P = precond(u);
  Eigen::VectorXd dir = direction(g, P);
  double residual = residual_of(g);

  double step = 1.0;
  Termination reason = Termination::MaxIters;
  int stall = 0;
  int iter = 0;

  for (; iter < options.max_iters; ++iter) {
    if (residual <= grad_tol) {
      reason = Termination::GradTol;
      break;
    }

    double s = step;
    bool accepted = false;
    Eigen::VectorXd v;
    double Ev = 0.0;
    for (int bt = 0; bt <= options.max_backtracks; ++bt) {
      v = u - s * dir;
      project.apply(v);
      Ev = energy_total(grid, v, well);
      const double gain = g.dot(u - v);
      if (std::isfinite(Ev) && gain > 0.0 &&
          Ev <= E - options.armijo_c * gain) {
        accepted = true;
        break;
      }
      s *= options.backtrack;
      ++res.diagnostics.total_backtracks;
    }
    if (!accepted) {
      reason = Termination::NoDescent;
      break;
    }

    if (Ev > E) res.diagnostics.energy_monotone = false;

    const Eigen::VectorXd g_new = energy_gradient(grid, v, well);
    const Eigen::VectorXd P_new = precond(v);
    const Eigen::VectorXd dir_new = direction(g_new, P_new);

    // Barzilai-Borwein step for the preconditioned iteration (BB1 in the
    // P-weighted inner product), with the Armijo loop as the safety net.
    const Eigen::VectorXd du = v - u;
    const double num = du.dot(P_new.cwiseProduct(du));
    const double den = du.dot(g_new - g);
    step = (den > 0.0 && std::isfinite(den) && num > 0.0)
               ? std::min(std::max(num / den, 1e-18), 1e18)
               : s * 2.0;

    const double decrease = E - Ev;
    u.swap(v);
    E = Ev;
    g = g_new;
    P = P_new;
    dir = dir_new;
    residual = residual_of(g);
    res.diagnostics.energy_history.push_back(E);

    if (decrease <= options.energy_tol * std::max(std::abs(E), 1e-300)) {
      if (++stall >= options.energy_patience) {
        reason = Termination::EnergyTol;
        ++iter;
        break;
      }
    } else {
      stall = 0;
    }
  }

  res.diagnostics.iterations = iter;
  res.diagnostics.final_residual = residual;
  res.diagnostics.reason = reason;
  res.field = std::move(u);
  res.breakdown = energy(grid, res.field, well);
  return res;
}

}  // namespace dumbbell
