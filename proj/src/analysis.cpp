#include "dumbbell/analysis.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace dumbbell {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

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

NeckProfile neck_profile(const DumbbellGrid& grid,
                         const Eigen::VectorXd& field) {
  if (field.size() != grid.active_count())
    throw std::invalid_argument("neck_profile: field size mismatch");
  if (!grid.neck())
    throw std::invalid_argument("neck_profile: grid carries no neck params");
  const double eps = grid.neck()->eps;
  const int nx = grid.axis(0).size();
  std::vector<double> wsum(static_cast<std::size_t>(nx), 0.0);
  std::vector<double> vsum(static_cast<std::size_t>(nx), 0.0);
  for (int c = 0; c < grid.active_count(); ++c) {
    if (grid.region(c) != Region::Neck) continue;
    const int i = grid.cell_coords(c)[0];
    const double v = grid.volume(c);
    wsum[static_cast<std::size_t>(i)] += v * field[c];
    vsum[static_cast<std::size_t>(i)] += v;
  }
  std::vector<double> xs, vals;
  for (int i = 0; i < nx; ++i) {
    const double x = grid.axis(0).nodes[i];
    if (std::abs(x) > eps * (1.0 + 1e-12)) continue;
    if (vsum[static_cast<std::size_t>(i)] <= 0.0)
      throw EmptySelectionError("neck_profile: empty neck slab");
    xs.push_back(x / eps);
    vals.push_back(wsum[static_cast<std::size_t>(i)] /
                   vsum[static_cast<std::size_t>(i)]);
  }
  if (xs.empty())
    throw EmptySelectionError("neck_profile: grid has no neck cells");
  NeckProfile prof;
  prof.x_over_eps = Eigen::Map<Eigen::VectorXd>(xs.data(),
                                                static_cast<long>(xs.size()));
  prof.value = Eigen::Map<Eigen::VectorXd>(vals.data(),
                                           static_cast<long>(vals.size()));
  return prof;
}

std::pair<double, double> plateau_values(const DumbbellGrid& grid,
                                         const Eigen::VectorXd& field,
                                         double r1, double r2) {
  if (field.size() != grid.active_count())
    throw std::invalid_argument("plateau_values: field size mismatch");
  if (!(0.0 < r1 && r1 < r2))
    throw std::invalid_argument("plateau_values: need 0 < r1 < r2");
  if (grid.bulk() && r2 > grid.bulk()->flat_radius)
    throw std::invalid_argument(
        "plateau_values: shell radii must lie inside the flat region");
  Kahan wsum[2], vsum[2];
  for (int c = 0; c < grid.active_count(); ++c) {
    const Region r = grid.region(c);
    if (r != Region::LeftBulk && r != Region::RightBulk) continue;
    const Vec3 p = grid.position(c);
    const double rho = p.norm();
    if (rho < r1 || rho > r2) continue;
    const int side = r == Region::LeftBulk ? 0 : 1;
    const double v = grid.volume(c);
    wsum[side].add(v * field[c]);
    vsum[side].add(v);
  }
  if (vsum[0].sum <= 0.0 || vsum[1].sum <= 0.0)
    throw EmptySelectionError("plateau_values: empty plateau shell");
  return {wsum[0].sum / vsum[0].sum, wsum[1].sum / vsum[1].sum};
}

double predicted_profile_value(const RegimeReport& report, double alpha,
                               double beta, double xhat) {
  double left = alpha, right = beta;
  switch (report.tag) {
    case RegimeTag::SuperThin:
    case RegimeTag::FlatThin:
    case RegimeTag::LetterBoxSub:
      break;
    case RegimeTag::LetterBoxCritical: {
      const double l = report.ell;
      const double mid = 0.5 * (alpha + beta);
      left = (M_PI * alpha + l * mid) / (M_PI + l);
      right = (M_PI * beta + l * mid) / (M_PI + l);
      break;
    }
    case RegimeTag::WindowThick:
    case RegimeTag::NarrowThick:
    case RegimeTag::LetterBoxSuper:
      left = right = 0.5 * (alpha + beta);
      break;
    case RegimeTag::OutOfScopeKS:
      throw std::invalid_argument(
          "predicted_profile_value: no prediction in the delta ~ eta setting");
  }
  return 0.5 * (1.0 - xhat) * left + 0.5 * (1.0 + xhat) * right;
}

std::vector<SweepRow> sweep(const ScalingFamily& family,
                            const std::vector<double>& eps_list,
                            const BulkSpec& bulk, const DoubleWell& well,
                            const SweepOptions& options) {
  family.validate();
  const RegimeReport report = classify(family);
  if (report.tag == RegimeTag::OutOfScopeKS)
    throw std::invalid_argument(
        "sweep: family classifies as OutOfScopeKS; no predictions to sweep "
        "against");

  std::vector<SweepRow> rows;
  rows.reserve(eps_list.size());
  for (double eps : eps_list) {
    SweepRow row;
    row.eps = eps;
    try {
      const NeckParams neck = family.at(eps);
      row.delta = neck.delta;
      row.eta = neck.eta;
      neck.validate();
      const DumbbellDomain domain = build_domain(neck, bulk);
      const DumbbellGrid grid =
          DumbbellGrid::rasterize(domain, options.resolution);
      row.active_cells = static_cast<std::size_t>(grid.active_count());
      row.rho = rate_value(report.rate, neck);

      const Eigen::VectorXd init = initial_state(grid, well.alpha, well.beta);
      if (well.degenerate()) {
        row.degenerate = true;
        row.breakdown = energy(grid, init, well);
        row.neck_fraction = kNaN;
        row.scaled_total = row.rho * row.breakdown.total;
        row.scaled_neck = row.rho * row.breakdown.neck;
        row.m1 = row.m2 = well.alpha;
        row.profile_deviation = kNaN;
        row.termination = "Degenerate";
        rows.push_back(row);
        continue;
      }

      SolveResult res = minimise(grid, well, init, options.solve);
      row.breakdown = res.breakdown;
      row.iterations = res.diagnostics.iterations;
      row.termination = to_string(res.diagnostics.reason);
      row.scaled_total = row.rho * res.breakdown.total;
      row.scaled_neck = row.rho * res.breakdown.neck;
      row.neck_fraction = res.breakdown.total > 0.0
                              ? res.breakdown.neck / res.breakdown.total
                              : kNaN;

      const double shell_scale = std::max(neck.delta, neck.eta);
      try {
        std::tie(row.m1, row.m2) =
            plateau_values(grid, res.field,
                           options.shell_r1_factor * shell_scale,
                           options.shell_r2_factor * shell_scale);
      } catch (const EmptySelectionError&) {
        row.m1 = row.m2 = kNaN;
      } catch (const std::invalid_argument&) {
        row.m1 = row.m2 = kNaN;
      }

      const NeckProfile prof = neck_profile(grid, res.field);
      double dev = 0.0;
      for (int i = 0; i < prof.value.size(); ++i) {
        const double pred = predicted_profile_value(
            report, well.alpha, well.beta, prof.x_over_eps[i]);
        dev = std::max(dev, std::abs(prof.value[i] - pred));
      }
      row.profile_deviation = dev / well.jump();
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

ScalingFit fit_scaling(const std::vector<SweepRow>& rows, RateKind rate) {
  std::vector<double> xs, ys;
  for (const auto& row : rows) {
    if (row.failed || row.degenerate || !(row.breakdown.total > 0.0)) continue;
    const NeckParams neck{row.eps, row.delta, row.eta};
    xs.push_back(std::log(1.0 / rate_value(rate, neck)));
    ys.push_back(std::log(row.breakdown.total));
  }
  const std::size_t n = xs.size();
  if (n < 3)
    throw std::invalid_argument(
        "fit_scaling: need at least 3 rows with positive total energy");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0)
    throw std::runtime_error("fit_scaling: degenerate regression (all rates "
                             "equal)");
  ScalingFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.exponent * xs[i] + intercept);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / static_cast<double>(n));
  return fit;
}

}  // namespace dumbbell
