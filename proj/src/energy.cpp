#include "dumbbell/energy.hpp"

#include <cmath>
#include <vector>

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

void check_size(const DumbbellGrid& grid, const Eigen::VectorXd& field) {
  if (field.size() != grid.active_count())
    throw std::invalid_argument(
        "field size does not match the grid's active cell count");
}

}  // namespace

EnergyBreakdown energy(const DumbbellGrid& grid, const Eigen::VectorXd& field,
                       const DoubleWell& well) {
  check_size(grid, field);
  Kahan dirichlet, potential;
  Kahan by_region[4];

  const int n = grid.active_count();
  const Eigen::VectorXd& vol = grid.volumes();
  for (int c = 0; c < n; ++c) {
    const double w = well(field[c]) * vol[c];
    potential.add(w);
    by_region[static_cast<int>(grid.region(c))].add(w);
  }
  for (const auto& s : grid.segments()) {
    const double du = field[s.b] - field[s.a];
    const double e = du * du * s.area / (2.0 * s.dist);
    dirichlet.add(e);
    by_region[static_cast<int>(grid.region(s.a))].add(0.5 * e);
    by_region[static_cast<int>(grid.region(s.b))].add(0.5 * e);
  }

  EnergyBreakdown out;
  out.dirichlet_part = dirichlet.sum;
  out.potential_part = potential.sum;
  out.total = dirichlet.sum + potential.sum;
  out.neck = by_region[static_cast<int>(Region::Neck)].sum;
  out.left_bulk = by_region[static_cast<int>(Region::LeftBulk)].sum;
  out.right_bulk = by_region[static_cast<int>(Region::RightBulk)].sum;
  return out;
}

double energy_total(const DumbbellGrid& grid, const Eigen::VectorXd& field,
                    const DoubleWell& well) {
  check_size(grid, field);
  Kahan acc;
  const int n = grid.active_count();
  const Eigen::VectorXd& vol = grid.volumes();
  if (!well.off()) {
    for (int c = 0; c < n; ++c) acc.add(well(field[c]) * vol[c]);
  }
  for (const auto& s : grid.segments()) {
    const double du = field[s.b] - field[s.a];
    acc.add(du * du * s.area / (2.0 * s.dist));
  }
  return acc.sum;
}

Eigen::VectorXd energy_gradient(const DumbbellGrid& grid,
                                const Eigen::VectorXd& field,
                                const DoubleWell& well) {
  check_size(grid, field);
  const int n = grid.active_count();
  const Eigen::VectorXd& vol = grid.volumes();
  Eigen::VectorXd g(n);
  for (int c = 0; c < n; ++c) g[c] = well.derivative(field[c]) * vol[c];
  for (const auto& s : grid.segments()) {
    const double f = (field[s.a] - field[s.b]) * s.area / s.dist;
    g[s.a] += f;
    g[s.b] -= f;
  }
  return g;
}

double el_residual(const DumbbellGrid& grid, const Eigen::VectorXd& field,
                   const DoubleWell& well,
                   std::span<const std::int32_t> exclude) {
  const Eigen::VectorXd g = energy_gradient(grid, field, well);
  std::vector<std::uint8_t> skip;
  if (!exclude.empty()) {
    skip.assign(static_cast<std::size_t>(grid.active_count()), 0);
    for (std::int32_t c : exclude) skip[static_cast<std::size_t>(c)] = 1;
  }
  double r = 0.0;
  for (int c = 0; c < grid.active_count(); ++c) {
    if (!skip.empty() && skip[static_cast<std::size_t>(c)]) continue;
    r = std::max(r, std::abs(g[c]) / grid.volume(c));
  }
  return r;
}

}  // namespace dumbbell
