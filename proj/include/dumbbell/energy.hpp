#pragma once

#include <Eigen/Dense>
#include <span>

#include "dumbbell/geometry.hpp"
#include "dumbbell/potential.hpp"

namespace dumbbell {

// Discrete F(u) = 1/2 sum_segments (du/d)^2 * (area*d) + sum_cells W(u) * V,
// with natural Neumann closure (missing neighbours simply contribute no
// segment). Region attribution: potential terms go to the cell's region,
// segment terms split half-half between the two endpoint regions.
struct EnergyBreakdown {
  double total = 0.0;
  double neck = 0.0;
  double left_bulk = 0.0;
  double right_bulk = 0.0;
  double dirichlet_part = 0.0;
  double potential_part = 0.0;

  double outside() const { return left_bulk + right_bulk; }
};

EnergyBreakdown energy(const DumbbellGrid& grid, const Eigen::VectorXd& field,
                       const DoubleWell& well);

// Total only; the solver's hot path.
double energy_total(const DumbbellGrid& grid, const Eigen::VectorXd& field,
                    const DoubleWell& well);

// Exact gradient of the discrete energy with respect to each cell value:
// masked 7-point Laplacian with Neumann closure plus W'(u) * V.
Eigen::VectorXd energy_gradient(const DumbbellGrid& grid,
                                const Eigen::VectorXd& field,
                                const DoubleWell& well);

// Max-norm of the gradient per unit cell volume: the discrete
// Euler-Lagrange/Neumann residual. Cells listed in `exclude` (e.g. frozen
// Dirichlet data) are skipped.
double el_residual(const DumbbellGrid& grid, const Eigen::VectorXd& field,
                   const DoubleWell& well,
                   std::span<const std::int32_t> exclude = {});

}  // namespace dumbbell
