#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "dumbbell/energy.hpp"
#include "dumbbell/geometry.hpp"
#include "dumbbell/potential.hpp"

namespace dumbbell {

struct SolveOptions {
  int max_iters = 50'000;
  // Stationarity threshold on the max-norm of the gradient per unit volume.
  // Negative = use the default 1e-7 * (beta - alpha).
  double grad_tol = -1.0;
  // Relative energy-decrease threshold on accepted steps.
  double energy_tol = 1e-12;
  // Consecutive sub-threshold decreases before stopping.
  int energy_patience = 3;
  // L2 constraint radius about the initial state; unset = unconstrained.
  std::optional<double> ball_radius;
  // Armijo sufficient-decrease constant and backtracking factor.
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 60;
  // Iterates are clamped to [alpha - clamp_margin, beta + clamp_margin].
  double clamp_margin = 1.0;
  // Cells held fixed at their initial values (discrete Dirichlet data).
  std::vector<std::int32_t> frozen_cells;
};

enum class Termination {
  GradTol,
  EnergyTol,
  MaxIters,
  NoDescent,
  NonFinite,
};

std::string to_string(Termination t);

struct SolveDiagnostics {
  int iterations = 0;
  double final_residual = 0.0;
  Termination reason = Termination::MaxIters;
  bool energy_monotone = true;
  int total_backtracks = 0;
  std::optional<double> ball_radius_used;
  std::vector<double> energy_history;  // accepted energies, E_0 first
};

struct SolveResult {
  Eigen::VectorXd field;
  EnergyBreakdown breakdown;
  SolveDiagnostics diagnostics;
};

// Piecewise-constant starting state: alpha on the left bulk, beta on the
// right bulk, (alpha+beta)/2 in the neck.
Eigen::VectorXd initial_state(const DumbbellGrid& grid, double alpha,
                              double beta);

// Projected descent on the volume-weighted gradient with Barzilai-Borwein
// steps and Armijo backtracking. The accepted-energy sequence is
// non-increasing; iterates stay in the clamp box and, when ball_radius is
// set, inside the L2 ball about `init`. NoDescent/NonFinite terminations
// return the current iterate in the result rather than throwing.
SolveResult minimise(const DumbbellGrid& grid, const DoubleWell& well,
                     const Eigen::VectorXd& init, const SolveOptions& options);

// L2(volume) distance between two fields on the grid.
double l2_distance(const DumbbellGrid& grid, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& v);

}  // namespace dumbbell
