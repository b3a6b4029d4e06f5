#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dumbbell/energy.hpp"
#include "dumbbell/geometry.hpp"
#include "dumbbell/minimise.hpp"
#include "dumbbell/regimes.hpp"

namespace dumbbell {

struct EmptySelectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cross-sectional (volume-weighted) average of u over neck cells per x-slab,
// against the rescaled coordinate x/eps in [-1, 1].
struct NeckProfile {
  Eigen::VectorXd x_over_eps;
  Eigen::VectorXd value;
};

NeckProfile neck_profile(const DumbbellGrid& grid, const Eigen::VectorXd& field);

// Averages of u over bulk cells within Euclidean distance [r1, r2] of the
// origin, per side. Throws EmptySelectionError when a shell holds no cells.
std::pair<double, double> plateau_values(const DumbbellGrid& grid,
                                         const Eigen::VectorXd& field,
                                         double r1, double r2);

struct SweepRow {
  double eps = 0.0, delta = 0.0, eta = 0.0;
  EnergyBreakdown breakdown;
  double rho = 0.0;           // rate value at this eps
  double neck_fraction = 0.0; // NaN when degenerate
  double scaled_total = 0.0;
  double scaled_neck = 0.0;
  double m1 = 0.0, m2 = 0.0;  // NaN when the plateau shells are empty
  double profile_deviation = 0.0;  // units of (beta-alpha)
  std::size_t active_cells = 0;
  int iterations = 0;
  std::string termination;
  bool degenerate = false;
  bool failed = false;
  std::string error;
};

struct SweepOptions {
  SolveOptions solve;
  ResolutionPolicy resolution;
  // Plateau shell radii as multiples of max(delta, eta). The band hugs the
  // neck window: the bulk value the outside-regime theorems pin down lives on
  // the window-scale ellipsoid, and the field decays within O(delta) of the
  // aperture, so shells much beyond max(delta, eta) read the capacitor tail
  // instead of the plateau.
  double shell_r1_factor = 0.1;
  double shell_r2_factor = 0.4;
};

// One row per eps: rasterise, minimise from the piecewise-constant state,
// evaluate breakdown, profile and plateaus. Row failures are recorded and the
// remaining rows still run.
std::vector<SweepRow> sweep(const ScalingFamily& family,
                            const std::vector<double>& eps_list,
                            const BulkSpec& bulk, const DoubleWell& well,
                            const SweepOptions& options);

struct ScalingFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;  // RMS residual of the log-log fit
};

// Least-squares fit of ln(total) against ln(1/rho) for the given rate;
// exponent near 1 and prefactor near kappa indicate agreement with the
// predicted scaling. Requires >= 3 rows with positive total energy.
ScalingFit fit_scaling(const std::vector<SweepRow>& rows, RateKind rate);

// Limit profile the theorems predict for the rescaled neck coordinate
// xhat in [-1,1]: affine alpha->beta for inside regimes, affine m1->m2 for
// the critical letter-box, constant (alpha+beta)/2 for outside regimes.
double predicted_profile_value(const RegimeReport& report, double alpha,
                               double beta, double xhat);

}  // namespace dumbbell
