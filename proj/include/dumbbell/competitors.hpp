#pragma once

#include <Eigen/Dense>

#include "dumbbell/geometry.hpp"
#include "dumbbell/prolate.hpp"

namespace dumbbell {

// Confocal parameters fitted so the x = 0 cross-section of the ellipsoid
// mu = 2m circumscribes the neck cross-section:
//   a sinh(2m) = 2 eta,  a cosh(2m) = 2 delta
// hence a = 2 sqrt(delta^2 - eta^2) and 2m = artanh(eta/delta).
struct ShellFit {
  double a = 0.0;
  double m = 0.0;
};

ShellFit fit_shell_to_neck(const NeckParams& neck);  // throws if eta >= delta

// Default outer coordinate policy: a cosh(2M) = flat_radius/2, keeping the
// shell well inside the flat bulk region. Throws when no such M > m exists.
double default_outer_coordinate(const ShellFit& fit, double flat_radius);

// Dirichlet energy of the affine competitor across the neck:
// delta * eta * (B - A)^2 / eps.
double affine_energy(const NeckParams& neck, double A, double B);

// Neck plateau values of the mixed competitor, alpha <= A <= B <= beta.
struct MixedChoice {
  double A = 0.0;
  double B = 1.0;
};

// Minimiser of the asymptotic mixed energy
//   2 pi delta/L [(A-alpha)^2 + (B-beta)^2] + delta eta / eps (B-A)^2,
// L = |ln(eta/delta)|:
//   A = (pi alpha/L + (eta/eps)(alpha+beta)/2) / (pi/L + eta/eps),
//   B likewise with beta.
MixedChoice optimal_AB(const NeckParams& neck, double alpha, double beta);

// Exact mixed competitor energy with shells of outer coordinate M:
//   pi a [(A-alpha)^2 + (B-beta)^2] / ln(tanh M/tanh m) + affine term.
double mixed_energy_exact(const NeckParams& neck, const MixedChoice& choice,
                          double outer_M, double alpha, double beta);

// Asymptotic form (a -> 2 delta, log span -> |ln(eta/delta)|).
double mixed_energy_asymptotic(const NeckParams& neck,
                               const MixedChoice& choice, double alpha,
                               double beta);

enum class CompetitorKind { Affine, Shell, Mixed };

struct CompetitorParams {
  double alpha = 0.0;
  double beta = 1.0;
  double A = 0.0;   // affine/mixed left neck value
  double B = 1.0;   // affine/mixed right neck value
  double outer_M = 0.0;  // 0 = use the default policy (requires bulk spec)
};

// Sample the piecewise competitor definition at the grid nodes. Shell pieces
// invert the prolate map per cell. Shell/mixed kinds require neck params on
// the grid and check the fit against the flat radius when a bulk is present.
Eigen::VectorXd build_competitor_field(const DumbbellGrid& grid,
                                       CompetitorKind kind,
                                       const CompetitorParams& params);

}  // namespace dumbbell
