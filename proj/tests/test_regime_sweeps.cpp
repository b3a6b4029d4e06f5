// Desk-scale regime runs that need real minimisations: the critical
// letter-box split/plateau and the flat-thin 1/eta scaling. Heavier tests,
// kept in their own translation unit.
//
// The triple is chosen with l = (eta/eps)|ln(eta/delta)| below 1: the split
// prediction pi/(pi+l) is insensitive there to the finite-log aperture
// correction (the fitted ellipse circumscribes the rectangular window with a
// factor-2 slack, which inflates the effective l at shallow logs and decays
// only like 1/|ln(eta/delta)|).
#include <doctest.h>

#include <cmath>

#include "dumbbell/analysis.hpp"
#include "dumbbell/minimise.hpp"
#include "dumbbell/regimes.hpp"

using namespace dumbbell;

TEST_CASE("critical letter-box split and plateau at desk scale") {
  const NeckParams neck{0.1, 1.5, 0.015};  // delta >> eps >> eta
  const double l = finite_ratio(neck);
  REQUIRE(l == doctest::Approx(0.691).epsilon(0.01));

  const BulkSpec bulk{30.0, 15.0};
  const DoubleWell well{0.0, 1.0, 5e-3};
  const DumbbellGrid grid =
      rasterize(build_domain(neck, bulk), ResolutionPolicy{});
  SolveOptions opts;
  opts.energy_tol = 1e-11;
  opts.max_iters = 30'000;
  const SolveResult res =
      minimise(grid, well, initial_state(grid, 0.0, 1.0), opts);
  REQUIRE(res.diagnostics.energy_monotone);

  // Energy split: scaled_neck/scaled_total -> pi/(pi+l), 20% tolerance.
  const double split = res.breakdown.neck / res.breakdown.total;
  const double predicted_split = M_PI / (M_PI + l);
  CHECK(std::abs(split - predicted_split) <= 0.2 * predicted_split);

  // Plateau values against the critical-theorem pair
  // m1 = (pi alpha + l(alpha+beta)/2)/(pi+l), m2 mirrored; 0.1(beta-alpha).
  const double shell_scale = std::max(neck.delta, neck.eta);
  const auto [m1, m2] =
      plateau_values(grid, res.field, 0.1 * shell_scale, 0.4 * shell_scale);
  const double m1_pred = (M_PI * 0.0 + l * 0.5) / (M_PI + l);
  const double m2_pred = (M_PI * 1.0 + l * 0.5) / (M_PI + l);
  CHECK(std::abs(m1 - m1_pred) <= 0.1);
  CHECK(std::abs(m2 - m2_pred) <= 0.1);
}

TEST_CASE("flat-thin sweep scales like 1/eta with the m = 1 constant") {
  // delta = eps (m = 1), eta = 0.5 eps^2: transition inside the neck,
  // (1/eta) F -> (beta-alpha)^2 = 1.
  const ScalingFamily family{{1.0, 1.0, 0.0}, {0.5, 2.0, 0.0}};
  const RegimeReport rep = classify(family);
  REQUIRE(rep.tag == RegimeTag::FlatThin);
  REQUIRE(*rep.m_flat == 1.0);
  REQUIRE(rep.rate == RateKind::InverseEta);

  SweepOptions opts;
  opts.solve.energy_tol = 1e-11;
  const auto rows = sweep(family, {0.2, 0.12}, BulkSpec{4.0, 2.0},
                          DoubleWell{0.0, 1.0, 1.0}, opts);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    REQUIRE_FALSE(r.failed);
    CHECK(r.scaled_total >= 0.75);
    CHECK(r.scaled_total <= 1.1);
    CHECK(r.neck_fraction >= 0.8);
    CHECK(r.profile_deviation <= 0.1);
  }
  // Trending toward the limit constant as eps decreases.
  CHECK(std::abs(1.0 - rows[1].scaled_total) <=
        std::abs(1.0 - rows[0].scaled_total));
}
