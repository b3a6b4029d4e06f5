#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "dumbbell/geometry.hpp"

namespace dumbbell {

// One factor of a power-log scaling law: value(eps) = c * eps^p * |ln eps|^r.
// This is the smallest family in which every regime (and the critical
// letter-box sub-regime) is reachable while keeping all limits decidable.
struct PowerLogLaw {
  double c = 1.0;  // prefactor, > 0
  double p = 1.0;  // power of eps
  double r = 0.0;  // power of |ln eps|

  double operator()(double eps) const;
};

// delta(eps) and eta(eps) laws. Validation requires both lengths to vanish
// (p > 0; p = 0 with r < 0 is rejected, see the module notes) and eta <= delta
// for small eps. The eta-vs-delta comparison is a documented total order:
// powers first, then log-powers, then prefactors at full ties.
struct ScalingFamily {
  PowerLogLaw delta_law;
  PowerLogLaw eta_law;

  void validate() const;
  NeckParams at(double eps) const;
};

enum class RegimeTag {
  SuperThin,         // eps >> delta >> eta
  FlatThin,          // eps ~ delta >> eta
  WindowThick,       // delta >> eta >> eps
  NarrowThick,       // delta >> eps ~ eta
  LetterBoxSub,      // delta >> eps >> eta, l = 0
  LetterBoxCritical, // delta >> eps >> eta, l finite
  LetterBoxSuper,    // delta >> eps >> eta, l = inf
  OutOfScopeKS,      // delta ~ eta (Kohn-Slastikov setting, no predictions)
};

std::string to_string(RegimeTag tag);
RegimeTag regime_tag_from_string(const std::string& s);

// The three divergent rates making rho_eps * F converge.
enum class RateKind {
  EpsOverDeltaEta,   // eps / (delta * eta)
  InverseEta,        // 1 / eta
  LogRatioOverDelta, // |ln(eta/delta)| / delta
};

std::string to_string(RateKind rate);
RateKind rate_kind_from_string(const std::string& s);
double rate_value(RateKind rate, const NeckParams& neck);

// Classification result. The kappa_* fields are the theorem constants in
// units of (beta - alpha)^2; kappa_total and kappa_neck are stated at `rate`,
// kappa_outside at `outside_rate` (they differ only in the critical
// letter-box sub-regime). For OutOfScopeKS no predictions are populated.
struct RegimeReport {
  RegimeTag tag = RegimeTag::SuperThin;
  double ell = 0.0;  // lim (eta/eps)|ln(eta/delta)|, may be +inf
  std::optional<double> m_flat;    // lim delta/eps when finite
  std::optional<double> l_narrow;  // lim eta/eps when finite
  RateKind rate = RateKind::EpsOverDeltaEta;
  RateKind outside_rate = RateKind::EpsOverDeltaEta;
  double kappa_total = 0.0;
  double kappa_neck = 0.0;
  double kappa_outside = 0.0;
  // FlatThin constants are stated by the theorems for m = 1 only; any other
  // finite m is accepted but flagged here.
  bool m_flat_nonunit = false;

  bool has_predictions() const { return tag != RegimeTag::OutOfScopeKS; }
};

struct UnclassifiableFamilyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingEllError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RegimeReport classify(const ScalingFamily& family);

// Absolute predicted limits for a given pair of wells.
struct PredictedLimits {
  double total = 0.0;
  double neck = 0.0;
  double outside = 0.0;
  RateKind rate = RateKind::EpsOverDeltaEta;
  RateKind outside_rate = RateKind::EpsOverDeltaEta;
};

PredictedLimits predicted_limits(const RegimeReport& report, double alpha,
                                 double beta);

// Finite-eps discriminant (eta/eps)|ln(eta/delta)| positioning a concrete
// triple inside the letter-box sub-regimes. Requires eta < delta strictly.
double finite_ratio(const NeckParams& neck);

}  // namespace dumbbell
