#include "dumbbell/regimes.hpp"

#include <cmath>
#include <limits>

namespace dumbbell {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Asymptotic term c * eps^p * |ln eps|^r as eps -> 0+.
struct Term {
  double c, p, r;
};

double term_limit(const Term& t) {
  if (t.p > 0.0) return 0.0;
  if (t.p < 0.0) return kInf;
  if (t.r > 0.0) return kInf;
  if (t.r < 0.0) return 0.0;
  return t.c;
}

Term ratio(const PowerLogLaw& u, const PowerLogLaw& v) {
  return {u.c / v.c, u.p - v.p, u.r - v.r};
}

// lim (eta/eps) |ln(eta/delta)| for families with eta << delta. The dominant
// part of |ln t| for a vanishing power-log term t = c eps^p |ln eps|^r is
// p |ln eps| when p > 0, else (-r) ln|ln eps|; the discarded lower-order
// parts never change the limit of the product.
double ell_limit(const ScalingFamily& f) {
  const Term q = ratio(f.eta_law, PowerLogLaw{1.0, 1.0, 0.0});  // eta/eps
  const Term t = ratio(f.eta_law, f.delta_law);                 // eta/delta
  if (t.p > 0.0) {
    return term_limit(Term{q.c * t.p, q.p, q.r + 1.0});
  }
  // t.p == 0, t.r < 0: |ln t| grows like ln|ln eps|.
  if (q.p < 0.0) return kInf;
  if (q.p > 0.0) return 0.0;
  if (q.r < 0.0) return 0.0;
  return kInf;  // q.r >= 0: (eta/eps) bounded below, times ln ln -> inf
}

}  // namespace

double PowerLogLaw::operator()(double eps) const {
  return c * std::pow(eps, p) * std::pow(std::abs(std::log(eps)), r);
}

void ScalingFamily::validate() const {
  if (!(delta_law.c > 0.0) || !(eta_law.c > 0.0))
    throw std::invalid_argument("ScalingFamily: prefactors must be positive");
  if (!(delta_law.p > 0.0) || !(eta_law.p > 0.0))
    throw std::invalid_argument(
        "ScalingFamily: laws must vanish as eps -> 0 (power > 0; the p = 0, "
        "r < 0 shape is not supported)");
  // eta <= delta for small eps: powers first, then log-powers, then
  // prefactors at full ties.
  if (eta_law.p > delta_law.p) return;
  if (eta_law.p < delta_law.p)
    throw std::invalid_argument("ScalingFamily: eta >> delta as eps -> 0");
  if (eta_law.r < delta_law.r) return;
  if (eta_law.r > delta_law.r)
    throw std::invalid_argument("ScalingFamily: eta >> delta as eps -> 0");
  if (eta_law.c > delta_law.c)
    throw std::invalid_argument("ScalingFamily: eta > delta as eps -> 0");
}

NeckParams ScalingFamily::at(double eps) const {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("ScalingFamily: eps must lie in (0, 1)");
  return NeckParams{eps, delta_law(eps), eta_law(eps)};
}

std::string to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::SuperThin: return "SuperThin";
    case RegimeTag::FlatThin: return "FlatThin";
    case RegimeTag::WindowThick: return "WindowThick";
    case RegimeTag::NarrowThick: return "NarrowThick";
    case RegimeTag::LetterBoxSub: return "LetterBoxSub";
    case RegimeTag::LetterBoxCritical: return "LetterBoxCritical";
    case RegimeTag::LetterBoxSuper: return "LetterBoxSuper";
    case RegimeTag::OutOfScopeKS: return "OutOfScopeKS";
  }
  return "?";
}

RegimeTag regime_tag_from_string(const std::string& s) {
  for (RegimeTag t :
       {RegimeTag::SuperThin, RegimeTag::FlatThin, RegimeTag::WindowThick,
        RegimeTag::NarrowThick, RegimeTag::LetterBoxSub,
        RegimeTag::LetterBoxCritical, RegimeTag::LetterBoxSuper,
        RegimeTag::OutOfScopeKS}) {
    if (to_string(t) == s) return t;
  }
  throw std::invalid_argument("unknown regime tag: " + s);
}

std::string to_string(RateKind rate) {
  switch (rate) {
    case RateKind::EpsOverDeltaEta: return "eps/(delta*eta)";
    case RateKind::InverseEta: return "1/eta";
    case RateKind::LogRatioOverDelta: return "|ln(eta/delta)|/delta";
  }
  return "?";
}

RateKind rate_kind_from_string(const std::string& s) {
  for (RateKind r : {RateKind::EpsOverDeltaEta, RateKind::InverseEta,
                     RateKind::LogRatioOverDelta}) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown rate kind: " + s);
}

double rate_value(RateKind rate, const NeckParams& neck) {
  switch (rate) {
    case RateKind::EpsOverDeltaEta:
      return neck.eps / (neck.delta * neck.eta);
    case RateKind::InverseEta:
      return 1.0 / neck.eta;
    case RateKind::LogRatioOverDelta:
      return std::abs(std::log(neck.eta / neck.delta)) / neck.delta;
  }
  throw std::invalid_argument("rate_value: unknown rate");
}

RegimeReport classify(const ScalingFamily& family) {
  family.validate();
  RegimeReport report;

  const double lim_eta_delta = term_limit(ratio(family.eta_law, family.delta_law));
  if (lim_eta_delta > 0.0 && std::isfinite(lim_eta_delta)) {
    // delta ~ eta: the axisymmetric-style setting, out of scope here.
    report.tag = RegimeTag::OutOfScopeKS;
    report.ell = std::numeric_limits<double>::quiet_NaN();
    report.kappa_total = report.kappa_neck = report.kappa_outside =
        std::numeric_limits<double>::quiet_NaN();
    return report;
  }

  const double lim_delta_eps =
      term_limit(ratio(family.delta_law, PowerLogLaw{1.0, 1.0, 0.0}));
  const double lim_eta_eps =
      term_limit(ratio(family.eta_law, PowerLogLaw{1.0, 1.0, 0.0}));
  report.ell = ell_limit(family);

  if (lim_delta_eps == 0.0) {
    report.tag = RegimeTag::SuperThin;
  } else if (std::isfinite(lim_delta_eps)) {
    report.tag = RegimeTag::FlatThin;
    report.m_flat = lim_delta_eps;
    report.m_flat_nonunit = lim_delta_eps != 1.0;
  } else if (std::isinf(lim_eta_eps)) {
    report.tag = RegimeTag::WindowThick;
  } else if (lim_eta_eps > 0.0) {
    report.tag = RegimeTag::NarrowThick;
    report.l_narrow = lim_eta_eps;
  } else if (report.ell == 0.0) {
    report.tag = RegimeTag::LetterBoxSub;
  } else if (std::isfinite(report.ell)) {
    report.tag = RegimeTag::LetterBoxCritical;
  } else {
    report.tag = RegimeTag::LetterBoxSuper;
  }

  switch (report.tag) {
    case RegimeTag::SuperThin:
    case RegimeTag::LetterBoxSub:
      report.rate = report.outside_rate = RateKind::EpsOverDeltaEta;
      report.kappa_total = 1.0;
      report.kappa_neck = 1.0;
      report.kappa_outside = 0.0;
      break;
    case RegimeTag::FlatThin:
      report.rate = report.outside_rate = RateKind::InverseEta;
      report.kappa_total = 1.0;
      report.kappa_neck = 1.0;
      report.kappa_outside = 0.0;
      break;
    case RegimeTag::WindowThick:
    case RegimeTag::NarrowThick:
    case RegimeTag::LetterBoxSuper:
      report.rate = report.outside_rate = RateKind::LogRatioOverDelta;
      report.kappa_total = M_PI;
      report.kappa_neck = 0.0;
      report.kappa_outside = M_PI;
      break;
    case RegimeTag::LetterBoxCritical: {
      const double l = report.ell;
      report.rate = RateKind::EpsOverDeltaEta;
      report.outside_rate = RateKind::LogRatioOverDelta;
      report.kappa_total = M_PI / (M_PI + l);
      report.kappa_neck = M_PI * M_PI / ((M_PI + l) * (M_PI + l));
      report.kappa_outside = M_PI * l * l / ((M_PI + l) * (M_PI + l));
      break;
    }
    case RegimeTag::OutOfScopeKS:
      break;
  }
  return report;
}

PredictedLimits predicted_limits(const RegimeReport& report, double alpha,
                                 double beta) {
  if (report.tag == RegimeTag::OutOfScopeKS)
    throw std::invalid_argument(
        "predicted_limits: no predictions in the delta ~ eta setting");
  if (report.tag == RegimeTag::LetterBoxCritical &&
      !(std::isfinite(report.ell) && report.ell > 0.0))
    throw MissingEllError(
        "predicted_limits: critical letter-box report without a finite ell");
  const double j = beta - alpha;
  PredictedLimits out;
  out.rate = report.rate;
  out.outside_rate = report.outside_rate;
  out.total = report.kappa_total * j * j;
  out.neck = report.kappa_neck * j * j;
  out.outside = report.kappa_outside * j * j;
  return out;
}

double finite_ratio(const NeckParams& neck) {
  neck.validate();
  if (!(neck.eta < neck.delta))
    throw RegimeViolationError(
        "finite_ratio: eta must be strictly below delta (the log is singular "
        "at eta = delta)");
  return (neck.eta / neck.eps) * std::abs(std::log(neck.eta / neck.delta));
}

}  // namespace dumbbell
