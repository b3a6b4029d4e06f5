#pragma once

#include <stdexcept>

namespace dumbbell {

// Double-well potential W(t) = w0 (t - alpha)^2 (t - beta)^2 with wells at
// alpha <= beta. The standard configuration has alpha < beta; alpha == beta is
// accepted as a degenerate (single-well) configuration so that sweeps can flag
// it, and well_scale = 0 switches the potential off for pure-Dirichlet runs.
struct DoubleWell {
  double alpha = 0.0;
  double beta = 1.0;
  double well_scale = 1.0;

  DoubleWell() = default;
  DoubleWell(double a, double b, double w0 = 1.0)
      : alpha(a), beta(b), well_scale(w0) {
    if (alpha > beta) throw std::invalid_argument("DoubleWell: alpha > beta");
    if (well_scale < 0.0)
      throw std::invalid_argument("DoubleWell: negative well_scale");
  }

  double operator()(double t) const {
    const double u = t - alpha;
    const double v = t - beta;
    return well_scale * u * u * v * v;
  }

  // W'(t) = 2 w0 (t-alpha)(t-beta)[(t-alpha)+(t-beta)]
  double derivative(double t) const {
    const double u = t - alpha;
    const double v = t - beta;
    return 2.0 * well_scale * u * v * (u + v);
  }

  double second_derivative(double t) const {
    const double u = t - alpha;
    const double v = t - beta;
    return 2.0 * well_scale * ((u + v) * (u + v) + 2.0 * u * v);
  }

  double jump() const { return beta - alpha; }
  double midpoint() const { return 0.5 * (alpha + beta); }
  bool degenerate() const { return alpha == beta; }
  bool off() const { return well_scale == 0.0; }
};

inline double eval_W(const DoubleWell& w, double t) { return w(t); }
inline double eval_dW(const DoubleWell& w, double t) { return w.derivative(t); }

}  // namespace dumbbell
