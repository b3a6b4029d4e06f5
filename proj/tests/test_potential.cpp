#include <doctest.h>

#include <cmath>

#include "dumbbell/potential.hpp"

using namespace dumbbell;

TEST_CASE("double well vanishes exactly at the wells") {
  DoubleWell w{-0.3, 1.7, 2.5};
  CHECK(w(-0.3) == 0.0);
  CHECK(w(1.7) == 0.0);
  CHECK(w.derivative(-0.3) == 0.0);
  CHECK(w.derivative(1.7) == 0.0);
}

TEST_CASE("midpoint value of the standard quartic") {
  DoubleWell w{0.0, 1.0, 1.0};
  CHECK(w(0.5) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
  CHECK(w.derivative(0.5) == 0.0);  // symmetric saddle
}

TEST_CASE("derivative at t=0.25 matches the hand computation") {
  DoubleWell w{0.0, 1.0, 1.0};
  // 2t(t-1)^2 + 2t^2(t-1) = 0.28125 - 0.09375
  CHECK(w.derivative(0.25) == doctest::Approx(0.1875).epsilon(1e-15));
}

TEST_CASE("W is nonnegative with zeros only at the wells") {
  DoubleWell w{-0.5, 0.75, 1.3};
  for (int i = 0; i <= 4000; ++i) {
    const double t = -1.5 + 3.0 * i / 4000.0;
    CHECK(w(t) >= 0.0);
    if (std::abs(t - w.alpha) > 1e-3 && std::abs(t - w.beta) > 1e-3)
      CHECK(w(t) > 0.0);
  }
}

TEST_CASE("derivatives agree with centred finite differences") {
  DoubleWell w{-0.2, 1.1, 0.7};
  const double h = 1e-5;
  for (int i = 0; i <= 200; ++i) {
    const double t = (w.alpha - 1.0) + (w.beta - w.alpha + 2.0) * i / 200.0;
    const double fd1 = (w(t + h) - w(t - h)) / (2.0 * h);
    CHECK(std::abs(fd1 - w.derivative(t)) <=
          1e-6 * std::max(std::abs(w.derivative(t)), 1e-2));
    const double fd2 =
        (w.derivative(t + h) - w.derivative(t - h)) / (2.0 * h);
    CHECK(std::abs(fd2 - w.second_derivative(t)) <=
          1e-5 * std::max(std::abs(w.second_derivative(t)), 1e-2));
  }
}

TEST_CASE("well scale moves the magnitude, not the zeros") {
  DoubleWell a{0.0, 1.0, 1.0};
  DoubleWell b{0.0, 1.0, 4.0};
  CHECK(b(0.3) == doctest::Approx(4.0 * a(0.3)).epsilon(1e-15));
  CHECK(b(1.0) == 0.0);
}

TEST_CASE("invalid configurations are rejected") {
  CHECK_THROWS_AS(DoubleWell(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(DoubleWell(0.0, 1.0, -1.0), std::invalid_argument);
  CHECK_NOTHROW(DoubleWell(0.0, 1.0, 0.0));  // potential off
  DoubleWell degenerate{0.5, 0.5};
  CHECK(degenerate.degenerate());
}
