#include <cmath>

#include "doctest.h"
#include "fracbubble/bubble.hpp"

using namespace fracbubble;

namespace {
const SpectralParams P3 = SpectralParams::make(3, 0.3);
const SpectralParams P4 = SpectralParams::make(4, 0.5);
}  // namespace

TEST_CASE("spectral parameter validation and identities") {
  CHECK_THROWS_AS(SpectralParams::make(2, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(SpectralParams::make(3, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(SpectralParams::make(4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralParams::make(4, 0.0), std::invalid_argument);
  for (const auto& p : {P3, P4}) {
    CHECK(p.p_crit > 2.0);
    // (p_crit - 2)(N-2s)/2 = 2s, exactly
    CHECK((p.p_crit - 2.0) * p.tau() / 2.0 == doctest::Approx(2.0 * p.s).epsilon(1e-15));
  }
  CHECK(P4.gamma == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(P4.c_norm == doctest::Approx(std::pow(3.0, 1.5)).epsilon(1e-15));
  CHECK(P3.c_norm == doctest::Approx(2.3640046128918136).epsilon(1e-14));
  CHECK(P3.beta_ext == doctest::Approx(0.055911975191893664).epsilon(1e-13));
  CHECK(P4.beta_ext == doctest::Approx(0.075990887731753329).epsilon(1e-13));
}

TEST_CASE("bubble peak value and radial symmetry") {
  BubbleSpec unit = BubbleSpec::make(Point{0, 0, 0, 0}, 1.0);
  CHECK(bubble_value(P4, unit, Point{0, 0, 0, 0}) ==
        doctest::Approx(5.1961524227066319).epsilon(1e-14));
  Point y{0.7, -1.3, 0.4, 2.0};
  Point ym{-0.7, 1.3, -0.4, -2.0};
  CHECK(bubble_value(P4, unit, y) == doctest::Approx(bubble_value(P4, unit, ym)).epsilon(1e-15));
  CHECK(bubble_value(P4, unit, y) > 0.0);
  // radially decreasing
  CHECK(bubble_value(P4, unit, Point{1, 0, 0, 0}) > bubble_value(P4, unit, Point{2, 0, 0, 0}));
  CHECK_THROWS_AS(BubbleSpec::make(Point{0, 0, 0}, 0.0), std::invalid_argument);
}

TEST_CASE("scaling covariance is exact") {
  BubbleSpec two = BubbleSpec::make(Point{0.3, -0.1, 0.8}, 2.0);
  BubbleSpec one = BubbleSpec::make(Point{0, 0, 0}, 1.0);
  for (double t : {0.0, 0.4, 1.7, 9.0}) {
    Point y{0.3 + t, -0.1 - 0.5 * t, 0.8 + 0.25 * t};
    Point z{2.0 * (y[0] - 0.3), 2.0 * (y[1] + 0.1), 2.0 * (y[2] - 0.8)};
    double lhs = bubble_value(P3, two, y);
    double rhs = std::pow(2.0, 0.5 * P3.tau()) * bubble_value(P3, one, z);
    CHECK(lhs == doctest::Approx(rhs).epsilon(4e-16));
  }
}

TEST_CASE("nonlinear image: peak value and far-field decay rate") {
  BubbleSpec unit = BubbleSpec::make(Point{0, 0, 0, 0}, 1.0);
  CHECK(bubble_nonlinear_image(P4, unit, Point{0, 0, 0, 0}) ==
        doctest::Approx(std::pow(3.0, 2.5)).epsilon(1e-13));
  CHECK(bubble_nonlinear_image(P3, BubbleSpec::make(Point{0, 0, 0}, 1.0), Point{0, 0, 0}) ==
        doctest::Approx(3.6347327111540479).epsilon(1e-13));
  // log-log slope -> -(N+2s)
  for (const auto& p : {P3, P4}) {
    BubbleSpec u = BubbleSpec::make(Point(p.N, 0.0), 1.0);
    Point a(p.N, 0.0), b(p.N, 0.0);
    a[0] = 100.0;
    b[0] = 200.0;
    double slope = std::log(bubble_nonlinear_image(p, u, b) / bubble_nonlinear_image(p, u, a)) /
                   std::log(2.0);
    CHECK(slope == doctest::Approx(-(p.N + 2.0 * p.s)).epsilon(1e-3));
  }
}

TEST_CASE("linearization kernels: center values and parity") {
  CHECK(kernel_value(P4, KernelIndex::make(P4, 0), Point{0, 0, 0, 0}) ==
        doctest::Approx(1.5 * std::pow(3.0, 1.5)).epsilon(1e-14));
  for (int i = 1; i <= 4; ++i)
    CHECK(kernel_value(P4, KernelIndex::make(P4, i), Point{0, 0, 0, 0}) == 0.0);
  Point y{0.6, -0.2, 1.1, 0.4};
  Point yflip{-0.6, -0.2, 1.1, 0.4};
  // Z_1 odd in y_1, even in the rest
  CHECK(kernel_value(P4, KernelIndex::make(P4, 1), y) ==
        doctest::Approx(-kernel_value(P4, KernelIndex::make(P4, 1), yflip)).epsilon(1e-15));
  Point y2flip{0.6, 0.2, 1.1, 0.4};
  CHECK(kernel_value(P4, KernelIndex::make(P4, 1), y) ==
        doctest::Approx(kernel_value(P4, KernelIndex::make(P4, 1), y2flip)).epsilon(1e-15));
  // Z_0 radial
  Point yr{1.3, 0, 0, 0};
  Point yr2{0, -1.3, 0, 0};
  CHECK(kernel_value(P4, KernelIndex::make(P4, 0), yr) ==
        doctest::Approx(kernel_value(P4, KernelIndex::make(P4, 0), yr2)).epsilon(1e-15));
  CHECK_THROWS_AS(KernelIndex::make(P4, 5), std::out_of_range);
  CHECK_THROWS_AS(KernelIndex::make(P4, -1), std::out_of_range);
}

TEST_CASE("profiles match the field formulas and each other") {
  for (const auto& p : {P3, P4}) {
    BubbleProfile f(p, 1.0);
    Z0Profile z0(p);
    ZiRadialFactor g(p);
    BubbleSpec unit = BubbleSpec::make(Point(p.N, 0.0), 1.0);
    for (double rho : {0.2, 0.9, 3.5}) {
      Point y(p.N, 0.0);
      y[0] = rho;
      CHECK(f.value(rho) == doctest::Approx(bubble_value(p, unit, y)).epsilon(1e-15));
      CHECK(z0.value(rho) ==
            doctest::Approx(kernel_value(p, KernelIndex::make(p, 0), y)).epsilon(1e-15));
      CHECK(g.value(rho) ==
            doctest::Approx(kernel_value(p, KernelIndex::make(p, 1), y)).epsilon(1e-15));
      // derivative consistency by a centered difference
      double d = 1e-6;
      CHECK(f.deriv(rho) ==
            doctest::Approx((f.value(rho + d) - f.value(rho - d)) / (2 * d)).epsilon(1e-7));
      CHECK(z0.deriv(rho) ==
            doctest::Approx((z0.value(rho + d) - z0.value(rho - d)) / (2 * d)).epsilon(1e-6));
      CHECK(g.deriv(rho) ==
            doctest::Approx((g.value(rho + d) - g.value(rho - d)) / (2 * d)).epsilon(1e-6));
    }
  }
}
