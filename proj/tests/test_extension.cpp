#include <cmath>

#include "doctest.h"
#include "fracbubble/extension.hpp"

using namespace fracbubble;

namespace {
const SpectralParams P3 = SpectralParams::make(3, 0.3);
const SpectralParams P4 = SpectralParams::make(4, 0.5);
const QuadratureSpec Q{};
}  // namespace

TEST_CASE("constant inputs are fixed points of the extension") {
  for (const auto& p : {P3, P4}) {
    ConstantProfile c(2.5);
    RadialExtension ext(p, c, Q);
    for (auto [rho, t] : {std::pair<double, double>{0.0, 0.3}, {1.2, 1.0}, {2.0, 0.05}}) {
      CHECK(ext.value(rho, t) == doctest::Approx(2.5).epsilon(1e-8));
    }
  }
}

TEST_CASE("t -> 0 recovers the boundary value at the t^{2s} rate") {
  BubbleProfile f(P3, 1.0);
  RadialExtension ext(P3, f, Q);
  for (double rho : {0.0, 0.8, 2.5}) {
    double prev = 1e300;
    for (double t : {1e-2, 1e-3, 1e-4}) {
      double dev = std::abs(ext.value(rho, t) - f.value(rho)) / f.value(rho);
      CHECK(dev <= 4.0 * std::pow(t, 2.0 * P3.s));
      CHECK(dev < prev);
      prev = dev;
    }
  }
}

TEST_CASE("extension at the origin against the 1-D radial oracle") {
  // at y = 0 the convolution collapses to a single radial integral
  BubbleProfile f(P3, 1.0);
  auto oracle = [&](double t) {
    auto g = [&](double rho) {
      return std::pow(rho, P3.N - 1.0) * f.value(rho) *
             std::pow(rho * rho + t * t, -0.5 * (P3.N + 2.0 * P3.s));
    };
    double I = adaptive_integrate_to_inf(g, 0.0, 1e-12);
    return P3.beta_ext * sphere_area(P3.N) * std::pow(t, 2.0 * P3.s) * I;
  };
  RadialExtension ext(P3, f, Q);
  CHECK(ext.value(0.0, 1.0) == doctest::Approx(oracle(1.0)).epsilon(1e-8));
  CHECK(ext.value(0.0, 1.0) == doctest::Approx(0.32613162055061732).epsilon(1e-8));
  CHECK(ext.value(0.0, 0.2) == doctest::Approx(oracle(0.2)).epsilon(1e-8));
}

TEST_CASE("extension_value API: frame change and input validation") {
  BubbleSpec spec = BubbleSpec::make(Point{0.5, 0.0, 0.0}, 2.0);
  Point y{0.5, 0.3, 0.0};
  double v = extension_value(P3, spec, y, 0.7, Q);
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
  CHECK_THROWS_AS(extension_value(P3, spec, y, 0.0, Q), std::invalid_argument);
  // center/scale covariance against the unit-frame evaluation
  BubbleProfile unit(P3, 1.0);
  RadialExtension ext(P3, unit, Q);
  double expect = std::pow(2.0, 0.5 * P3.tau()) * ext.value(2.0 * 0.3, 2.0 * 0.7);
  CHECK(v == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("trace derivative of the bubble equals the nonlinear image") {
  for (const auto& p : {P3, P4}) {
    BubbleProfile f(p, 1.0);
    for (double rho : {0.0, 1.4, 3.8}) {
      double trace = trace_derivative_radial(p, f, rho, Q);
      double exact = std::pow(f.value(rho), p.p_crit - 1.0);
      CHECK(trace == doctest::Approx(exact).epsilon(1e-3));
    }
  }
}

TEST_CASE("trace derivative of kernels matches the linearized right side") {
  for (const auto& p : {P3, P4}) {
    BubbleProfile f(p, 1.0);
    Z0Profile z0(p);
    double rho = 0.4;
    double lhs = trace_derivative_radial(p, z0, rho, Q);
    double rhs = (p.p_crit - 1.0) * std::pow(f.value(rho), p.p_crit - 2.0) * z0.value(rho);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-3));
    ZiRadialFactor g(p);
    double l1 = trace_derivative_l1(p, g, 1.1, Q);
    double r1 = (p.p_crit - 1.0) * std::pow(f.value(1.1), p.p_crit - 2.0) * g.value(1.1);
    CHECK(l1 == doctest::Approx(r1).epsilon(1e-3));
  }
}

TEST_CASE("trace derivative of the zero input is zero") {
  ConstantProfile zero(0.0);
  CHECK(trace_derivative_radial(P3, zero, 0.7, Q) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("extension trace scales like the nonlinear image under lambda") {
  BubbleSpec spec = BubbleSpec::make(Point{0, 0, 0}, 1.7);
  Point y{0.4, 0.2, -0.1};
  double trace = extension_trace_derivative(P3, spec, y, Q);
  double exact = bubble_nonlinear_image(P3, spec, y);
  CHECK(trace == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("gradient bound ratios stay bounded over growing half spheres") {
  BubbleSpec unit = BubbleSpec::make(Point{0, 0, 0}, 1.0);
  ResidualReport rep = extension_gradient_bound_check(P3, unit, 16, Q);
  REQUIRE(rep.details.size() == 4);
  for (double v : rep.details) CHECK(v > 0.0);
  CHECK(rep.passed);
  // no growth trend: the delta=8 ratio does not exceed 4x the delta=1 ratio
  CHECK(rep.details[3] <= 4.0 * rep.details[0]);
}

TEST_CASE("gradient bound ratio of the zero field is zero") {
  ConstantProfile zero(0.0);
  std::vector<std::pair<Point, double>> samples;
  for (int i = 0; i < 8; ++i) {
    double phi = 0.5 * M_PI * (i + 0.5) / 8;
    Point y{std::cos(phi), 0.0, 0.0};
    samples.push_back({y, std::sin(phi)});
  }
  CHECK(hemisphere_gradient_ratio(P3, zero, samples, 1.0) == 0.0);
  // constraint violation
  samples[0].second += 0.5;
  CHECK_THROWS_AS(hemisphere_gradient_ratio(P3, zero, samples, 1.0), std::invalid_argument);
}
