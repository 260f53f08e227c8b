#include <cmath>

#include "doctest.h"
#include "fracbubble/extension.hpp"
#include "fracbubble/reduced_energy.hpp"

using namespace fracbubble;

namespace {
const SpectralParams P3 = SpectralParams::make(3, 0.3);
const SpectralParams P4 = SpectralParams::make(4, 0.5);
const QuadratureSpec Q{};

ConstantsTable table3() {
  static ConstantsTable t = compute_constants(P3, PotentialModel::defaults(P3), Q);
  return t;
}
ConstantsTable table4() {
  static ConstantsTable t = compute_constants(P4, PotentialModel::defaults(P4), Q);
  return t;
}
}  // namespace

TEST_CASE("expansion constants against the Beta-function oracle") {
  ConstantsTable c3 = table3();
  CHECK(c3.A == doctest::Approx(4.2402410764013666).epsilon(1e-8));
  CHECK(c3.A1 == doctest::Approx(14.267050603198225).epsilon(1e-8));
  CHECK(c3.A2 == doctest::Approx(15.408414651454083).epsilon(1e-8));
  CHECK(c3.B0 == doctest::Approx(153.67950901943301).epsilon(1e-8));
  CHECK(c3.B1 == doctest::Approx(5.1634991332500671).epsilon(1e-8));
  CHECK(c3.B2 == doctest::Approx(23.224145317091181).epsilon(1e-8));
  ConstantsTable c4 = table4();
  CHECK(c4.A == doctest::Approx(33.309914853676585).epsilon(1e-8));
  CHECK(c4.A1 == doctest::Approx(55.080018802926530).epsilon(1e-8));
  CHECK(c4.A2 == doctest::Approx(108.43878701826161).epsilon(1e-8));
  CHECK(c4.B0 == doctest::Approx(1065.9172753176507).epsilon(1e-8));
  for (const auto& e : c3.provenance()) CHECK(e.value > 0.0);
  for (const auto& e : c4.provenance()) CHECK(e.value > 0.0);
}

TEST_CASE("admissible-exponent guards") {
  CHECK_THROWS_AS(PotentialModel::make(P3, 1.0, 1.0, 0.5 * P3.tau(), 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(PotentialModel::make(P3, 1.0, 1.0, P3.tau(), 0.5), std::invalid_argument);
  // m(m-1) > 0 for every admissible m: the A2 sign is positive
  CHECK(table3().A2 > 0.0);
  CHECK(table4().A2 > 0.0);
}

TEST_CASE("A2 matches a finite-difference second derivative of the potential mass") {
  // oracle: G(a) = int |y_1 - a|^m U^{2*_s} dy; the expansion's quadratic
  // coefficient is (c0/p) G''(0) = A2
  for (const auto* pp : {&P3, &P4}) {
    const SpectralParams& p = *pp;
    PotentialModel pot = PotentialModel::defaults(p);
    ConstantsTable c = p.N == 3 ? table3() : table4();
    auto G = [&](double a) {
      GammaRule rule = build_gamma_rule(p.N, 8, 12);
      auto radial = [&](double rho) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.g.size(); ++i)
          s += rule.wg[i] * std::pow(std::abs(rho * std::cos(rule.g[i]) - a), pot.m);
        return s * std::pow(rho, p.N - 1.0) * std::pow(1.0 + rho * rho, -(double)p.N);
      };
      return std::pow(p.c_norm, p.p_crit) * sphere_area(p.N - 1) *
             adaptive_integrate_to_inf(radial, 0.0, 1e-10);
    };
    auto fd2 = [&](double a) { return (G(a) - 2.0 * G(0.0) + G(-a)) / (a * a); };
    // one Richardson stage on the fractional-order FD error
    double e1 = fd2(0.08), e2 = fd2(0.04);
    double w = std::pow(2.0, pot.m - 1.0);
    double extrap = (w * e2 - e1) / (w - 1.0);
    double a2_from_fd = pot.c0 / p.p_crit * extrap;
    CHECK(a2_from_fd == doctest::Approx(c.A2).epsilon(0.02));
  }
}

TEST_CASE("expansion is even in (r - mu r0) and flat at r = mu r0") {
  ConstantsTable c = table3();
  PotentialModel pot = PotentialModel::defaults(P3);
  int k = 16;
  double mu = mu_scaling(P3, c.m, k);
  double h0 = solve_h0(P3, c, k);
  double lam0 = solve_lambda0(P3, c, k, mu * c.r0, h0);
  ReducedPoint plus{mu * c.r0 + 0.1, h0, lam0, k};
  ReducedPoint minus{mu * c.r0 - 0.1, h0, lam0, k};
  // the A2 quadratic is even; the interaction r-powers differ at O(1/r)
  double f_plus = energy_expansion(plus, c, P3, pot);
  double f_minus = energy_expansion(minus, c, P3, pot);
  CHECK(f_plus == doctest::Approx(f_minus).epsilon(1e-9));
  CHECK_THROWS_AS(energy_expansion(ReducedPoint{mu, 0.0, lam0, k}, c, P3, pot),
                  std::domain_error);
}

TEST_CASE("interaction terms decrease in Lambda and in r") {
  ConstantsTable c = table3();
  const double tau = P3.tau();
  auto interaction = [&](double r, double h, double L, int k) {
    return c.B1 * std::pow((double)k, tau) / (std::pow(L, tau) * std::pow(r * std::sqrt(1 - h * h), tau)) +
           c.B2 * h * k / (std::pow(L, tau) * std::pow(r * h, tau) * std::sqrt(1 - h * h));
  };
  CHECK(interaction(10.0, 0.3, 1.0, 8) > interaction(10.0, 0.3, 1.5, 8));
  CHECK(interaction(10.0, 0.3, 1.0, 8) > interaction(12.0, 0.3, 1.0, 8));
}

TEST_CASE("grad_lambda equals a centered difference of the expansion") {
  ConstantsTable c = table3();
  PotentialModel pot = PotentialModel::defaults(P3);
  int k = 16;
  double mu = mu_scaling(P3, c.m, k);
  double h0 = solve_h0(P3, c, k);
  double lam0 = solve_lambda0(P3, c, k, mu * c.r0, h0);
  ReducedPoint pt{mu * c.r0 * 1.0000001, h0 * 1.05, lam0 * 1.1, k};
  double g = grad_lambda(pt, c, P3);
  auto err = [&](double step) {
    ReducedPoint hi = pt, lo = pt;
    hi.lambda += step;
    lo.lambda -= step;
    return std::abs((energy_expansion(hi, c, P3, pot) - energy_expansion(lo, c, P3, pot)) /
                        (2.0 * step) -
                    g);
  };
  double e1 = err(0.04), e2 = err(0.02);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.4));
}

TEST_CASE("grad_lambda sign flips across Lambda0 at r = mu r0") {
  for (const auto* pp : {&P3, &P4}) {
    const SpectralParams& p = *pp;
    ConstantsTable c = p.N == 3 ? table3() : table4();
    int k = 32;
    double mu = mu_scaling(p, c.m, k);
    double h0 = solve_h0(p, c, k);
    double lam0 = solve_lambda0(p, c, k, mu * c.r0, h0);
    ReducedPoint above{mu * c.r0, h0, lam0 * 1.01, k};
    ReducedPoint below{mu * c.r0, h0, lam0 * 0.99, k};
    CHECK(grad_lambda(above, c, p) < 0.0);
    CHECK(grad_lambda(below, c, p) > 0.0);
    ReducedPoint at{mu * c.r0, h0, lam0, k};
    double scale = std::abs(grad_lambda(above, c, p));
    CHECK(std::abs(grad_lambda(at, c, p)) <= 1e-10 * scale);
  }
}

TEST_CASE("grad_h: root at h0, signs, and the dropped-term discrepancy") {
  ConstantsTable c = table3();
  PotentialModel pot = PotentialModel::defaults(P3);
  int k = 32;
  double mu = mu_scaling(P3, c.m, k);
  double h0 = solve_h0(P3, c, k);
  double lam0 = solve_lambda0(P3, c, k, mu * c.r0, h0);
  ReducedPoint at{mu * c.r0, h0, lam0, k};
  CHECK(std::abs(grad_h(at, c, P3)) <=
        1e-11 * std::abs(grad_h(ReducedPoint{mu * c.r0, 0.5 * h0, lam0, k}, c, P3)));
  CHECK(grad_h(ReducedPoint{mu * c.r0, 0.5 * h0, lam0, k}, c, P3) > 0.0);
  CHECK(grad_h(ReducedPoint{mu * c.r0, 2.0 * h0, lam0, k}, c, P3) < 0.0);
  // FD of the expansion = grad_h + dropped term, to second order in the step
  ReducedPoint pt{mu * c.r0, h0 * 1.2, lam0, k};
  auto err = [&](double step) {
    ReducedPoint hi = pt, lo = pt;
    hi.h += step;
    lo.h -= step;
    double fd = (energy_expansion(hi, c, P3, pot) - energy_expansion(lo, c, P3, pot)) /
                (2.0 * step);
    return std::abs(fd - grad_h(pt, c, P3) - grad_h_dropped_term(pt, c, P3));
  };
  double e1 = err(0.01 * h0), e2 = err(0.005 * h0);
  double full = std::abs(grad_h(pt, c, P3)) + std::abs(grad_h_dropped_term(pt, c, P3));
  CHECK(e1 <= 1e-3 * full);
  CHECK(e2 <= e1);
}

TEST_CASE("h0: unit-ratio anchor, range, exact power law") {
  // synthetic table with B1 tau k^{tau-1} = B2 (tau - 1): root at 1/sqrt(2)
  ConstantsTable c;
  c.m = 0.75 * P3.tau();
  const double tau = P3.tau();
  const int k = 10;
  c.B1 = 1.0;
  c.B2 = tau * std::pow((double)k, tau - 1.0) / (tau - 1.0);
  CHECK(solve_h0(P3, c, k) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

  ConstantsTable real = table3();
  double prev = 1.0;
  for (int kk : {2, 8, 32, 128, 512, 4096}) {
    double h0 = solve_h0(P3, real, kk);
    CHECK(h0 > 0.0);
    CHECK(h0 < 1.0);
    CHECK(h0 < prev);
    prev = h0;
  }
  // exact transformed power law: (1/h0^2 - 1) proportional to k^{2(tau-1)/(tau+1)}
  double x1 = 1.0 / sqr(solve_h0(P3, real, 64)) - 1.0;
  double x2 = 1.0 / sqr(solve_h0(P3, real, 128)) - 1.0;
  CHECK(x2 / x1 == doctest::Approx(std::pow(2.0, 2.0 * (tau - 1.0) / (tau + 1.0))).epsilon(1e-12));
}

TEST_CASE("frozen critical data at k = 50") {
  ConstantsTable c3 = table3();
  CHECK(solve_h0(P3, c3, 50) == doctest::Approx(0.25637202920014163).epsilon(1e-7));
  double mu3 = mu_scaling(P3, c3.m, 50);
  CHECK(solve_lambda0(P3, c3, 50, mu3 * c3.r0, solve_h0(P3, c3, 50)) ==
        doctest::Approx(0.41119837710120731).epsilon(1e-7));
  ConstantsTable c4 = table4();
  CHECK(solve_h0(P4, c4, 50) == doctest::Approx(0.21142467059436698).epsilon(1e-7));
  double mu4 = mu_scaling(P4, c4.m, 50);
  CHECK(solve_lambda0(P4, c4, 50, mu4 * c4.r0, solve_h0(P4, c4, 50)) ==
        doctest::Approx(0.18899298303545555).epsilon(1e-7));
}

TEST_CASE("Lambda0: stable over k doublings and monotone in A1") {
  ConstantsTable c = table3();
  double prev_ratio = 1e300;
  double prev = 0.0;
  for (int k : {16, 32, 64, 128, 256, 512}) {
    double mu = mu_scaling(P3, c.m, k);
    double lam = solve_lambda0(P3, c, k, mu * c.r0, solve_h0(P3, c, k));
    if (prev > 0.0) {
      double ratio = std::abs(lam / prev - 1.0);
      CHECK(ratio < prev_ratio);
      prev_ratio = ratio;
    }
    prev = lam;
  }
  ConstantsTable bumped = c;
  bumped.A1 *= 2.0;
  double mu = mu_scaling(P3, c.m, 64);
  double h0 = solve_h0(P3, c, 64);
  CHECK(solve_lambda0(P3, bumped, 64, mu * c.r0, h0) <
        solve_lambda0(P3, c, 64, mu * c.r0, h0));
}

TEST_CASE("solitary bubble energy") {
  for (const auto* pp : {&P3, &P4}) {
    const SpectralParams& p = *pp;
    double mass = std::pow(p.c_norm, p.p_crit) * sphere_area(p.N) *
                  radial_power_integral(p.N - 1.0, p.N);
    CHECK(single_bubble_energy(p, Q) == doctest::Approx(p.s / p.N * mass).epsilon(1e-8));
  }
}

TEST_CASE("direct energy: wedge-offset invariance and expansion trend") {
  ConstantsTable c = table3();
  PotentialModel pot = PotentialModel::defaults(P3);
  const int k = 4;
  double mu = mu_scaling(P3, c.m, k);
  double h0 = solve_h0(P3, c, k);
  double lam0 = solve_lambda0(P3, c, k, mu * c.r0, h0);
  CylinderConfig cfg = build_cylinder_config(P3, c.m, k, mu * c.r0, h0, lam0);
  double e0 = energy_direct(cfg, pot, P3, Q, 0.0);
  double e1 = energy_direct(cfg, pot, P3, Q, 0.35 * M_PI / k);
  CHECK(e0 == doctest::Approx(e1).epsilon(1e-6));

  // (direct - kA)/k tracks the expansion's subleading sign for k in {4, 6, 8}
  for (int kk : {4, 6, 8}) {
    double muk = mu_scaling(P3, c.m, kk);
    double h0k = solve_h0(P3, c, kk);
    double lamk = solve_lambda0(P3, c, kk, muk * c.r0, h0k);
    CylinderConfig ck = build_cylinder_config(P3, c.m, kk, muk * c.r0, h0k, lamk);
    double direct = energy_direct(ck, pot, P3, Q);
    double expansion = energy_expansion(ReducedPoint{muk * c.r0, h0k, lamk, kk}, c, P3, pot);
    double lhs = direct / (2.0 * kk) - single_bubble_energy(P3, Q);
    double rhs = expansion / kk - c.A;
    CHECK(lhs * rhs > 0.0);  // same sign
  }
  CHECK_THROWS_AS(energy_direct(build_cylinder_config(P3, c.m, 9, 10.0, 0.3, 1.0), pot, P3, Q),
                  std::invalid_argument);
}
