#include "fracbubble/interactions.hpp"

#include <cmath>

namespace fracbubble {

double lattice_sum_exact(const CylinderConfig& cfg, const SumSpec& spec) {
  double s = 0.0;
  if (spec.kind == SumKind::same_circle) {
    for (int j = 2; j <= cfg.k; ++j) s += std::pow(same_circle_distance(cfg, j), -spec.tau);
  } else {
    if (cfg.h <= 0.0)
      throw std::domain_error("lattice_sum_exact: cross_circle requires h > 0 (j=1 term infinite)");
    for (int j = 1; j <= cfg.k; ++j) s += std::pow(cross_circle_distance(cfg, j), -spec.tau);
  }
  return s;
}

double d1_constant(double tau, const QuadratureSpec& quad) {
  if (!(tau > 1.0)) throw std::domain_error("d1_constant: integral diverges for tau <= 1");
  // x = tan(theta) compactifies; integrand cos^{tau-2}(theta) on [0, pi/2]
  auto f = [&](double th) { return std::pow(std::cos(th), tau - 2.0); };
  return adaptive_integrate(f, 0.0, 0.5 * M_PI, std::min(quad.rel_tol, 1e-12), 0.0,
                            quad.max_adaptive_depth);
}

double d1_constant_closed_form(double tau) {
  if (!(tau > 1.0)) throw std::domain_error("d1_constant_closed_form: requires tau > 1");
  return 0.5 * std::sqrt(M_PI) *
         std::exp(std::lgamma(0.5 * (tau - 1.0)) - std::lgamma(0.5 * tau));
}

AsymptoticSum lattice_sum_asymptotic(const CylinderConfig& cfg, const SumSpec& spec) {
  AsymptoticSum out;
  const double tau = spec.tau;
  const double k = cfg.k;
  const double sq = std::sqrt(1.0 - cfg.h * cfg.h);
  if (spec.kind == SumKind::same_circle) {
    if (tau <= 1.0) {
      out.regime_warning = true;
      // continuum form valid for tau < 1: (k/pi) int_0^pi sin^{-tau}
      double integral = tau < 1.0 ? beta_function(0.5 * (1.0 - tau), 0.5) : 0.0;
      if (tau < 1.0)
        out.value = std::pow(2.0 * cfg.r * sq, -tau) * (k / M_PI) * integral;
      else
        out.value = std::pow(2.0 * cfg.r * sq, -tau) * (2.0 * k / M_PI) *
                    (std::log(k) + 0.57721566490153286);
      return out;
    }
    out.value = std::pow(2.0 * cfg.r * sq, -tau) * 2.0 * std::pow(k / M_PI, tau) *
                riemann_zeta(tau);
    return out;
  }
  if (cfg.h <= 0.0) throw std::domain_error("lattice_sum_asymptotic: cross_circle requires h > 0");
  double d1 = d1_constant_closed_form(std::max(tau, 1.0 + 1e-9));
  if (tau <= 1.0) out.regime_warning = true;
  double hk = cfg.h * k;
  if (hk < 4.0) out.regime_warning = true;
  out.value = 2.0 * std::pow(2.0 * cfg.r * cfg.h, -tau) * hk * d1 / (M_PI * sq);
  out.statement_form = std::pow(cfg.r * cfg.h, -tau) * d1 * hk / sq;
  return out;
}

double pairwise_interaction(const SpectralParams& p, double d, const QuadratureSpec& quad) {
  if (d < 0.0) throw std::invalid_argument("pairwise_interaction: d must be >= 0");
  const double a = 0.5 * p.tau();
  const double pm1 = p.p_crit - 1.0;
  const double cpow = std::pow(p.c_norm, p.p_crit);
  // cylindrical reduction about the axis through both centers:
  //   |S^{N-2}| int dx int drho rho^{N-2} U^{p-1}(sqrt(x^2+rho^2)) U(sqrt((x-d)^2+rho^2))
  auto inner = [&](double x) {
    auto f = [&](double rho) {
      double r1sq = x * x + rho * rho;
      double r2sq = (x - d) * (x - d) + rho * rho;
      double u1 = std::pow(1.0 + r1sq, -a * pm1);  // U^{p-1} / c^{p-1}
      double u2 = std::pow(1.0 + r2sq, -a);        // U / c
      return std::pow(rho, p.N - 2.0) * u1 * u2;
    };
    return adaptive_integrate_to_inf(f, 0.0, quad.rel_tol * 0.3, 1e-14, quad.max_adaptive_depth);
  };
  // breakpoints at the two bubble centers keep the adaptive passes shallow
  double total = 0.0;
  auto neg = [&](double u) { return inner(-u); };
  total += adaptive_integrate_to_inf(neg, 0.0, quad.rel_tol, 1e-14, quad.max_adaptive_depth);
  if (d > 0.0) {
    total += adaptive_integrate(inner, 0.0, 0.5 * d, quad.rel_tol, 1e-14, quad.max_adaptive_depth);
    total += adaptive_integrate(inner, 0.5 * d, d, quad.rel_tol, 1e-14, quad.max_adaptive_depth);
    auto tail = [&](double u) { return inner(d + u); };
    total += adaptive_integrate_to_inf(tail, 0.0, quad.rel_tol, 1e-14, quad.max_adaptive_depth);
  } else {
    total += adaptive_integrate_to_inf(inner, 0.0, quad.rel_tol, 1e-14, quad.max_adaptive_depth);
  }
  return sphere_area(p.N - 1) * cpow * total;
}

double interaction_constant_B0(const SpectralParams& p, const QuadratureSpec& quad) {
  const double a = 0.5 * (p.N + 2.0 * p.s);  // exponent of (1+rho^2) in U^{p-1}
  auto f = [&](double rho) { return std::pow(rho, p.N - 1.0) * std::pow(1.0 + rho * rho, -a); };
  double integral =
      adaptive_integrate_to_inf(f, 0.0, quad.rel_tol, 1e-14, quad.max_adaptive_depth);
  return p.c_norm * std::pow(p.c_norm, p.p_crit - 1.0) * sphere_area(p.N) * integral;
}

double interaction_constant_B0_closed_form(const SpectralParams& p) {
  return std::pow(p.c_norm, p.p_crit) * sphere_area(p.N) *
         radial_power_integral(p.N - 1.0, 0.5 * (p.N + 2.0 * p.s));
}

}  // namespace fracbubble
