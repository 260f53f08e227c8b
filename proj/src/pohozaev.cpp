#include "fracbubble/pohozaev.hpp"

#include <cmath>
#include <memory>

namespace fracbubble {

namespace {

// phi-rule over [0, pi/2] with weight sin^{1-2s}(phi) cos^{N-1}(phi); the
// sin power is absorbed exactly on the panel touching phi = 0.
struct PhiRule {
  std::vector<double> phi, w;
};

PhiRule build_phi_rule(const SpectralParams& p, const QuadratureSpec& quad) {
  PhiRule r;
  const int scale = 1 << std::max(0, quad.level);
  const int order = 8;
  const double alpha = 1.0 - 2.0 * p.s;
  const GaussLegendre& gl = gauss_legendre(order);
  const double b0 = 0.25;
  // boundary layer at phi = 0: phi = b0 e^{-xi}.  The weighted measure decays
  // like e^{-(2-2s) xi}, but lateral integrands may carry t^{4s-2} products
  // (both normal-trace factors singular), so the slowest decay rate of the
  // layer is min(2-2s, 2s); the window is sized against that one.
  const double q_eff = std::min(alpha + 1.0, 2.0 * p.s);
  const double xi_max = 38.0 / q_eff;
  const int layer_panels = static_cast<int>(std::ceil(0.5 * xi_max * q_eff)) * scale;
  for (int pnl = 0; pnl < layer_panels; ++pnl) {
    double a0 = xi_max * pnl / layer_panels, a1 = xi_max * (pnl + 1) / layer_panels;
    double mid = 0.5 * (a0 + a1), half = 0.5 * (a1 - a0);
    for (int j = 0; j < order; ++j) {
      double xi = mid + half * gl.x[j];
      double phi = b0 * std::exp(-xi);
      double wj = half * gl.w[j] * phi * std::pow(std::sin(phi), alpha) *
                  std::pow(std::cos(phi), p.N - 1.0);
      if (wj == 0.0) continue;
      r.phi.push_back(phi);
      r.w.push_back(wj);
    }
  }
  auto breaks = uniform_breaks(b0, 0.5 * M_PI, 6 * scale);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double mid = 0.5 * (breaks[i] + breaks[i + 1]), half = 0.5 * (breaks[i + 1] - breaks[i]);
    for (int j = 0; j < order; ++j) {
      double phi = mid + half * gl.x[j];
      r.phi.push_back(phi);
      r.w.push_back(half * gl.w[j] * std::pow(std::sin(phi), alpha) *
                    std::pow(std::cos(phi), p.N - 1.0));
    }
  }
  return r;
}

std::unique_ptr<RadialProfile> make_profile(const SpectralParams& p, const FieldSpec& f) {
  switch (f.kind) {
    case FieldSpec::Kind::bubble:
      return std::make_unique<BubbleProfile>(p, 1.0);
    case FieldSpec::Kind::z0:
      return std::make_unique<Z0Profile>(p);
    case FieldSpec::Kind::zi:
      return std::make_unique<ZiRadialFactor>(p);
    case FieldSpec::Kind::zero:
      return std::make_unique<ConstantProfile>(0.0);
  }
  throw std::logic_error("make_profile: unknown kind");
}

bool is_radial(const FieldSpec& f) {
  return f.kind != FieldSpec::Kind::zi;
}

// 1-D radial quadrature of r^{N-1} g(r) over [0, delta]
double radial_ball_integral(const SpectralParams& p, const Fn1D& g, double delta,
                            const QuadratureSpec& quad) {
  auto f = [&](double r) { return std::pow(r, p.N - 1.0) * g(r); };
  return adaptive_integrate(f, 0.0, delta, quad.rel_tol, 1e-14, quad.max_adaptive_depth);
}

}  // namespace

double weighted_hemisphere_integral(const SpectralParams& p,
                                    const std::function<double(const Point&, double)>& f,
                                    const HalfBallDomain& domain, const QuadratureSpec& quad) {
  PhiRule rule = build_phi_rule(p, quad);
  const double delta = domain.radius;
  const int scale = 1 << std::max(0, quad.level);

  // product rule on S^{N-1}
  std::vector<Point> dirs;
  std::vector<double> dw;
  if (p.N == 3) {
    const int nu = 12 * scale, naz = 24 * scale;
    const GaussLegendre& gl = gauss_legendre(nu);
    for (int i = 0; i < nu; ++i) {
      double cu = gl.x[i];
      double su = std::sqrt(std::max(0.0, 1.0 - cu * cu));
      for (int j = 0; j < naz; ++j) {
        double az = 2.0 * M_PI * j / naz;
        dirs.push_back({su * std::cos(az), su * std::sin(az), cu});
        dw.push_back(gl.w[i] * 2.0 * M_PI / naz);
      }
    }
  } else if (p.N == 4) {
    const int n1 = 10 * scale, n2 = 10 * scale, n3 = 16 * scale;
    const GaussLegendre& gl1 = gauss_legendre(n1);
    const GaussLegendre& gl2 = gauss_legendre(n2);
    for (int i = 0; i < n1; ++i) {
      double t1 = 0.5 * M_PI * (1.0 + gl1.x[i]);
      double w1 = 0.5 * M_PI * gl1.w[i] * sqr(std::sin(t1));
      for (int j = 0; j < n2; ++j) {
        double t2 = 0.5 * M_PI * (1.0 + gl2.x[j]);
        double w2 = 0.5 * M_PI * gl2.w[j] * std::sin(t2);
        for (int l = 0; l < n3; ++l) {
          double t3 = 2.0 * M_PI * l / n3;
          dirs.push_back({std::cos(t1), std::sin(t1) * std::cos(t2),
                          std::sin(t1) * std::sin(t2) * std::cos(t3),
                          std::sin(t1) * std::sin(t2) * std::sin(t3)});
          dw.push_back(w1 * w2 * 2.0 * M_PI / n3);
        }
      }
    }
  } else {
    throw std::invalid_argument("weighted_hemisphere_integral: N must be 3 or 4");
  }

  double total = 0.0;
  Point y(p.N, 0.0);
  for (std::size_t q = 0; q < rule.phi.size(); ++q) {
    double cphi = std::cos(rule.phi[q]), sphi = std::sin(rule.phi[q]);
    double t = delta * sphi;
    double inner = 0.0;
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      for (int i = 0; i < p.N; ++i) y[i] = domain.center[i] + delta * cphi * dirs[d][i];
      inner += dw[d] * f(y, t);
    }
    total += rule.w[q] * inner;
  }
  return total * std::pow(delta, p.N + 1.0 - 2.0 * p.s);
}

ResidualReport translation_identity_residual(const SpectralParams& p, const FieldPair& pair,
                                             const HalfBallDomain& domain,
                                             const PotentialModel& pot, double mu, int i,
                                             const QuadratureSpec& quad) {
  if (i < 1 || i > p.N)
    throw std::out_of_range("translation_identity_residual: direction out of range");
  ResidualReport rep;
  rep.label = "pohozaev_translation";

  if (pair.u.kind == FieldSpec::Kind::zero || pair.xi.kind == FieldSpec::Kind::zero) {
    rep.passed = true;
    return rep;
  }
  if (pair.u.kind != FieldSpec::Kind::bubble)
    throw std::invalid_argument("translation_identity_residual: u must be the bubble");

  const double delta = domain.radius;
  auto fu = make_profile(p, pair.u);
  RadialExtension Eu(p, *fu, quad);
  PhiRule rule = build_phi_rule(p, quad);
  const double SN = sphere_area(p.N);
  const double pm1 = p.p_crit - 1.0;

  double lhs = 0.0;
  double rhs = 0.0;

  if (!is_radial(pair.xi)) {
    if (pair.xi.direction != i)
      throw std::invalid_argument(
          "translation_identity_residual: xi direction must match the identity direction");
    ZiRadialFactor g(p);
    L1Extension G(p, g, quad);
    // lateral: -int t^{1-2s} [ Dnu(Eu)(G_r w^2 + (G/rho)(1-w^2))
    //                          + Dnu(G) Eu_r w^2 - (Eu_r G_r + Eu_t G_t) c w^2 ],
    // with the S^{N-1} moments <w^2> = 1/N, <1-w^2> = (N-1)/N.
    for (std::size_t q = 0; q < rule.phi.size(); ++q) {
      double c = std::cos(rule.phi[q]), s = std::sin(rule.phi[q]);
      double rho = delta * c, t = delta * s;
      double eur, eut, gr, gt;
      Eu.grad(rho, t, eur, eut);
      G.grad(rho, t, gr, gt);
      double gval = G.value(rho, t);
      double dnu_u = eur * c + eut * s;
      double dnu_g = gr * c + gt * s;
      double term = dnu_u * (gr / p.N + (gval / rho) * (p.N - 1.0) / p.N) +
                    dnu_g * eur / p.N - (eur * gr + eut * gt) * c / p.N;
      lhs += rule.w[q] * term;
    }
    lhs *= -SN * std::pow(delta, p.N + 1.0 - 2.0 * p.s);

    // flat parts: - int_Omega d_i K u^{p-1} xi + int_{dOmega} K u^{p-1} xi nu_i
    ZiRadialFactor gxi(p);
    double volume = 0.0;
    if (!pot.is_flat()) {
      auto integrand = [&](double r) {
        return pot.deriv(r / mu) / mu * std::pow(fu->value(r), pm1) * gxi.value(r);
      };
      volume = SN / p.N * radial_ball_integral(p, integrand, delta, quad);
    }
    double bdry = pot.value(delta / mu) * std::pow(fu->value(delta), pm1) * gxi.value(delta) *
                  std::pow(delta, p.N - 1.0) * SN / p.N;
    // the flat boundary carries the Neumann data kappa_s K u^{p-1}
    rhs = p.kappa_trace() * (-volume + bdry);
  } else {
    // radial xi: every term carries a first sphere moment and vanishes
    lhs = 0.0;
    rhs = 0.0;
  }

  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.abs_residual = std::abs(lhs - rhs);
  rep.scale = std::max(std::abs(lhs), std::abs(rhs));
  rep.rel_residual = rep.scale > 0.0 ? rep.abs_residual / rep.scale : 0.0;
  rep.passed = rep.scale > 0.0 ? rep.rel_residual <= 1e-3 : rep.abs_residual <= 1e-12;
  return rep;
}

ResidualReport dilation_identity_residual(const SpectralParams& p, const FieldPair& pair,
                                          const HalfBallDomain& domain, const PotentialModel& pot,
                                          double mu, const Point& x0, const QuadratureSpec& quad) {
  ResidualReport rep;
  rep.label = "pohozaev_dilation";
  if (pair.u.kind == FieldSpec::Kind::zero || pair.xi.kind == FieldSpec::Kind::zero) {
    rep.passed = true;
    rep.details.assign(6, 0.0);
    return rep;
  }
  if (pair.u.kind != FieldSpec::Kind::bubble)
    throw std::invalid_argument("dilation_identity_residual: u must be the bubble");
  if (!is_radial(pair.xi))
    throw std::invalid_argument("dilation_identity_residual: implemented for radial pairs");
  {
    Point d = x0;
    for (std::size_t j = 0; j < d.size(); ++j) d[j] -= domain.center[j];
    if (norm(d) > domain.radius)
      throw std::invalid_argument("dilation_identity_residual: x0 must lie in the closed ball");
  }

  const double delta = domain.radius;
  auto fu = make_profile(p, pair.u);
  auto fxi = make_profile(p, pair.xi);
  RadialExtension Eu(p, *fu, quad);
  RadialExtension Exi(p, *fxi, quad);
  PhiRule rule = build_phi_rule(p, quad);
  const double SN = sphere_area(p.N);
  const double pm1 = p.p_crit - 1.0;
  const double half_tau = 0.5 * p.tau();

  // for radial pairs all x0-linear pieces integrate to zero over S^{N-1}
  double T1 = 0.0, T2 = 0.0, T3 = 0.0, T4 = 0.0, T5 = 0.0;
  for (std::size_t q = 0; q < rule.phi.size(); ++q) {
    double c = std::cos(rule.phi[q]), s = std::sin(rule.phi[q]);
    double rho = delta * c, t = delta * s;
    double eur, eut, exr, ext;
    Eu.grad(rho, t, eur, eut);
    Exi.grad(rho, t, exr, ext);
    double uval = Eu.value(rho, t);
    double xval = Exi.value(rho, t);
    double dnu_u = eur * c + eut * s;
    double dnu_x = exr * c + ext * s;
    T1 += rule.w[q] * dnu_u * delta * dnu_x;
    T2 += rule.w[q] * dnu_x * delta * dnu_u;
    T3 += rule.w[q] * (eur * exr + eut * ext) * delta;
    T4 += rule.w[q] * xval * dnu_u;
    T5 += rule.w[q] * uval * dnu_x;
  }
  double wfac = SN * std::pow(delta, p.N + 1.0 - 2.0 * p.s);
  T1 *= wfac;
  T2 *= wfac;
  T3 *= -wfac;
  T4 *= wfac * half_tau;
  T5 *= wfac * half_tau;

  // flat-boundary and volume terms carry the pair's Neumann data (kappa_s
  // times K u^{p-1} for the trace u, and the linearized weight for a kernel
  // xi).  For the self-pair both data are the nonlinear ones, which rescales
  // the flat-side terms by 2/p relative to the linearized-pair display.
  const double c_pair = pair.xi.kind == FieldSpec::Kind::bubble ? 2.0 / p.p_crit : 1.0;
  double T_bdry = c_pair * p.kappa_trace() * pot.value(delta / mu) *
                  std::pow(fu->value(delta), pm1) * fxi->value(delta) *
                  std::pow(delta, p.N - 1.0) * SN * delta;

  double lhs_vol = 0.0;
  if (!pot.is_flat()) {
    auto integrand = [&](double r) {
      return pot.deriv(r / mu) / mu * std::pow(fu->value(r), pm1) * fxi->value(r) * r;
    };
    lhs_vol = c_pair * p.kappa_trace() * SN * radial_ball_integral(p, integrand, delta, quad);
  }

  double rhs = T_bdry + T1 + T2 + T3 + T4 + T5;
  rep.lhs = lhs_vol;
  rep.rhs = rhs;
  rep.details = {T_bdry, T1, T2, T3, T4, T5};
  double max_term = 0.0;
  for (double v : rep.details) max_term = std::max(max_term, std::abs(v));
  rep.abs_residual = std::abs(lhs_vol - rhs);
  rep.scale = max_term;
  rep.rel_residual = max_term > 0.0 ? rep.abs_residual / max_term : 0.0;
  rep.passed = max_term > 0.0 ? rep.rel_residual <= 1e-3 : rep.abs_residual <= 1e-12;
  return rep;
}

}  // namespace fracbubble
