#include "fracbubble/extension.hpp"

#include <algorithm>
#include <cmath>

namespace fracbubble {

namespace {

// zeta-grid for int_0^inf zeta^{N-1} (zeta^2+t^2)^{-(N+2s)/2} I(zeta) dzeta:
// dyadic panels from t/8 upward (kernel shoulder), width-capped panels
// through the profile scale, then an exponential tail where the integrand
// decays like zeta^{-1-2s}.
struct ZetaGrid {
  std::vector<double> z, w;
};

ZetaGrid build_zeta_grid(const SpectralParams& p, double rho, double t,
                         const QuadratureSpec& quad) {
  ZetaGrid g;
  const int scale = 1 << std::max(0, quad.level);
  const int order = 8;
  const GaussLegendre& gl = gauss_legendre(order);
  const double t_core = std::max(t, 1e-8);
  const double cap = 0.75 / scale;
  const double core_end = 10.0 + rho + 4.0 * t;

  std::vector<double> breaks;
  breaks.push_back(0.0);
  double x = std::min(t_core / 8.0, 0.25);
  while (x < core_end) {
    breaks.push_back(x);
    x = std::min(2.0 * x, x + cap);
  }
  breaks.push_back(core_end);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    // each panel splits `scale` ways so the octave region also refines
    for (int sub = 0; sub < scale; ++sub) {
      double a0 = breaks[i] + (breaks[i + 1] - breaks[i]) * sub / scale;
      double a1 = breaks[i] + (breaks[i + 1] - breaks[i]) * (sub + 1) / scale;
      double mid = 0.5 * (a0 + a1), half = 0.5 * (a1 - a0);
      for (int j = 0; j < order; ++j) {
        g.z.push_back(mid + half * gl.x[j]);
        g.w.push_back(half * gl.w[j]);
      }
    }
  }
  // tail: zeta = core_end e^{xi}; panel width capped against the e^{-2s xi} rate
  const double q = 2.0 * p.s;
  const double xi_max = 36.0 / q;
  const int tail_panels = static_cast<int>(std::ceil(xi_max / 2.0)) * scale;
  const int tail_order = 6;
  const GaussLegendre& glt = gauss_legendre(tail_order);
  for (int pnl = 0; pnl < tail_panels; ++pnl) {
    double a0 = xi_max * pnl / tail_panels, a1 = xi_max * (pnl + 1) / tail_panels;
    double mid = 0.5 * (a0 + a1), half = 0.5 * (a1 - a0);
    for (int j = 0; j < tail_order; ++j) {
      double xi = mid + half * glt.x[j];
      double z = core_end * std::exp(xi);
      g.z.push_back(z);
      g.w.push_back(half * glt.w[j] * z);  // dzeta = zeta dxi
    }
  }
  return g;
}

inline double safe_div(double a, double b) { return b == 0.0 ? 0.0 : a / b; }

}  // namespace

GammaRule build_gamma_rule(int N, int panels, int order) {
  GammaRule r;
  const GaussLegendre& gl = gauss_legendre(order);
  auto breaks = graded_breaks(0.0, M_PI, panels, 1.6);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double mid = 0.5 * (breaks[i] + breaks[i + 1]), half = 0.5 * (breaks[i + 1] - breaks[i]);
    for (int j = 0; j < order; ++j) {
      double g = mid + half * gl.x[j];
      r.g.push_back(g);
      r.wg.push_back(half * gl.w[j] * std::pow(std::sin(g), N - 2.0));
    }
  }
  return r;
}

namespace {

// Rule for the angular integral rewritten over the chord length R:
//   int_0^pi sin^{N-2}(g) F(R(g)) dg = int_{|rho-zeta|}^{rho+zeta} F(R) J(R) dR,
//   J_3 = R/(rho zeta),
//   J_4 = R sqrt((R^2-Rmin^2)(Rmax^2-R^2)) / (2 rho^2 zeta^2).
// This keeps the near-diagonal feature (zeta close to rho) fully resolved;
// panels are graded into both endpoints and width-capped inside.
struct ChordRule {
  std::vector<double> R, w;
};

ChordRule build_chord_rule(int N, double rho, double zeta, int scale) {
  ChordRule r;
  const double rmin = std::abs(rho - zeta), rmax = rho + zeta;
  const double W = rmax - rmin;
  if (W <= 0.0) return r;
  std::vector<double> brk;
  brk.push_back(0.0);
  brk.push_back(W);
  for (int j = 1; j <= 14; ++j) {
    double off = W * std::pow(2.0, -j);
    brk.push_back(off);
    brk.push_back(W - off);
  }
  const double cap = 0.35 / scale;
  for (double x = cap; x < W; x += cap) brk.push_back(x);
  std::sort(brk.begin(), brk.end());
  brk.erase(std::unique(brk.begin(), brk.end(),
                        [&](double a, double b) { return b - a < 1e-300 + 1e-9 * W / scale; }),
            brk.end());
  const int order = 6;
  const GaussLegendre& gl = gauss_legendre(order);
  const double inv = 1.0 / (rho * zeta);
  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    double mid = 0.5 * (brk[i] + brk[i + 1]), half = 0.5 * (brk[i + 1] - brk[i]);
    if (half <= 0.0) continue;
    for (int j = 0; j < order; ++j) {
      double R = rmin + mid + half * gl.x[j];
      double jac;
      if (N == 3) {
        jac = R * inv;
      } else {
        double q = (R * R - rmin * rmin) * (rmax * rmax - R * R);
        jac = R * std::sqrt(std::max(0.0, q)) * 0.5 * inv * inv;
      }
      r.R.push_back(R);
      r.w.push_back(half * gl.w[j] * jac);
    }
  }
  return r;
}

constexpr double kDegenerate = 1e-14;

}  // namespace

RadialExtension::RadialExtension(const SpectralParams& p, const RadialProfile& f,
                                 const QuadratureSpec& quad)
    : p_(p), f_(f), quad_(quad) {
  if (p.N != 3 && p.N != 4)
    throw std::invalid_argument("RadialExtension: N must be 3 or 4");
  scale_ = 1 << std::max(0, quad.level);
  s_gamma_ = std::sqrt(M_PI) *
             std::exp(std::lgamma(0.5 * (p.N - 1.0)) - std::lgamma(0.5 * p.N));
}

// angular integrals at fixed (rho, zeta) over the chord variable:
//   mode 0: f(R);  mode 1: f'(R)(rho - zeta cos g)/R with
//   rho - zeta cos g = (R^2 + rho^2 - zeta^2)/(2 rho)
double RadialExtension::gamma_integral(double rho, double zeta, int mode) const {
  if (rho * zeta < kDegenerate) {
    double R = std::sqrt(rho * rho + zeta * zeta);
    if (mode == 0) return s_gamma_ * f_.value(R);
    return s_gamma_ * (R > 0.0 ? f_.deriv(R) * rho / R : f_.deriv(0.0));
  }
  ChordRule rule = build_chord_rule(p_.N, rho, zeta, scale_);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.R.size(); ++i) {
    double R = rule.R[i];
    double val;
    if (mode == 0) {
      val = f_.value(R);
    } else {
      double ax = (R * R + rho * rho - zeta * zeta) / (2.0 * rho);
      val = f_.deriv(R) * safe_div(ax, R);
    }
    s += rule.w[i] * val;
  }
  return s;
}

// I0 - S_gamma f(rho), which is O(zeta^2): computed from the second-order
// expansion when zeta is small (a plain difference would be swamped by
// quadrature jitter and then amplified by the kernel mass near zeta = 0)
double RadialExtension::delta0(double rho, double zeta) const {
  if (zeta < 1e-3 && rho > 1e-3) {
    return s_gamma_ * zeta * zeta / (2.0 * p_.N) *
           ((p_.N - 1.0) * f_.deriv(rho) / rho + f_.deriv2(rho));
  }
  return gamma_integral(rho, zeta, 0) - s_gamma_ * f_.value(rho);
}

// The kernel mass identity int P_s(.,t) = 1 is used in exact form: values and
// derivatives are assembled from the subtracted integrand
//   I(zeta) - S_gamma * (boundary value), which is O(zeta^2) at zeta -> 0,
// so the t -> 0 limit carries no cancellation.
void RadialExtension::eval(double rho, double t, double* val, double* d_rho, double* d_t) const {
  if (!(t > 0.0)) throw std::invalid_argument("RadialExtension: t must be > 0");
  ZetaGrid grid = build_zeta_grid(p_, rho, t, quad_);
  const double a = 0.5 * (p_.N + 2.0 * p_.s);
  const double C = p_.beta_ext * sphere_area(p_.N - 1);
  const double f0 = f_.value(rho);
  const double f1 = f_.deriv(rho);
  const double t2s = std::pow(t, 2.0 * p_.s);
  double acc_v = 0.0, acc_r = 0.0, acc_t = 0.0;
  for (std::size_t i = 0; i < grid.z.size(); ++i) {
    double z = grid.z[i];
    double den = z * z + t * t;
    double ker0 = std::pow(z, p_.N - 1.0) * std::pow(den, -a);
    if (ker0 == 0.0) continue;
    if (val || d_t) {
      double i0 = delta0(rho, z);
      if (val) acc_v += grid.w[i] * ker0 * i0;
      if (d_t) acc_t += grid.w[i] * ker0 * (2.0 * p_.s / t - (p_.N + 2.0 * p_.s) * t / den) * i0;
    }
    if (d_rho) {
      double i1 = gamma_integral(rho, z, 1) - s_gamma_ * f1;
      acc_r += grid.w[i] * ker0 * i1;
    }
  }
  if (val) *val = f0 + C * t2s * acc_v;
  if (d_rho) *d_rho = f1 + C * t2s * acc_r;
  if (d_t) *d_t = C * t2s * acc_t;
}

double RadialExtension::value(double rho, double t) const {
  double v;
  eval(rho, t, &v, nullptr, nullptr);
  return v;
}

void RadialExtension::grad(double rho, double t, double& d_rho, double& d_t) const {
  eval(rho, t, nullptr, &d_rho, &d_t);
}

L1Extension::L1Extension(const SpectralParams& p, const RadialProfile& g,
                         const QuadratureSpec& quad)
    : p_(p), g_(g), quad_(quad) {
  if (p.N != 3 && p.N != 4)
    throw std::invalid_argument("L1Extension: N must be 3 or 4");
  scale_ = 1 << std::max(0, quad.level);
  s_gamma_ = std::sqrt(M_PI) *
             std::exp(std::lgamma(0.5 * (p.N - 1.0)) - std::lgamma(0.5 * p.N));
}

// mode 0: g(R) A/R; mode 1: d/drho of the same, A = rho - zeta cos g
double L1Extension::gamma_integral(double rho, double zeta, int mode) const {
  if (rho * zeta < kDegenerate) {
    double R = std::sqrt(rho * rho + zeta * zeta);
    if (R == 0.0) return 0.0;
    double A_over_R = rho / R;
    if (mode == 0) return s_gamma_ * g_.value(R) * A_over_R;
    return s_gamma_ * (g_.deriv(R) * A_over_R * A_over_R +
                       g_.value(R) * (1.0 - A_over_R * A_over_R) / R);
  }
  ChordRule rule = build_chord_rule(p_.N, rho, zeta, scale_);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.R.size(); ++i) {
    double R = rule.R[i];
    double A = (R * R + rho * rho - zeta * zeta) / (2.0 * rho);
    double val;
    if (mode == 0) {
      val = g_.value(R) * A / R;
    } else {
      val = g_.deriv(R) * (A * A) / (R * R) + g_.value(R) * (R * R - A * A) / (R * R * R);
    }
    s += rule.w[i] * val;
  }
  return s;
}

void L1Extension::eval(double rho, double t, double* val, double* d_rho, double* d_t) const {
  if (!(t > 0.0)) throw std::invalid_argument("L1Extension: t must be > 0");
  ZetaGrid grid = build_zeta_grid(p_, rho, t, quad_);
  const double a = 0.5 * (p_.N + 2.0 * p_.s);
  const double C = p_.beta_ext * sphere_area(p_.N - 1);
  const double g0 = g_.value(rho);
  const double g1 = g_.deriv(rho);
  const double t2s = std::pow(t, 2.0 * p_.s);
  double acc_v = 0.0, acc_r = 0.0, acc_t = 0.0;
  for (std::size_t i = 0; i < grid.z.size(); ++i) {
    double z = grid.z[i];
    double den = z * z + t * t;
    double ker0 = std::pow(z, p_.N - 1.0) * std::pow(den, -a);
    if (ker0 == 0.0) continue;
    if (val || d_t) {
      double i0 = delta0(rho, z);
      if (val) acc_v += grid.w[i] * ker0 * i0;
      if (d_t) acc_t += grid.w[i] * ker0 * (2.0 * p_.s / t - (p_.N + 2.0 * p_.s) * t / den) * i0;
    }
    if (d_rho) {
      double i1 = gamma_integral(rho, z, 1) - s_gamma_ * g1;
      acc_r += grid.w[i] * ker0 * i1;
    }
  }
  if (val) *val = g0 + C * t2s * acc_v;
  if (d_rho) *d_rho = g1 + C * t2s * acc_r;
  if (d_t) *d_t = C * t2s * acc_t;
}

// l=1 analog of the subtracted integral: the A/R factor contributes the
// extra -(N-1) g/(2 rho^2 N) zeta^2 term
double L1Extension::delta0(double rho, double zeta) const {
  if (zeta < 1e-3 && rho > 1e-3) {
    return s_gamma_ * zeta * zeta / (2.0 * p_.N) *
           ((p_.N - 1.0) * g_.deriv(rho) / rho + g_.deriv2(rho) -
            (p_.N - 1.0) * g_.value(rho) / (rho * rho));
  }
  return gamma_integral(rho, zeta, 0) - s_gamma_ * g_.value(rho);
}

double L1Extension::value(double rho, double t) const {
  double v;
  eval(rho, t, &v, nullptr, nullptr);
  return v;
}

void L1Extension::grad(double rho, double t, double& d_rho, double& d_t) const {
  eval(rho, t, nullptr, &d_rho, &d_t);
}

double extension_value(const SpectralParams& p, const BubbleSpec& spec, const Point& y, double t,
                       const QuadratureSpec& quad) {
  if (!(t > 0.0)) throw std::invalid_argument("extension_value: t must be > 0");
  // unit frame: P_s[U_{x,L}](y,t) = L^{(N-2s)/2} P_s[U_{0,1}](L(y-x), Lt)
  Point d = y;
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] -= i < spec.center.size() ? spec.center[i] : 0.0;
  double rho = norm(d) * spec.lambda;
  double tt = t * spec.lambda;
  BubbleProfile prof(p, 1.0);

  auto eval = [&](int level) {
    QuadratureSpec q = quad;
    q.level = level;
    RadialExtension ext(p, prof, q);
    return ext.value(rho, tt);
  };
  double coarse = eval(quad.level);
  double fine = eval(quad.level + 1);
  double err = std::abs(fine - coarse);
  double scale = std::max(std::abs(fine), 1e-12);
  if (err > std::max(quad.rel_tol, 1e-12) * scale * 100.0 && err > 1e-10)
    throw NumericError("extension_value: quadrature not converged", fine, err);
  return std::pow(spec.lambda, 0.5 * p.tau()) * fine;
}

namespace {

// Richardson ladder on q(t_j), t_j = t0 2^{-j}, exponents {2-2s, 2, 4-2s, 4}.
double richardson_limit(const std::vector<double>& q, double s, double& err_estimate) {
  std::vector<double> col = q;
  const double expo[4] = {2.0 - 2.0 * s, 2.0, 4.0 - 2.0 * s, 4.0};
  double prev_last = col.back();
  for (int stage = 0; stage < 4 && col.size() > 1; ++stage) {
    double r = std::pow(2.0, -expo[stage]);
    std::vector<double> next(col.size() - 1);
    for (std::size_t j = 0; j + 1 < col.size(); ++j)
      next[j] = (col[j + 1] - r * col[j]) / (1.0 - r);
    prev_last = col.back();
    col = next;
  }
  err_estimate = std::abs(col.back() - prev_last);
  return col.back();
}

template <class Ext>
double trace_limit(const SpectralParams& p, const Ext& ext, double rho) {
  const double t0 = 0.5;
  std::vector<double> q;
  for (int j = 0; j <= 6; ++j) {
    double t = t0 * std::pow(2.0, -j);
    double dr, dt;
    ext.grad(rho, t, dr, dt);
    q.push_back(-std::pow(t, 1.0 - 2.0 * p.s) * dt);
  }
  double err;
  double lim = richardson_limit(q, p.s, err);
  double raw_span = std::abs(q.back() - q[q.size() - 2]);
  if (err > 10.0 * (raw_span + 1e-9) && err > 1e-6 * std::max(1.0, std::abs(lim)))
    throw NumericError("trace_derivative: Richardson ladder diverged", lim, err);
  return lim / p.kappa_trace();
}

}  // namespace

double trace_derivative_radial(const SpectralParams& p, const RadialProfile& f, double rho,
                               const QuadratureSpec& quad) {
  RadialExtension ext(p, f, quad);
  return trace_limit(p, ext, rho);
}

double trace_derivative_l1(const SpectralParams& p, const RadialProfile& g, double rho,
                           const QuadratureSpec& quad) {
  L1Extension ext(p, g, quad);
  return trace_limit(p, ext, rho);
}

double extension_trace_derivative(const SpectralParams& p, const BubbleSpec& spec, const Point& y,
                                  const QuadratureSpec& quad) {
  Point d = y;
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] -= i < spec.center.size() ? spec.center[i] : 0.0;
  double rho = norm(d) * spec.lambda;
  BubbleProfile prof(p, 1.0);
  double unit = trace_derivative_radial(p, prof, rho, quad);
  return std::pow(spec.lambda, 0.5 * (p.N + 2.0 * p.s)) * unit;
}

double hemisphere_gradient_ratio(const SpectralParams& p, const RadialProfile& f,
                                 const std::vector<std::pair<Point, double>>& samples,
                                 double delta, const QuadratureSpec& quad) {
  RadialExtension ext(p, f, quad);
  const double expo = p.tau() + 1.0;
  double worst = 0.0;
  for (const auto& [y, t] : samples) {
    double rho = norm(y);
    if (std::abs(rho * rho + t * t - delta * delta) > 1e-9 * delta * delta || !(t > 0.0))
      throw std::invalid_argument(
          "hemisphere_gradient_ratio: sample violates the half-sphere constraint");
    double dr, dt;
    ext.grad(rho, t, dr, dt);
    worst = std::max(worst, std::sqrt(dr * dr + dt * dt) * std::pow(1.0 + rho, expo));
  }
  return worst;
}

ResidualReport extension_gradient_bound_check(const SpectralParams& p, const BubbleSpec& spec,
                                              int samples_per_sphere, const QuadratureSpec& quad) {
  BubbleProfile prof(p, spec.lambda);
  RadialExtension ext(p, prof, quad);
  ResidualReport rep;
  rep.label = "extension_gradient_bound";
  const double deltas[4] = {1.0, 2.0, 4.0, 8.0};
  double expo = p.tau() + 1.0;
  for (double delta : deltas) {
    double worst = 0.0;
    for (int i = 0; i < samples_per_sphere; ++i) {
      double phi = 0.5 * M_PI * (i + 0.5) / samples_per_sphere;
      double rho = delta * std::cos(phi);
      double t = delta * std::sin(phi);
      double dr, dt;
      ext.grad(rho, t, dr, dt);
      double g = std::sqrt(dr * dr + dt * dt);
      worst = std::max(worst, g * std::pow(1.0 + rho, expo));
    }
    rep.details.push_back(worst);
  }
  double lo = *std::min_element(rep.details.begin(), rep.details.end());
  double hi = *std::max_element(rep.details.begin(), rep.details.end());
  rep.lhs = hi;
  rep.rhs = lo;
  rep.abs_residual = hi - lo;
  rep.rel_residual = lo > 0.0 ? hi / lo : 0.0;
  rep.scale = lo;
  rep.passed = lo > 0.0 && hi <= 4.0 * lo;
  return rep;
}

}  // namespace fracbubble
