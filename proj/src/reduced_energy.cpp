#include "fracbubble/reduced_energy.hpp"

#include <cmath>

#include "fracbubble/bubble.hpp"

namespace fracbubble {

namespace {

// int_{R^N} |y_1|^q U_{0,1}^{2*_s} dy by separated radial and axial
// quadratures (angular |w1|^q moment times the radial power integral).
double weighted_bubble_mass(const SpectralParams& p, double q, const QuadratureSpec& quad) {
  // angular: |S^{N-2}| * 2 int_0^1 w^q (1-w^2)^{(N-3)/2} dw
  double ang;
  {
    auto g_mid = [&](double w) { return std::pow(w, q) * std::pow(1.0 - w * w, 0.5 * (p.N - 3.0)); };
    // absorb w^q at 0 and (1-w^2)^{(N-3)/2} at 1
    double left = power_weighted_end(
        [&](double w) { return std::pow(1.0 - w * w, 0.5 * (p.N - 3.0)); }, 0.5, q, 24);
    auto near1 = [&](double u) {  // u = 1-w
      double w = 1.0 - u;
      return std::pow(w, q) * std::pow(2.0 - u, 0.5 * (p.N - 3.0));
    };
    double right = power_weighted_end(near1, 0.5, 0.5 * (p.N - 3.0), 24);
    (void)g_mid;
    ang = sphere_area(p.N - 1) * 2.0 * (left + right);
  }
  // radial: int_0^inf rho^{N-1+q} (1+rho^2)^{-N} drho
  auto f = [&](double rho) {
    return std::pow(rho, p.N - 1.0 + q) * std::pow(1.0 + rho * rho, -static_cast<double>(p.N));
  };
  double rad = adaptive_integrate_to_inf(f, 0.0, quad.rel_tol, 1e-14, quad.max_adaptive_depth);
  return std::pow(p.c_norm, p.p_crit) * ang * rad;
}

double bubble_mass(const SpectralParams& p, const QuadratureSpec& quad) {
  auto f = [&](double rho) {
    return std::pow(rho, p.N - 1.0) * std::pow(1.0 + rho * rho, -static_cast<double>(p.N));
  };
  double rad = adaptive_integrate_to_inf(f, 0.0, quad.rel_tol, 1e-14, quad.max_adaptive_depth);
  return std::pow(p.c_norm, p.p_crit) * sphere_area(p.N) * rad;
}

double mu_power_p_exponent(double tau, double m) {
  return tau - (tau - m) / tau - (tau - m) * sqr(tau - 1.0) / (tau * (tau + 1.0));
}

double mu_power_q_exponent(double tau, double m) {
  return tau - (tau - m) / tau - tau * (tau - m) / (tau + 1.0);
}

}  // namespace

std::vector<ConstantsTable::Entry> ConstantsTable::provenance() const {
  return {
      {"A", A, "quadrature"},       {"A1", A1, "quadrature"}, {"A2", A2, "quadrature"},
      {"B0", B0, "quadrature"},     {"B1", B1, "closed-form"}, {"B2", B2, "closed-form"},
      {"B3", B3, "closed-form"},    {"B4", B4, "fitted"},      {"B5", B5, "fitted"},
      {"B6", B6, "fitted"},         {"B7", B7, "fitted"},
      {"D1_at_tau", D1_at_tau, "quadrature"},
  };
}

ConstantsTable compute_constants(const SpectralParams& p, const PotentialModel& pot,
                                 const QuadratureSpec& quad) {
  const double tau = p.tau();
  const double m = pot.m;
  if (!(m > 0.5 * tau && m < tau))
    throw std::invalid_argument("compute_constants: m out of ((N-2s)/2, N-2s)");

  ConstantsTable c;
  c.m = m;
  c.r0 = pot.r0;
  c.c0 = pot.c0;

  const double IU = bubble_mass(p, quad);
  const double Iy1m = weighted_bubble_mass(p, m, quad);
  const double Iy1m2 = weighted_bubble_mass(p, m - 2.0, quad);

  c.A = (1.0 - 2.0 / p.p_crit) * IU;
  c.A1 = (2.0 * pot.c0 / p.p_crit) * Iy1m;
  c.A2 = (pot.c0 * m * (m - 1.0) / p.p_crit) * Iy1m2;

  c.B0 = interaction_constant_B0(p, quad);
  c.D1_at_tau = d1_constant(tau, quad);
  c.B1 = c.B0 * riemann_zeta(tau) * std::pow(2.0, 1.0 - tau) / std::pow(M_PI, tau);
  c.B2 = c.B0 * c.D1_at_tau * std::pow(2.0, 1.0 - tau) / M_PI;

  // regrouped mu-power coefficients
  c.B3 = c.B1 / std::pow(pot.r0, tau);
  const double ch = std::pow(c.B1 * tau / (c.B2 * (tau - 1.0)), -1.0 / (tau + 1.0));
  c.B4 = c.B2 / std::pow(pot.r0, tau) * std::pow(ch, 1.0 - tau);
  c.B6 = 0.5 * tau * (tau - 1.0) * c.B4 + 0.5 * tau * c.B3 * ch * ch;

  const int kref = c.fit_k_ref;
  const double mu = mu_scaling(p, m, kref);
  const double h0 = solve_h0(p, c, kref);
  const double pp = mu_power_p_exponent(tau, m);
  {
    // residual of the interaction sum against the B3, B4 leading terms
    double t1 = c.B3 * std::pow(mu, -m) * std::pow(1.0 - h0 * h0, -0.5 * tau);
    double t2 = c.B2 / std::pow(pot.r0, tau) * kref * std::pow(mu, -tau) *
                std::pow(h0, 1.0 - tau) / std::sqrt(1.0 - h0 * h0);
    double resid = (t1 - c.B3 * std::pow(mu, -m)) + (t2 - c.B4 * std::pow(mu, -pp));
    const double eps = 0.1;
    c.B5 = std::pow(mu, m + eps) * resid;
  }
  {
    // slope of the h-gradient about h0 at the reference k
    const double qq = mu_power_q_exponent(tau, m);
    ReducedPoint pt{mu * pot.r0, h0, 1.0, kref};
    double step = h0 * 1e-5;
    ReducedPoint hi = pt, lo = pt;
    hi.h += step;
    lo.h -= step;
    double slope = (grad_h(hi, c, p) - grad_h(lo, c, p)) / (2.0 * step);
    c.B7 = -h0 * slope / kref * std::pow(mu, qq);
  }
  return c;
}

double energy_expansion_excess(const ReducedPoint& pt, const ConstantsTable& c,
                               const SpectralParams& p, const PotentialModel& pot) {
  if (!(pt.h > 0.0 && pt.h < 1.0))
    throw std::domain_error("energy_expansion: h must lie in (0,1)");
  const double tau = p.tau();
  const double mu = mu_scaling(p, c.m, pt.k);
  const double L = pt.lambda;
  const double sq = std::sqrt(1.0 - pt.h * pt.h);
  double val = c.A1 / (std::pow(L, c.m) * std::pow(mu, c.m)) +
               c.A2 * sqr(mu * pot.r0 - pt.r) / (std::pow(L, c.m - 2.0) * std::pow(mu, c.m)) -
               c.B1 * std::pow(static_cast<double>(pt.k), tau) /
                   (std::pow(L, tau) * std::pow(pt.r * sq, tau)) -
               c.B2 * pt.h * pt.k / (std::pow(L, tau) * std::pow(pt.r * pt.h, tau) * sq);
  return pt.k * val;
}

double energy_expansion(const ReducedPoint& pt, const ConstantsTable& c, const SpectralParams& p,
                        const PotentialModel& pot) {
  return pt.k * c.A + energy_expansion_excess(pt, c, p, pot);
}

double grad_lambda(const ReducedPoint& pt, const ConstantsTable& c, const SpectralParams& p) {
  if (!(pt.h > 0.0 && pt.h < 1.0)) throw std::domain_error("grad_lambda: h must lie in (0,1)");
  const double tau = p.tau();
  const double mu = mu_scaling(p, c.m, pt.k);
  const double L = pt.lambda;
  const double sq = std::sqrt(1.0 - pt.h * pt.h);
  double val = -c.m * c.A1 / (std::pow(L, c.m + 1.0) * std::pow(mu, c.m)) -
               c.A2 * (c.m - 2.0) * sqr(mu * c.r0 - pt.r) /
                   (std::pow(L, c.m - 1.0) * std::pow(mu, c.m)) +
               c.B1 * tau * std::pow(static_cast<double>(pt.k), tau) /
                   (std::pow(L, tau + 1.0) * std::pow(pt.r * sq, tau)) +
               c.B2 * tau * pt.h * pt.k / (std::pow(L, tau + 1.0) * std::pow(pt.r * pt.h, tau) * sq);
  return pt.k * val;
}

double grad_h(const ReducedPoint& pt, const ConstantsTable& c, const SpectralParams& p) {
  if (!(pt.h > 0.0 && pt.h < 1.0)) throw std::domain_error("grad_h: h must lie in (0,1)");
  const double tau = p.tau();
  const double L = pt.lambda;
  const double h = pt.h;
  const double sq = std::sqrt(1.0 - h * h);
  double val = c.B2 * (tau - 1.0) * pt.k /
                   (std::pow(L, tau) * std::pow(pt.r, tau) * std::pow(h, tau) * sq) -
               c.B1 * tau * std::pow(static_cast<double>(pt.k), tau) * h /
                   (std::pow(L, tau) * std::pow(pt.r, tau) * std::pow(sq, tau + 2.0));
  return pt.k * val;
}

double grad_h_dropped_term(const ReducedPoint& pt, const ConstantsTable& c,
                           const SpectralParams& p) {
  const double tau = p.tau();
  const double sq = std::sqrt(1.0 - pt.h * pt.h);
  return -pt.k * c.B2 * pt.k /
         (std::pow(pt.lambda, tau) * std::pow(pt.r, tau) * std::pow(pt.h, tau - 2.0) *
          sq * sq * sq);
}

double solve_h0(const SpectralParams& p, const ConstantsTable& c, int k) {
  if (k < 2) throw std::invalid_argument("solve_h0: k must be >= 2");
  const double tau = p.tau();
  double ratio = c.B1 * tau * std::pow(static_cast<double>(k), tau - 1.0) / (c.B2 * (tau - 1.0));
  double h0 = 1.0 / std::sqrt(1.0 + std::pow(ratio, 2.0 / (tau + 1.0)));
  // numerator of the h-equation must vanish at the root
  double t1 = c.B2 * (tau - 1.0) * k * std::pow(std::sqrt(1.0 - h0 * h0), tau + 1.0);
  double t2 = c.B1 * tau * std::pow(static_cast<double>(k), tau) * std::pow(h0, tau + 1.0);
  if (std::abs(t1 - t2) > 1e-12 * (std::abs(t1) + std::abs(t2)))
    throw NumericError("solve_h0: root does not zero the gradient numerator", h0,
                       std::abs(t1 - t2));
  return h0;
}

double solve_lambda0(const SpectralParams& p, const ConstantsTable& c, int k, double r,
                     double h0) {
  if (!(r > 0.0 && h0 > 0.0 && h0 < 1.0))
    throw std::invalid_argument("solve_lambda0: inputs must be positive, h0 in (0,1)");
  const double tau = p.tau();
  const double mu = mu_scaling(p, c.m, k);
  const double sq = std::sqrt(1.0 - h0 * h0);
  double bracket = c.B1 * tau * std::pow(static_cast<double>(k), tau) / std::pow(sq, tau) +
                   c.B2 * tau * k / (std::pow(h0, tau - 1.0) * sq);
  double lam = std::pow(std::pow(mu, c.m) * bracket / (c.m * c.A1 * std::pow(r, tau)),
                        1.0 / (tau - c.m));
  // residual of the defining equation
  double e1 = -c.m * c.A1 / (std::pow(lam, c.m + 1.0) * std::pow(mu, c.m));
  double e2 = c.B1 * tau * std::pow(static_cast<double>(k), tau) /
              (std::pow(lam, tau + 1.0) * std::pow(r * sq, tau));
  double e3 = c.B2 * tau * h0 * k /
              (std::pow(lam, tau + 1.0) * std::pow(r * h0, tau) * sq);
  double resid = e1 + e2 + e3;
  double scale = std::abs(e1) + std::abs(e2) + std::abs(e3);
  if (std::abs(resid) > 1e-10 * scale)
    throw NumericError("solve_lambda0: root does not zero the defining equation", lam,
                       std::abs(resid) / scale);
  return lam;
}

double single_bubble_energy(const SpectralParams& p, const QuadratureSpec& quad) {
  return (0.5 - 1.0 / p.p_crit) * bubble_mass(p, quad);
}

namespace {

// Mapped 1-D grid for the cell quadrature: panels resolving a bubble of
// width ~1/lambda at `center`, plus algebraic tails.
struct Axis {
  std::vector<double> x, w;
};

Axis axis_about(double center, double width, double lo, bool to_inf, double hi, int scale) {
  Axis ax;
  const int order = 8;
  const GaussLegendre& gl = gauss_legendre(order);
  auto add_panels = [&](const std::vector<double>& breaks) {
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      double mid = 0.5 * (breaks[i] + breaks[i + 1]), half = 0.5 * (breaks[i + 1] - breaks[i]);
      if (half <= 0.0) continue;
      for (int j = 0; j < order; ++j) {
        ax.x.push_back(mid + half * gl.x[j]);
        ax.w.push_back(half * gl.w[j]);
      }
    }
  };
  double dense_lo = std::max(lo, center - 24.0 * width);
  double dense_hi = center + 24.0 * width;
  // left of the bubble
  if (dense_lo > lo) {
    auto br = graded_breaks(0.0, dense_lo - lo, 4 * scale, 2.0);
    for (auto& b : br) b = dense_lo - b;
    std::reverse(br.begin(), br.end());
    add_panels(br);
  }
  // bubble core
  {
    auto br = uniform_breaks(dense_lo, dense_hi, 12 * scale);
    add_panels(br);
  }
  if (to_inf) {
    // tail: x = dense_hi / u, u in (0,1], graded toward u = 0
    const int tail_panels = 4 * scale;
    auto br = graded_breaks(0.0, 1.0, tail_panels, 2.0);
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
      double a = std::max(br[i], 1e-7), b = br[i + 1];
      double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int j = 0; j < order; ++j) {
        double u = mid + half * gl.x[j];
        ax.x.push_back(dense_hi / u);
        ax.w.push_back(half * gl.w[j] * dense_hi / (u * u));
      }
    }
  } else if (hi > dense_hi) {
    auto br = graded_breaks(dense_hi, hi, 4 * scale, 1.0);
    add_panels(br);
  }
  return ax;
}

}  // namespace

double energy_direct(const CylinderConfig& cfg, const PotentialModel& pot,
                     const SpectralParams& p, const QuadratureSpec& quad, double wedge_offset) {
  if (cfg.k > 8) throw std::invalid_argument("energy_direct: k must be <= 8");
  if (p.N != 3 && p.N != 4) throw std::invalid_argument("energy_direct: N must be 3 or 4");
  if (!(cfg.h > 0.0)) throw std::invalid_argument("energy_direct: h must be > 0");

  const int k = cfg.k;
  const double L = cfg.lambda;

  // gradient term: sum_{i,j} int U_i^{p-1} U_j via pairwise integrals
  QuadratureSpec pq = quad;
  pq.rel_tol = std::min(quad.rel_tol, 1e-9);
  double self = pairwise_interaction(p, 0.0, pq);
  double cross = 0.0;
  for (int j = 2; j <= k; ++j) cross += pairwise_interaction(p, L * same_circle_distance(cfg, j), pq);
  for (int j = 1; j <= k; ++j)
    cross += pairwise_interaction(p, L * cross_circle_distance(cfg, j), pq);
  double grad_term = 2.0 * k * (self + cross);

  // potential term: int K |W|^p = 2k [ int U^p + int_cell (|W|^p - sum U_b^p)
  //                                   + int_cell (K-1) |W|^p ]
  const int scale = 1 << std::max(0, quad.level);
  const double ring = cfg.r * std::sqrt(1.0 - cfg.h * cfg.h);
  const double width = 1.0 / L;

  Axis rho_ax = axis_about(ring, width, 0.0, true, 0.0, scale);
  Axis y3_ax = axis_about(cfg.r * cfg.h, width, 0.0, true, 0.0, scale);
  Axis y4_ax;
  if (p.N == 4) y4_ax = axis_about(0.0, width, 0.0, true, 0.0, scale);

  // theta grid on [offset - pi/k, offset + pi/k], graded toward 0 where the
  // cell's own bubble sits
  Axis th_ax;
  {
    const int order = 8;
    const GaussLegendre& gl = gauss_legendre(order);
    auto side = [&](double a, double b) {
      auto br = graded_breaks(0.0, std::abs(b - a), 6 * scale, 2.5);
      double sgn = b > a ? 1.0 : -1.0;
      for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        double mid = a + sgn * 0.5 * (br[i] + br[i + 1]);
        double half = 0.5 * (br[i + 1] - br[i]);
        for (int j = 0; j < order; ++j) {
          th_ax.x.push_back(mid + sgn * half * gl.x[j]);
          th_ax.w.push_back(half * gl.w[j]);
        }
      }
    };
    side(0.0, wedge_offset + M_PI / k);
    side(0.0, wedge_offset - M_PI / k);
  }

  const double pc = p.p_crit;
  auto wsum = [&](const Point& y) {
    double W = 0.0, Up = 0.0;
    auto add = [&](const Point& x) {
      double r2 = 0.0;
      for (int i = 0; i < p.N; ++i) r2 += sqr(y[i] - x[i]);
      double u = p.c_norm * std::pow(L / (1.0 + L * L * r2), 0.5 * p.tau());
      W += u;
      Up += std::pow(u, pc);
    };
    for (const auto& x : cfg.upper_points) add(x);
    for (const auto& x : cfg.lower_points) add(x);
    return std::pair<double, double>(W, Up);
  };

  double corr = 0.0, pot_corr = 0.0;
  Point y(p.N, 0.0);
  const double mu = cfg.mu;
  std::size_t n4 = p.N == 4 ? y4_ax.x.size() : 1;
  for (std::size_t ir = 0; ir < rho_ax.x.size(); ++ir) {
    double rho = rho_ax.x[ir];
    for (std::size_t it = 0; it < th_ax.x.size(); ++it) {
      double c1 = std::cos(th_ax.x[it]), s1 = std::sin(th_ax.x[it]);
      for (std::size_t i3 = 0; i3 < y3_ax.x.size(); ++i3) {
        for (std::size_t i4 = 0; i4 < n4; ++i4) {
          y[0] = rho * c1;
          y[1] = rho * s1;
          y[2] = y3_ax.x[i3];
          double wmeas = rho_ax.w[ir] * th_ax.w[it] * y3_ax.w[i3] * rho;
          double mult = 1.0;
          if (p.N == 4) {
            y[3] = y4_ax.x[i4];
            wmeas *= y4_ax.w[i4];
            mult = 2.0;  // evenness in y4
          }
          auto [W, Up] = wsum(y);
          double Wp = std::pow(W, pc);
          corr += wmeas * mult * (Wp - Up);
          if (!pot.is_flat()) {
            double rad = std::sqrt(dot(y, y));
            pot_corr += wmeas * mult * (pot.value(rad / mu) - 1.0) * Wp;
          }
        }
      }
    }
  }

  double pot_term = 2.0 * k * (self + corr + pot_corr);
  return 0.5 * grad_term - pot_term / pc;
}

}  // namespace fracbubble
