#include "fracbubble/norms.hpp"

#include <cmath>

#include "fracbubble/bubble.hpp"
#include "fracbubble/extension.hpp"

namespace fracbubble {

namespace {

double weight_sum(const SpectralParams& p, const NormSpec& spec, const Point& y, double expo) {
  double s = 0.0;
  for (const Point& x : spec.cfg->upper_points) s += std::pow(1.0 + dist(y, x), -expo);
  for (const Point& x : spec.cfg->lower_points) s += std::pow(1.0 + dist(y, x), -expo);
  return s;
}

double sampled_sup(const SpectralParams& p, const SampledField& field, const NormSpec& spec,
                   double expo) {
  if (field.points.empty() || field.points.size() != field.values.size())
    throw std::invalid_argument("norm: sample set empty or mismatched");
  double best = 0.0;
  for (std::size_t i = 0; i < field.points.size(); ++i) {
    double w = weight_sum(p, spec, field.points[i], expo);
    best = std::max(best, std::abs(field.values[i]) / w);
  }
  return best;
}

}  // namespace

std::vector<Point> build_sample_set(const CylinderConfig& cfg) {
  std::vector<Point> pts;
  for (const auto& x : cfg.upper_points) pts.push_back(x);
  for (const auto& x : cfg.lower_points) pts.push_back(x);
  // midpoints between adjacent same-circle bubbles and the vertical pair
  for (int j = 0; j < cfg.k; ++j) {
    const Point& a = cfg.upper_points[j];
    const Point& b = cfg.upper_points[(j + 1) % cfg.k];
    Point mid(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mid[i] = 0.5 * (a[i] + b[i]);
    pts.push_back(mid);
    Point vmid = cfg.upper_points[j];
    vmid[2] = 0.0;
    pts.push_back(vmid);
  }
  // shells about the first bubble at multiples of the bubble spacing
  double spacing = cfg.k >= 2 ? same_circle_distance(cfg, 2) : 1.0;
  const double shells[3] = {2.0, 10.0, 100.0};
  const Point& x1 = cfg.upper_points[0];
  for (double mul : shells) {
    for (int dir = 0; dir < 2 * cfg.N; ++dir) {
      Point y = x1;
      int axis = dir / 2;
      double sgn = dir % 2 ? -1.0 : 1.0;
      y[axis] += sgn * mul * spacing;
      pts.push_back(y);
    }
  }
  Point origin(cfg.N, 0.0);
  pts.push_back(origin);
  return pts;
}

double star_weight(const SpectralParams& p, const NormSpec& spec, const Point& y) {
  return weight_sum(p, spec, y, 0.5 * p.tau() + spec.tau);
}

double dstar_weight(const SpectralParams& p, const NormSpec& spec, const Point& y) {
  return weight_sum(p, spec, y, 0.5 * (p.N + 2.0 * p.s) + spec.tau);
}

double star_norm(const SpectralParams& p, const SampledField& field, const NormSpec& spec) {
  return sampled_sup(p, field, spec, 0.5 * p.tau() + spec.tau);
}

double dstar_norm(const SpectralParams& p, const SampledField& field, const NormSpec& spec) {
  return sampled_sup(p, field, spec, 0.5 * (p.N + 2.0 * p.s) + spec.tau);
}

ResidualReport convolution_estimate_check(const SpectralParams& p, double sigma,
                                          const std::vector<double>& sample_radii,
                                          const QuadratureSpec& quad) {
  if (!(sigma > 0.0 && sigma < p.tau()))
    throw std::invalid_argument("convolution_estimate_check: sigma must lie in (0, N-2s)");
  ResidualReport rep;
  rep.label = "convolution_estimate";
  const double expo = 2.0 * p.s + sigma;
  for (double rho : sample_radii) {
    // polar about y: |S^{N-2}| int_0^inf r^{2s-1} int_0^pi sin^{N-2}(g)
    //   (1+sqrt(rho^2+r^2-2 rho r cos g))^{-(2s+sigma)} dg dr
    GammaRule rule = build_gamma_rule(p.N, 6, 10);
    auto radial = [&](double r) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.g.size(); ++i) {
        double zr = std::sqrt(std::max(0.0, rho * rho + r * r -
                                                2.0 * rho * r * std::cos(rule.g[i])));
        s += rule.wg[i] * std::pow(1.0 + zr, -expo);
      }
      return s;
    };
    // absorb r^{2s-1} on [0,1], then adaptive to infinity
    double core = power_weighted_end(radial, 1.0, 2.0 * p.s - 1.0, 32);
    auto tail_f = [&](double r) { return std::pow(r, 2.0 * p.s - 1.0) * radial(r); };
    double tail = adaptive_integrate_to_inf(tail_f, 1.0, quad.rel_tol, 1e-14,
                                            quad.max_adaptive_depth);
    double integral = sphere_area(p.N - 1) * (core + tail);
    rep.details.push_back(integral * std::pow(1.0 + rho, sigma));
  }
  double lo = rep.details[0], hi = rep.details[0];
  for (double v : rep.details) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  rep.lhs = hi;
  rep.rhs = lo;
  rep.scale = lo;
  rep.abs_residual = hi - lo;
  rep.rel_residual = lo > 0.0 ? hi / lo : 0.0;
  rep.passed = lo > 0.0 && hi <= 4.0 * lo;
  return rep;
}

ResidualReport pair_product_bound_check(const SpectralParams& p, const Point& xi, const Point& xj,
                                        double alpha, double beta, double sigma,
                                        const std::vector<Point>& sample_ys) {
  if (!(alpha >= 1.0 && beta >= 1.0))
    throw std::invalid_argument("pair_product_bound_check: alpha, beta must be >= 1");
  if (!(sigma > 0.0 && sigma <= std::min(alpha, beta)))
    throw std::invalid_argument("pair_product_bound_check: requires 0 < sigma <= min(alpha,beta)");
  ResidualReport rep;
  rep.label = "pair_product_bound";
  double dij = dist(xi, xj);
  double worst = 0.0;
  for (const Point& y : sample_ys) {
    double g = std::pow(1.0 + dist(y, xi), -alpha) * std::pow(1.0 + dist(y, xj), -beta);
    double env = std::pow(1.0 + dist(y, xi), -(alpha + beta - sigma)) +
                 std::pow(1.0 + dist(y, xj), -(alpha + beta - sigma));
    double implied = g * std::pow(dij, sigma) / env;
    worst = std::max(worst, implied);
    rep.details.push_back(implied);
  }
  rep.lhs = worst;
  rep.rhs = 0.0;
  rep.scale = 1.0;
  rep.abs_residual = worst;
  rep.rel_residual = worst;
  rep.passed = std::isfinite(worst);
  return rep;
}

double lk_J1(const SpectralParams& p, const CylinderConfig& cfg, const PotentialModel& pot,
             const Point& y) {
  double W = 0.0, Upm1 = 0.0;
  const double pm1 = p.p_crit - 1.0;
  auto add = [&](const Point& x) {
    double u = bubble_value(p, BubbleSpec{x, cfg.lambda}, y);
    W += u;
    Upm1 += std::pow(u, pm1);
  };
  for (const auto& x : cfg.upper_points) add(x);
  for (const auto& x : cfg.lower_points) add(x);
  double K = pot.value(norm(y) / cfg.mu);
  return K * (std::pow(W, pm1) - Upm1);
}

double lk_J2(const SpectralParams& p, const CylinderConfig& cfg, const PotentialModel& pot,
             const Point& y) {
  double Upm1 = 0.0;
  const double pm1 = p.p_crit - 1.0;
  for (const auto& x : cfg.upper_points)
    Upm1 += std::pow(bubble_value(p, BubbleSpec{x, cfg.lambda}, y), pm1);
  for (const auto& x : cfg.lower_points)
    Upm1 += std::pow(bubble_value(p, BubbleSpec{x, cfg.lambda}, y), pm1);
  double K = pot.value(norm(y) / cfg.mu);
  return (K - 1.0) * Upm1;
}

}  // namespace fracbubble
