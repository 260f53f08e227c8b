#include "fracbubble/configuration.hpp"

#include <cmath>
#include <sstream>

#include "fracbubble/bubble.hpp"
#include "fracbubble/csv.hpp"

namespace fracbubble {

double mu_scaling(const SpectralParams& p, double m, int k) {
  double tau = p.tau();
  return std::pow(static_cast<double>(k), tau / (tau - m));
}

CylinderConfig build_cylinder_config(const SpectralParams& p, double m, int k, double r, double h,
                                     double lambda) {
  if (k < 2) throw std::invalid_argument("build_cylinder_config: k must be >= 2");
  if (!(r > 0.0)) throw std::invalid_argument("build_cylinder_config: r must be > 0");
  if (!(h >= 0.0 && h < 1.0))
    throw std::domain_error("build_cylinder_config: h must lie in [0,1)");
  if (!(lambda > 0.0)) throw std::invalid_argument("build_cylinder_config: lambda must be > 0");
  CylinderConfig cfg;
  cfg.N = p.N;
  cfg.k = k;
  cfg.r = r;
  cfg.h = h;
  cfg.lambda = lambda;
  cfg.mu = mu_scaling(p, m, k);
  const double ring = r * std::sqrt(1.0 - h * h);
  for (int j = 0; j < k; ++j) {
    double ang = 2.0 * M_PI * j / k;
    Point up(p.N, 0.0), lo(p.N, 0.0);
    up[0] = ring * std::cos(ang);
    up[1] = ring * std::sin(ang);
    up[2] = r * h;
    lo[0] = up[0];
    lo[1] = up[1];
    lo[2] = -r * h;
    cfg.upper_points.push_back(std::move(up));
    cfg.lower_points.push_back(std::move(lo));
  }
  return cfg;
}

double same_circle_distance(const CylinderConfig& cfg, int j) {
  if (j < 2 || j > cfg.k) throw std::out_of_range("same_circle_distance: j must be in 2..k");
  return 2.0 * cfg.r * std::sqrt(1.0 - cfg.h * cfg.h) * std::sin((j - 1) * M_PI / cfg.k);
}

double cross_circle_distance(const CylinderConfig& cfg, int j) {
  if (j < 1 || j > cfg.k) throw std::out_of_range("cross_circle_distance: j must be in 1..k");
  double s = std::sin((j - 1) * M_PI / cfg.k);
  return 2.0 * cfg.r * std::sqrt((1.0 - cfg.h * cfg.h) * s * s + cfg.h * cfg.h);
}

ParameterBox ParameterBox::make(double mu, double r0, double h0, double lam0, double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("ParameterBox: theta must be > 0");
  ParameterBox b;
  b.theta_box = theta;
  double wr = std::pow(mu, -theta);
  double wh = std::pow(mu, -theta);
  double wl = std::pow(mu, -1.5 * theta);
  b.r_lo = mu * r0 - wr;
  b.r_hi = mu * r0 + wr;
  b.h_lo = h0 - wh;
  b.h_hi = h0 + wh;
  b.lam_lo = lam0 - wl;
  b.lam_hi = lam0 + wl;
  return b;
}

std::vector<Point> symmetry_images(const CylinderConfig& cfg, const Point& y) {
  std::vector<Point> images;
  // rotation by 2pi/k in the (y1,y2) plane
  {
    Point im = y;
    double c = std::cos(2.0 * M_PI / cfg.k), s = std::sin(2.0 * M_PI / cfg.k);
    im[0] = c * y[0] - s * y[1];
    im[1] = s * y[0] + c * y[1];
    images.push_back(im);
  }
  // evenness in y2
  {
    Point im = y;
    im[1] = -im[1];
    images.push_back(im);
  }
  // reflection in y3
  {
    Point im = y;
    im[2] = -im[2];
    images.push_back(im);
  }
  // evenness in y4..yN
  for (int l = 3; l < cfg.N; ++l) {
    Point im = y;
    im[l] = -im[l];
    images.push_back(im);
  }
  return images;
}

double symmetry_residual(const CylinderConfig& cfg,
                         const std::vector<std::pair<Point, double>>& field_samples) {
  auto lookup = [&](const Point& q) -> double {
    for (const auto& kv : field_samples) {
      if (dist(kv.first, q) < 1e-9) return kv.second;
    }
    throw std::invalid_argument("symmetry_residual: sample set is not closed under the group");
  };
  double worst = 0.0;
  for (const auto& kv : field_samples) {
    for (const Point& im : symmetry_images(cfg, kv.first)) {
      double v = lookup(im);
      worst = std::max(worst, std::abs(v - kv.second));
    }
  }
  return worst;
}

double symmetric_sum_value(const SpectralParams& p, const CylinderConfig& cfg, const Point& y) {
  double s = 0.0;
  for (const Point& x : cfg.upper_points)
    s += bubble_value(p, BubbleSpec{x, cfg.lambda}, y);
  for (const Point& x : cfg.lower_points)
    s += bubble_value(p, BubbleSpec{x, cfg.lambda}, y);
  return s;
}

std::string config_to_csv(const CylinderConfig& cfg) {
  CsvWriter csv;
  std::vector<std::string> header = {"circle", "index"};
  for (int i = 1; i <= cfg.N; ++i) header.push_back("y" + std::to_string(i));
  csv.row(header);
  for (int j = 0; j < cfg.k; ++j) {
    std::vector<std::string> row = {"upper", std::to_string(j + 1)};
    for (double c : cfg.upper_points[j]) row.push_back(CsvWriter::num(c));
    csv.row(row);
  }
  for (int j = 0; j < cfg.k; ++j) {
    std::vector<std::string> row = {"lower", std::to_string(j + 1)};
    for (double c : cfg.lower_points[j]) row.push_back(CsvWriter::num(c));
    csv.row(row);
  }
  return csv.str();
}

}  // namespace fracbubble
