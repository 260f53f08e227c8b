#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracbubble/spectral.hpp"

namespace fracbubble {

// 2k points on the upper/lower circles of an oblate cylinder:
//   upper_j = r ( sqrt(1-h^2) cos(2(j-1)pi/k), sqrt(1-h^2) sin(2(j-1)pi/k),  h, 0, ... )
//   lower_j = mirror through {y_3 = 0}
struct CylinderConfig {
  int N = 3;
  int k = 2;
  double r = 1.0;
  double h = 0.5;       // relative height, in [0,1); h = 0 admitted for limits
  double lambda = 1.0;
  double mu = 1.0;      // k^{(N-2s)/(N-2s-m)}
  std::vector<Point> upper_points;
  std::vector<Point> lower_points;
};

double mu_scaling(const SpectralParams& p, double m, int k);

CylinderConfig build_cylinder_config(const SpectralParams& p, double m, int k, double r, double h,
                                     double lambda);

// |upper_1 - upper_j| = 2 r sqrt(1-h^2) sin((j-1)pi/k), 2 <= j <= k
double same_circle_distance(const CylinderConfig& cfg, int j);

// |upper_1 - lower_j| = 2 r sqrt((1-h^2) sin^2((j-1)pi/k) + h^2), 1 <= j <= k
double cross_circle_distance(const CylinderConfig& cfg, int j);

// Box D of admissible (r, h, Lambda) around (mu r0, h0, Lambda0).
struct ParameterBox {
  double r_lo, r_hi;
  double h_lo, h_hi;
  double lam_lo, lam_hi;
  double theta_box;
  static ParameterBox make(double mu, double r0, double h0, double lam0, double theta);
  bool contains(double r, double h, double lam) const {
    return r >= r_lo && r <= r_hi && h >= h_lo && h <= h_hi && lam >= lam_lo && lam <= lam_hi;
  }
};

// Max discrepancy of a sampled field over the orbits of the symmetry group
// (rotation by 2pi/k, sign flips in y_2 and y_4..y_N, reflection in y_3).
// Samples must contain every orbit image of every sample point.
double symmetry_residual(const CylinderConfig& cfg,
                         const std::vector<std::pair<Point, double>>& field_samples);

// Orbit images of a point under the group generators (for sample building).
std::vector<Point> symmetry_images(const CylinderConfig& cfg, const Point& y);

// W_{r,h,Lambda}(y): the 2k-bubble sum.
double symmetric_sum_value(const SpectralParams& p, const CylinderConfig& cfg, const Point& y);

// CSV: one point per row: circle tag, index, N coordinates.
std::string config_to_csv(const CylinderConfig& cfg);

}  // namespace fracbubble
