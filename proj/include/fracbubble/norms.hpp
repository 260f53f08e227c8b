#pragma once

#include "fracbubble/configuration.hpp"
#include "fracbubble/potential.hpp"
#include "fracbubble/quadrature.hpp"
#include "fracbubble/report.hpp"

namespace fracbubble {

struct NormSpec {
  double tau;
  const CylinderConfig* cfg;

  static NormSpec make(const SpectralParams& p, double m, double tau, const CylinderConfig& cfg,
                       double epsilon = 0.1) {
    double t = p.tau();
    double lo = (t - m) / t;
    double hi = std::min(0.5 * (p.N + 2.0 * p.s) - 4.0 * p.s / t, 1.0 + epsilon);
    if (!(tau > lo && tau < hi))
      throw std::invalid_argument("NormSpec: tau outside the admissible interval");
    return NormSpec{tau, &cfg};
  }
};

struct SampledField {
  std::vector<Point> points;
  std::vector<double> values;
};

// Sample design: configuration points, midpoints between adjacent bubbles,
// and shells at radii {2, 10, 100} x bubble spacing about the first point.
std::vector<Point> build_sample_set(const CylinderConfig& cfg);

// max over samples of |u(y)| / sum_j [(1+|y-up_j|)^{-(N-2s)/2-tau}
//                                     + (1+|y-lo_j|)^{-(N-2s)/2-tau}]
double star_norm(const SpectralParams& p, const SampledField& field, const NormSpec& spec);

// same with the (N+2s)/2 + tau weight
double dstar_norm(const SpectralParams& p, const SampledField& field, const NormSpec& spec);

// the star weight itself, exposed so the weight function can be sampled
double star_weight(const SpectralParams& p, const NormSpec& spec, const Point& y);
double dstar_weight(const SpectralParams& p, const NormSpec& spec, const Point& y);

// Checks int |y-z|^{-(N-2s)} (1+|z|)^{-(2s+sigma)} dz <= C (1+|y|)^{-sigma}
// over sample radii; reports the max implied C and boundedness.
ResidualReport convolution_estimate_check(const SpectralParams& p, double sigma,
                                          const std::vector<double>& sample_radii,
                                          const QuadratureSpec& quad);

// Pointwise two-center product bound; reports the max implied constant.
ResidualReport pair_product_bound_check(const SpectralParams& p, const Point& xi, const Point& xj,
                                        double alpha, double beta, double sigma,
                                        const std::vector<Point>& sample_ys);

// First-order error term of the reduced problem, evaluated pointwise:
//   J1 = K(|y|/mu) (W^{p-1} - sum_b U_b^{p-1}),  J2 = (K(|y|/mu) - 1) sum_b U_b^{p-1}
double lk_J1(const SpectralParams& p, const CylinderConfig& cfg, const PotentialModel& pot,
             const Point& y);
double lk_J2(const SpectralParams& p, const CylinderConfig& cfg, const PotentialModel& pot,
             const Point& y);

}  // namespace fracbubble
