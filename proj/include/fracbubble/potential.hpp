#pragma once

#include <cmath>
#include <stdexcept>

#include "fracbubble/spectral.hpp"

namespace fracbubble {

// Radial potential with a local maximum at r0, K(r0) = 1:
//   K(r) = 1 - c0 * cutoff(|r-r0|/delta) * |r-r0|^m     near r0,
// where cutoff is a C^2 smoothstep equal to 1 on [0,1/2] and 0 beyond 1,
// floored at kFloor to keep K bounded and positive for any c0.
struct PotentialModel {
  double r0 = 1.0;
  double c0 = 1.0;
  double m = 0.0;       // in ((N-2s)/2, N-2s)
  double theta_k = 0.5; // remainder exponent (metadata; the profile is exact)
  double delta = 0.5;

  static constexpr double kFloor = 0.05;

  static PotentialModel make(const SpectralParams& p, double r0, double c0, double m,
                             double delta) {
    double tau = p.tau();
    if (!(m > 0.5 * tau && m < tau))
      throw std::invalid_argument("PotentialModel: m must lie in ((N-2s)/2, N-2s)");
    if (!(r0 > 0.0) || !(c0 >= 0.0) || !(delta > 0.0))
      throw std::invalid_argument("PotentialModel: r0, delta must be > 0 and c0 >= 0");
    PotentialModel k;
    k.r0 = r0;
    k.c0 = c0;
    k.m = m;
    k.delta = delta;
    return k;
  }

  // Default midpoint exponent m = 3(N-2s)/4.
  static PotentialModel defaults(const SpectralParams& p) {
    return make(p, 1.0, 1.0, 0.75 * p.tau(), 0.5);
  }

  // K identically 1 (c0 = 0); m kept at the admissible midpoint.
  static PotentialModel flat(const SpectralParams& p) {
    return make(p, 1.0, 0.0, 0.75 * p.tau(), 0.5);
  }

  static double smoothstep_down(double t) {
    // 1 -> 0 over [0,1], C^2 at both ends
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    double q = t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
    return 1.0 - q;
  }

  static double smoothstep_down_deriv(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return -(30.0 * t * t - 60.0 * t * t * t + 30.0 * t * t * t * t);
  }

  double cutoff(double x) const { return smoothstep_down(2.0 * x / delta - 1.0); }
  double cutoff_deriv(double x) const {
    return smoothstep_down_deriv(2.0 * x / delta - 1.0) * 2.0 / delta;
  }

  double value(double r) const {
    double x = std::abs(r - r0);
    if (x >= delta) return 1.0;
    double raw = 1.0 - c0 * cutoff(x) * std::pow(x, m);
    return raw < kFloor ? kFloor : raw;
  }

  // dK/dr (zero wherever the floor is active)
  double deriv(double r) const {
    double x = std::abs(r - r0);
    if (x >= delta || x == 0.0) return 0.0;
    double raw = 1.0 - c0 * cutoff(x) * std::pow(x, m);
    if (raw < kFloor) return 0.0;
    double sign = r >= r0 ? 1.0 : -1.0;
    double d = -c0 * (cutoff_deriv(x) * std::pow(x, m) + cutoff(x) * m * std::pow(x, m - 1.0));
    return sign * d;
  }

  bool is_flat() const { return c0 == 0.0; }
};

}  // namespace fracbubble
