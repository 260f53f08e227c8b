#include "fracbubble/bubble.hpp"

#include <cmath>

namespace fracbubble {

double bubble_value(const SpectralParams& p, const BubbleSpec& spec, const Point& y) {
  double r2 = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    double d = y[i] - (i < spec.center.size() ? spec.center[i] : 0.0);
    r2 += d * d;
  }
  double L = spec.lambda;
  return p.c_norm * std::pow(L / (1.0 + L * L * r2), 0.5 * p.tau());
}

double bubble_nonlinear_image(const SpectralParams& p, const BubbleSpec& spec, const Point& y) {
  return std::pow(bubble_value(p, spec, y), p.p_crit - 1.0);
}

double kernel_value(const SpectralParams& p, KernelIndex which, const Point& y) {
  if (which.index < 0 || which.index > p.N)
    throw std::out_of_range("kernel_value: index must be in 0..N");
  double rho2 = dot(y, y);
  const double a = 0.5 * p.tau();
  if (which.index == 0)
    return p.c_norm * a * (1.0 - rho2) * std::pow(1.0 + rho2, -a - 1.0);
  double yi = which.index <= static_cast<int>(y.size()) ? y[which.index - 1] : 0.0;
  return -2.0 * a * p.c_norm * yi * std::pow(1.0 + rho2, -a - 1.0);
}

double BubbleProfile::value(double rho) const {
  double L = lambda;
  return p.c_norm * std::pow(L / (1.0 + L * L * rho * rho), 0.5 * p.tau());
}

double BubbleProfile::deriv(double rho) const {
  double L = lambda;
  double a = 0.5 * p.tau();
  double den = 1.0 + L * L * rho * rho;
  return p.c_norm * std::pow(L, a) * (-a) * std::pow(den, -a - 1.0) * 2.0 * L * L * rho;
}

double BubbleProfile::deriv2(double rho) const {
  double L = lambda;
  double a = 0.5 * p.tau();
  double den = 1.0 + L * L * rho * rho;
  return -2.0 * a * p.c_norm * std::pow(L, a) * L * L * std::pow(den, -a - 2.0) *
         (den - 2.0 * (a + 1.0) * L * L * rho * rho);
}

double Z0Profile::value(double rho) const {
  double a = 0.5 * p.tau();
  double r2 = rho * rho;
  return p.c_norm * a * (1.0 - r2) * std::pow(1.0 + r2, -a - 1.0);
}

double Z0Profile::deriv(double rho) const {
  double a = 0.5 * p.tau();
  double r2 = rho * rho;
  // d/drho [ (1-r2)(1+r2)^{-a-1} ]
  return p.c_norm * a *
         (-2.0 * rho * std::pow(1.0 + r2, -a - 1.0) +
          (1.0 - r2) * (-a - 1.0) * std::pow(1.0 + r2, -a - 2.0) * 2.0 * rho);
}

double Z0Profile::deriv2(double rho) const {
  double a = 0.5 * p.tau();
  double r2 = rho * rho;
  // z' = -2 c a rho ((a+2) - a rho^2) (1+rho^2)^{-a-2}
  return -2.0 * p.c_norm * a * std::pow(1.0 + r2, -a - 3.0) *
         (((a + 2.0) - 3.0 * a * r2) * (1.0 + r2) -
          2.0 * (a + 2.0) * r2 * ((a + 2.0) - a * r2));
}

double ZiRadialFactor::value(double rho) const {
  double a = 0.5 * p.tau();
  return -2.0 * a * p.c_norm * rho * std::pow(1.0 + rho * rho, -a - 1.0);
}

double ZiRadialFactor::deriv(double rho) const {
  double a = 0.5 * p.tau();
  double r2 = rho * rho;
  return -2.0 * a * p.c_norm *
         (std::pow(1.0 + r2, -a - 1.0) + rho * (-a - 1.0) * std::pow(1.0 + r2, -a - 2.0) * 2.0 * rho);
}


double ZiRadialFactor::deriv2(double rho) const {
  double a = 0.5 * p.tau();
  double r2 = rho * rho;
  // g' = -2 a c (1 - (2a+1) rho^2) (1+rho^2)^{-a-2}
  return -2.0 * a * p.c_norm * rho * std::pow(1.0 + r2, -a - 3.0) *
         (-2.0 * (2.0 * a + 1.0) * (1.0 + r2) - 2.0 * (a + 2.0) * (1.0 - (2.0 * a + 1.0) * r2));
}

}  // namespace fracbubble
