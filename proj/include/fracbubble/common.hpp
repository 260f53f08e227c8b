#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracbubble {

using Point = std::vector<double>;

// Thrown when a quadrature or extrapolation cannot meet its budget.
// Carries the best estimate obtained and a bound on its error.
class NumericError : public std::runtime_error {
public:
  NumericError(const std::string& what, double estimate, double bound)
      : std::runtime_error(what), best_estimate(estimate), error_bound(bound) {}
  double best_estimate;
  double error_bound;
};

inline double sqr(double x) { return x * x; }

// |S^{n-1}|, surface area of the unit sphere in R^n
inline double sphere_area(int n) {
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

// B(a,b) through lgamma, stable for moderate arguments
inline double beta_function(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

// int_0^inf rho^a (1+rho^2)^{-b} drho = (1/2) B((a+1)/2, b-(a+1)/2), b > (a+1)/2
inline double radial_power_integral(double a, double b) {
  return 0.5 * beta_function(0.5 * (a + 1.0), b - 0.5 * (a + 1.0));
}

// int_{S^{n-1}} |w_1|^a dw = 2 pi^{(n-1)/2} Gamma((a+1)/2) / Gamma((n+a)/2), a > -1
inline double sphere_abs_moment(int n, double a) {
  return 2.0 * std::pow(M_PI, 0.5 * (n - 1)) *
         std::exp(std::lgamma(0.5 * (a + 1.0)) - std::lgamma(0.5 * (n + a)));
}

inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }

inline double dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += sqr(a[i] - b[i]);
  return std::sqrt(s);
}

// Riemann zeta for tau > 1 by Euler-Maclaurin; ~1e-14 accurate for tau >= 1.05.
double riemann_zeta(double tau);

}  // namespace fracbubble
