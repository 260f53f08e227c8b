#pragma once

#include <functional>
#include <vector>

#include "fracbubble/common.hpp"

namespace fracbubble {

// Quadrature budget shared by every integral-bearing operation.
// `level` doubles panel counts per increment ("mesh halving" = level+1);
// `rel_tol` drives the adaptive routines.
struct QuadratureSpec {
  int level = 0;
  double rel_tol = 1e-9;
  int max_adaptive_depth = 38;
};

// Gauss-Legendre nodes/weights on [-1,1], computed once per order and cached.
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussLegendre& gauss_legendre(int order);

using Fn1D = std::function<double(double)>;

// Fixed-order GL on [a,b].
double gl_integrate(const Fn1D& f, double a, double b, int order);

// Composite GL over the given breakpoints.
double gl_composite(const Fn1D& f, const std::vector<double>& breaks, int order);

// Breakpoint builders.
std::vector<double> uniform_breaks(double a, double b, int n);
// Panels accumulating geometrically toward `a` (resolves endpoint layers).
std::vector<double> graded_breaks(double a, double b, int n, double grading);

// int_0^b t^alpha g(t) dt with alpha > -1: the power weight is absorbed
// exactly by the substitution t = b * chi^{1/(alpha+1)}.
double power_weighted_end(const Fn1D& g, double b, double alpha, int order);

// Adaptive bisection with a GL7/GL15 pair, deterministic subdivision order.
// Throws NumericError when the depth budget is exhausted.
double adaptive_integrate(const Fn1D& f, double a, double b, double rel_tol,
                          double abs_floor = 0.0, int max_depth = 38);

// Adaptive integral over [a, inf) via x = a + t/(1-t) when a >= 0.
double adaptive_integrate_to_inf(const Fn1D& f, double a, double rel_tol,
                                 double abs_floor = 0.0, int max_depth = 38);

}  // namespace fracbubble
