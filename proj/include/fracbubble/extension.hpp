#pragma once

#include <memory>

#include "fracbubble/bubble.hpp"
#include "fracbubble/quadrature.hpp"
#include "fracbubble/report.hpp"
#include "fracbubble/spectral.hpp"

namespace fracbubble {

// Extension of a radial input f(|.|) to the upper half space,
//   E(rho,t) = (P_s[f])(y,t),  rho = |y|,
// through the polar reduction about y:
//   E = beta |S^{N-2}| t^{2s} int_0^inf zeta^{N-1}(zeta^2+t^2)^{-(N+2s)/2}
//         int_0^pi sin^{N-2}(g) f(R) dg dzeta,
//   R^2 = rho^2 - 2 rho zeta cos g + zeta^2.
// The kernel mass identity int P_s(.,t) = 1 is applied analytically, so the
// quadrature only sees the subtracted integrand (O(zeta^2) at the origin);
// values and t-derivatives stay accurate uniformly as t -> 0.
struct GammaRule {
  std::vector<double> g;   // polar-angle nodes on [0,pi]
  std::vector<double> wg;  // weights including sin^{N-2}
};
GammaRule build_gamma_rule(int N, int panels, int order);

class RadialExtension {
public:
  RadialExtension(const SpectralParams& p, const RadialProfile& f, const QuadratureSpec& quad);

  double value(double rho, double t) const;
  // d/drho and d/dt by the differentiated kernel (never finite differences).
  void grad(double rho, double t, double& d_rho, double& d_t) const;

private:
  const SpectralParams p_;
  const RadialProfile& f_;
  QuadratureSpec quad_;
  int scale_ = 1;
  double s_gamma_ = 0.0;  // int_0^pi sin^{N-2}, closed form
  double gamma_integral(double rho, double zeta, int mode) const;
  double delta0(double rho, double zeta) const;
  void eval(double rho, double t, double* val, double* d_rho, double* d_t) const;
};

// Extension of an l=1 input Z(y) = g(|y|) y_i/|y|: the extension equals
// G(rho,t) y_i/rho with G computed by the same reduction carrying the
// first angular moment.
class L1Extension {
public:
  L1Extension(const SpectralParams& p, const RadialProfile& g, const QuadratureSpec& quad);
  double value(double rho, double t) const;
  void grad(double rho, double t, double& d_rho, double& d_t) const;

private:
  const SpectralParams p_;
  const RadialProfile& g_;
  QuadratureSpec quad_;
  int scale_ = 1;
  double s_gamma_ = 0.0;
  double gamma_integral(double rho, double zeta, int mode) const;
  double delta0(double rho, double zeta) const;
  void eval(double rho, double t, double* val, double* d_rho, double* d_t) const;
};

// P_s[U_{x,L}](y,t) with a certified two-level error check.
double extension_value(const SpectralParams& p, const BubbleSpec& spec, const Point& y, double t,
                       const QuadratureSpec& quad);

// (-Delta)^s-data of a radial input: -lim_{t->0} t^{1-2s} d_t E(rho,t),
// normalized by the kernel's Neumann constant kappa_s, by Richardson
// extrapolation over t_j = t0 2^{-j} with the exponent ladder
// {2-2s, 2, 4-2s, 4} of the degenerate expansion.
double trace_derivative_radial(const SpectralParams& p, const RadialProfile& f, double rho,
                               const QuadratureSpec& quad);

// Radial factor of the same limit for an l=1 input (multiply by y_i/rho).
double trace_derivative_l1(const SpectralParams& p, const RadialProfile& g, double rho,
                           const QuadratureSpec& quad);

// -lim_{t->0} t^{1-2s} d_t (P_s[U_{x,L}])(y,t); equals U^{2*_s-1}(y) exactly.
double extension_trace_derivative(const SpectralParams& p, const BubbleSpec& spec, const Point& y,
                                  const QuadratureSpec& quad);

// Max of |grad extension| (1+|y|)^{N-2s+1} over explicit (y,t) samples that
// must satisfy |y|^2 + t^2 = delta^2 (within tolerance), field centered at 0.
double hemisphere_gradient_ratio(const SpectralParams& p, const RadialProfile& f,
                                 const std::vector<std::pair<Point, double>>& samples,
                                 double delta, const QuadratureSpec& quad = {});

// Checks |grad of the extended bubble| (1+|y-x|)^{N-2s+1} stays bounded over
// half-spheres of radius delta in {1,2,4,8} (sampled); reports the max ratio.
ResidualReport extension_gradient_bound_check(const SpectralParams& p, const BubbleSpec& spec,
                                              int samples_per_sphere, const QuadratureSpec& quad);

}  // namespace fracbubble
