#pragma once

#include "fracbubble/common.hpp"
#include "fracbubble/spectral.hpp"

namespace fracbubble {

// U_{x,L}(y) = c_norm (L / (1 + L^2 |y-x|^2))^{(N-2s)/2}
double bubble_value(const SpectralParams& p, const BubbleSpec& spec, const Point& y);

// U^{2*_s - 1}, which equals (-Delta)^s U pointwise.
double bubble_nonlinear_image(const SpectralParams& p, const BubbleSpec& spec, const Point& y);

// Z_0 (radial) or Z_i, at center 0, Lambda = 1.
double kernel_value(const SpectralParams& p, KernelIndex which, const Point& y);

// Radial profiles (center 0). For Z_i the field is g(rho) * y_i / rho with
// g = U'.  Profiles expose value and derivative in rho plus the algebraic
// decay exponent of |f| at infinity (used for tail budgeting).
struct RadialProfile {
  virtual ~RadialProfile() = default;
  virtual double value(double rho) const = 0;
  virtual double deriv(double rho) const = 0;
  virtual double deriv2(double rho) const = 0;
  virtual double decay_exponent() const = 0;
};

// U_{0,L}(rho)
struct BubbleProfile final : RadialProfile {
  SpectralParams p;
  double lambda;
  BubbleProfile(const SpectralParams& params, double lam) : p(params), lambda(lam) {}
  double value(double rho) const override;
  double deriv(double rho) const override;
  double deriv2(double rho) const override;
  double decay_exponent() const override { return p.tau(); }
};

// Z_0(rho) = c a (1 - rho^2) (1 + rho^2)^{-a-1},  a = (N-2s)/2
struct Z0Profile final : RadialProfile {
  SpectralParams p;
  explicit Z0Profile(const SpectralParams& params) : p(params) {}
  double value(double rho) const override;
  double deriv(double rho) const override;
  double deriv2(double rho) const override;
  double decay_exponent() const override { return p.tau(); }
};

// radial factor of Z_i: g(rho) = U'(rho) = -(N-2s) c rho (1+rho^2)^{-a-1}
struct ZiRadialFactor final : RadialProfile {
  SpectralParams p;
  explicit ZiRadialFactor(const SpectralParams& params) : p(params) {}
  double value(double rho) const override;
  double deriv(double rho) const override;
  double deriv2(double rho) const override;
  double decay_exponent() const override { return p.tau() + 1.0; }
};

struct ConstantProfile final : RadialProfile {
  double c;
  explicit ConstantProfile(double v) : c(v) {}
  double value(double) const override { return c; }
  double deriv(double) const override { return 0.0; }
  double deriv2(double) const override { return 0.0; }
  double decay_exponent() const override { return 0.0; }
};

}  // namespace fracbubble
