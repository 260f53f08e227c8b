#pragma once

#include <functional>

#include "fracbubble/extension.hpp"
#include "fracbubble/potential.hpp"
#include "fracbubble/report.hpp"

namespace fracbubble {

// Upper half ball Omega^+ = {|y-center|^2 + t^2 < radius^2, t > 0}; the
// lateral boundary is the hemisphere, the flat part the N-ball at t = 0.
struct HalfBallDomain {
  Point center;
  double radius = 1.0;
  static HalfBallDomain make(Point center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("HalfBallDomain: radius must be > 0");
    return HalfBallDomain{std::move(center), radius};
  }
};

// Explicit fields supported by the identity checks, all centered at the
// domain center with Lambda = 1 (the linearized pairing fixes the scale).
struct FieldSpec {
  enum class Kind { bubble, z0, zi, zero };
  Kind kind = Kind::bubble;
  int direction = 1;  // for Kind::zi
};

struct FieldPair {
  FieldSpec u;
  FieldSpec xi;
};

// Weighted lateral integral  int_{hemi} t^{1-2s} f(y,t) dS  by the graded
// spherical-cap product rule; the t^{1-2s} factor is absorbed exactly on the
// panel touching t = 0.
double weighted_hemisphere_integral(const SpectralParams& p,
                                    const std::function<double(const Point&, double)>& f,
                                    const HalfBallDomain& domain, const QuadratureSpec& quad);

// Translation identity on the half ball: the three weighted lateral terms
// against the volume + flat-boundary terms in direction i.
ResidualReport translation_identity_residual(const SpectralParams& p, const FieldPair& pair,
                                             const HalfBallDomain& domain,
                                             const PotentialModel& pot, double mu, int i,
                                             const QuadratureSpec& quad);

// Dilation identity on the half ball about x0 (radial pairs).
ResidualReport dilation_identity_residual(const SpectralParams& p, const FieldPair& pair,
                                          const HalfBallDomain& domain, const PotentialModel& pot,
                                          double mu, const Point& x0, const QuadratureSpec& quad);

}  // namespace fracbubble
