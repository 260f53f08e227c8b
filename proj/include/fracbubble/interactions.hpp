#pragma once

#include "fracbubble/configuration.hpp"
#include "fracbubble/quadrature.hpp"
#include "fracbubble/spectral.hpp"

namespace fracbubble {

enum class SumKind { same_circle, cross_circle };

struct SumSpec {
  double tau;
  SumKind kind;
  static SumSpec make(double tau, SumKind kind) {
    if (!(tau > 0.0)) throw std::invalid_argument("SumSpec: tau must be > 0");
    return SumSpec{tau, kind};
  }
};

// sum_{i=2}^k |u_1-u_i|^{-tau} (same circle) or sum_{i=1}^k |u_1-l_i|^{-tau}
// (cross circle), from the closed-form distances.
double lattice_sum_exact(const CylinderConfig& cfg, const SumSpec& spec);

// D_1(tau) = int_0^inf (x^2+1)^{-tau/2} dx by adaptive quadrature (tau > 1).
double d1_constant(double tau, const QuadratureSpec& quad = {});
// Closed-form cross-check: (sqrt(pi)/2) Gamma((tau-1)/2)/Gamma(tau/2).
double d1_constant_closed_form(double tau);

struct AsymptoticSum {
  double value = 0.0;           // leading form used throughout (proof display)
  double statement_form = 0.0;  // cross circle only: D1 hk/sqrt(1-h^2) (rh)^{-tau}
  bool regime_warning = false;  // outside the validity regime (tau<=1 or hk small)
};

// Leading asymptotic forms:
//   same circle:  (2 r sqrt(1-h^2))^{-tau} * 2 (k/pi)^tau zeta(tau)
//   cross circle: 2 (2rh)^{-tau} * hk D_1 / (pi sqrt(1-h^2))
AsymptoticSum lattice_sum_asymptotic(const CylinderConfig& cfg, const SumSpec& spec);

// int U_{0,1}^{2*_s-1}(y) U_{d e_1,1}(y) dy by a 2-D axially reduced
// quadrature; d = 0 degenerates to int U^{2*_s}.
double pairwise_interaction(const SpectralParams& p, double d, const QuadratureSpec& quad);

// B_0 = c_norm int U^{2*_s-1}, by 1-D radial quadrature.
double interaction_constant_B0(const SpectralParams& p, const QuadratureSpec& quad);
// Beta-function closed form of the same constant (cross-check oracle).
double interaction_constant_B0_closed_form(const SpectralParams& p);

}  // namespace fracbubble
