#pragma once

#include <string>
#include <vector>

#include "fracbubble/configuration.hpp"
#include "fracbubble/interactions.hpp"
#include "fracbubble/potential.hpp"
#include "fracbubble/quadrature.hpp"

namespace fracbubble {

// Expansion constants of the reduced energy.  A, A1, A2, B0 come from
// bubble integrals; B1, B2 tie B0 to the two lattice-sum normalizations;
// B3..B7 are the regrouped coefficients over the mu-power basis.
struct ConstantsTable {
  double A = 0, A1 = 0, A2 = 0;
  double B0 = 0, B1 = 0, B2 = 0;
  double B3 = 0, B4 = 0, B5 = 0, B6 = 0, B7 = 0;
  double D1_at_tau = 0;
  // parameters the table was assembled for
  double m = 0, r0 = 1, c0 = 1;
  int fit_k_ref = 64;

  struct Entry {
    std::string name;
    double value;
    std::string method;  // quadrature | closed-form | fitted
  };
  std::vector<Entry> provenance() const;
};

ConstantsTable compute_constants(const SpectralParams& p, const PotentialModel& pot,
                                 const QuadratureSpec& quad);

struct ReducedPoint {
  double r = 0, h = 0, lambda = 1;
  int k = 2;
};

// F(r,h,Lambda)/truncated: k ( A + A1/(L^m mu^m) + A2 (mu r0 - r)^2/(L^{m-2} mu^m)
//   - B1 k^{N-2s} / (L^{N-2s} (r sqrt(1-h^2))^{N-2s})
//   - B2 hk / (L^{N-2s} (rh)^{N-2s} sqrt(1-h^2)) )
double energy_expansion(const ReducedPoint& pt, const ConstantsTable& c, const SpectralParams& p,
                        const PotentialModel& pot);

// F(r,h,Lambda) - k A, evaluated term-wise: the subleading landscape at its
// own floating-point scale (differencing the full expansion against the
// k A offset would drown the mu^{-m}-sized structure in rounding).
double energy_expansion_excess(const ReducedPoint& pt, const ConstantsTable& c,
                               const SpectralParams& p, const PotentialModel& pot);

double grad_lambda(const ReducedPoint& pt, const ConstantsTable& c, const SpectralParams& p);

double grad_h(const ReducedPoint& pt, const ConstantsTable& c, const SpectralParams& p);

// h-derivative term of the expansion that the displayed gradient drops
// (the expected finite-difference discrepancy of grad_h):
//   - B2 k^2 / (L^{N-2s} r^{N-2s} h^{N-2s-2} (1-h^2)^{3/2})
double grad_h_dropped_term(const ReducedPoint& pt, const ConstantsTable& c,
                           const SpectralParams& p);

// Exact root of the displayed h-equation:
//   h0 = (1 + (B1 (N-2s) k^{N-2s-1} / (B2 (N-2s-1)))^{2/(N-2s+1)})^{-1/2};
// verifies the grad_h numerator vanishes there to 1e-12 relative.
double solve_h0(const SpectralParams& p, const ConstantsTable& c, int k);

// Exact root of the displayed Lambda-equation at the given r (reduces to the
// mu r0 = r form when r = mu r0); verifies the residual to 1e-10 relative.
double solve_lambda0(const SpectralParams& p, const ConstantsTable& c, int k, double r, double h0);

// I(W_{r,h,Lambda}) by direct quadrature: gradient term through pairwise
// interaction integrals at the exact configuration distances; potential term
// over a symmetry cell times 2k.  Small k only.
double energy_direct(const CylinderConfig& cfg, const PotentialModel& pot,
                     const SpectralParams& p, const QuadratureSpec& quad,
                     double wedge_offset = 0.0);

// (1/2 - 1/2*_s) int U^{2*_s}: energy of a solitary bubble with K == 1.
double single_bubble_energy(const SpectralParams& p, const QuadratureSpec& quad);

}  // namespace fracbubble
