#pragma once

#include <optional>

#include "fracbubble/reduced_energy.hpp"

namespace fracbubble {

struct FlowState {
  ReducedPoint point;
  double step = 0.0;
  int iterations = 0;
  std::vector<ReducedPoint> trajectory;
  bool exited = false;
  double grad_norm = 0.0;
};

struct CriticalPointOptions {
  double theta_box = 0.1;
  double tol = 1e-10;
  int max_iterations = 100;
  bool record_trajectory = false;
};

// Direct stationarity solve on the truncated expansion: damped Newton in
// box-scaled coordinates with a steepest-descent fallback and projection
// onto the parameter box.  grad_h and grad_lambda are analytic; the
// r-gradient is a centered difference of the expansion.
ReducedPoint find_critical_point(const SpectralParams& p, const ConstantsTable& c,
                                 const PotentialModel& pot, int k, const ReducedPoint& init,
                                 const CriticalPointOptions& opts, FlowState* state = nullptr);

// Box-scaled gradient components of F/k at a point (r by centered FD).
void expansion_gradient(const SpectralParams& p, const ConstantsTable& c,
                        const PotentialModel& pot, const ReducedPoint& pt,
                        const ParameterBox& box, double out[3]);

// FD Hessian of mu^m (F/k - A) in (h, Lambda) at a point; returns the two
// eigenvalues (ascending).  The mu^m scaling puts the reduced landscape at
// O(1) so a fixed non-degeneracy threshold is meaningful.
void scaled_hl_hessian_eigs(const SpectralParams& p, const ConstantsTable& c,
                            const PotentialModel& pot, const ReducedPoint& pt, double eigs[2]);

struct FaceCheck {
  std::string name;
  bool valid = false;   // face lies in the admissible domain
  bool passed = false;  // inward-flow sign holds on the whole sample grid
  double min_margin = 0.0;
};

struct BoundarySignReport {
  double h0 = 0.0, lambda0 = 0.0, mu = 0.0;
  FaceCheck faces[4];       // lambda-hi, lambda-lo, h-hi, h-lo
  FaceCheck level;          // level inequality on |r - mu r0| = mu^{-theta}
  double level_full_margin = 0.0;  // informational: full-expansion margin
  bool all_passed = false;
};

// Evaluates the inward-flow sign of the descent field of -F on the four
// lateral faces of the box, and the level inequality against alpha_1 on the
// r-faces, each over a grid x grid sample per face.
BoundarySignReport boundary_sign_report(const SpectralParams& p, const ConstantsTable& c,
                                        int k, double theta = 0.1, int grid = 5);

}  // namespace fracbubble
