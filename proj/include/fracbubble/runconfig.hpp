#pragma once

#include <optional>
#include <string>

#include "fracbubble/potential.hpp"
#include "fracbubble/quadrature.hpp"
#include "fracbubble/spectral.hpp"

namespace fracbubble {

// Resolved run parameters shared by every CLI subcommand.  Flags override
// the optional `key = value` config file.
struct RunConfig {
  int N = 3;
  double s = 0.3;
  double m = -1.0;  // -1: default 3(N-2s)/4
  double c0 = 1.0;
  double r0 = 1.0;
  double delta = 0.5;       // potential validity radius
  double theta_box = 0.1;
  double tau = -1.0;        // sums: exponent (default N-2s); norms: weight tau (default 0.8)
  int k = 16;
  double h = -1.0;          // -1: h0(k)
  double tol = 1e-9;        // quadrature relative tolerance
  int level = 0;            // quadrature level (level+1 halves every mesh)
  double ball_delta = 3.0;  // pohozaev ball radius
  std::string which = "translation";
  std::string out;
  bool trace = false;

  SpectralParams params() const { return SpectralParams::make(N, s); }
  PotentialModel potential() const {
    SpectralParams p = params();
    double mm = m > 0.0 ? m : 0.75 * p.tau();
    return PotentialModel::make(p, r0, c0, mm, delta);
  }
  QuadratureSpec quad() const {
    QuadratureSpec q;
    q.level = level;
    q.rel_tol = tol;
    return q;
  }
  std::string describe() const;
};

// Flat `key = value` file; '#' starts a comment.  Unknown keys are an error.
void apply_config_file(RunConfig& cfg, const std::string& path);

}  // namespace fracbubble
