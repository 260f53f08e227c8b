#include "fracbubble/critical_point.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracbubble {

namespace {

double fk(const SpectralParams& p, const ConstantsTable& c, const PotentialModel& pot,
          const ReducedPoint& pt) {
  return energy_expansion(pt, c, p, pot) / pt.k;
}

struct Box3 {
  double lo[3], hi[3], w[3];
};

Box3 as_box3(const ParameterBox& b) {
  Box3 o;
  o.lo[0] = b.r_lo;
  o.hi[0] = b.r_hi;
  o.lo[1] = b.h_lo;
  o.hi[1] = b.h_hi;
  o.lo[2] = b.lam_lo;
  o.hi[2] = b.lam_hi;
  for (int i = 0; i < 3; ++i) o.w[i] = 0.5 * (o.hi[i] - o.lo[i]);
  return o;
}

ReducedPoint at(const ReducedPoint& base, const double x[3]) {
  ReducedPoint pt = base;
  pt.r = x[0];
  pt.h = x[1];
  pt.lambda = x[2];
  return pt;
}

}  // namespace

void expansion_gradient(const SpectralParams& p, const ConstantsTable& c,
                        const PotentialModel& pot, const ReducedPoint& pt,
                        const ParameterBox& box, double out[3]) {
  Box3 b3 = as_box3(box);
  double dr = 1e-3 * b3.w[0];
  ReducedPoint hi = pt, lo = pt;
  hi.r += dr;
  lo.r -= dr;
  double g_r = (fk(p, c, pot, hi) - fk(p, c, pot, lo)) / (2.0 * dr);
  out[0] = g_r * b3.w[0];
  out[1] = grad_h(pt, c, p) / pt.k * b3.w[1];
  out[2] = grad_lambda(pt, c, p) / pt.k * b3.w[2];
}

ReducedPoint find_critical_point(const SpectralParams& p, const ConstantsTable& c,
                                 const PotentialModel& pot, int k, const ReducedPoint& init,
                                 const CriticalPointOptions& opts, FlowState* state) {
  const double mu = mu_scaling(p, c.m, k);
  const double h0 = solve_h0(p, c, k);
  const double lam0 = solve_lambda0(p, c, k, mu * c.r0, h0);
  ParameterBox box = ParameterBox::make(mu, c.r0, h0, lam0, opts.theta_box);
  if (!box.contains(init.r, init.h, init.lambda))
    throw std::invalid_argument("find_critical_point: init outside the parameter box");

  Box3 b3 = as_box3(box);
  double x[3] = {init.r, init.h, init.lambda};
  FlowState fs;
  fs.point = init;
  fs.point.k = k;

  auto grad_at = [&](const double xx[3], double g[3]) {
    ReducedPoint pt = at(fs.point, xx);
    expansion_gradient(p, c, pot, pt, box, g);
  };
  auto norm3 = [](const double g[3]) {
    return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
  };
  auto project = [&](double xx[3]) {
    for (int i = 0; i < 3; ++i) xx[i] = std::clamp(xx[i], b3.lo[i], b3.hi[i]);
  };

  double g[3];
  grad_at(x, g);
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    if (opts.record_trajectory) fs.trajectory.push_back(at(fs.point, x));
    if (norm3(g) <= opts.tol) break;

    // FD Hessian of the scaled gradient
    double H[3][3];
    const double hstep = 1e-4;
    for (int j = 0; j < 3; ++j) {
      double xp[3] = {x[0], x[1], x[2]};
      double xm[3] = {x[0], x[1], x[2]};
      xp[j] += hstep * b3.w[j];
      xm[j] -= hstep * b3.w[j];
      double gp[3], gm[3];
      grad_at(xp, gp);
      grad_at(xm, gm);
      for (int i = 0; i < 3; ++i) H[i][j] = (gp[i] - gm[i]) / (2.0 * hstep);
    }
    // Newton step in scaled units: solve H d = -g (Cramer)
    double det = H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1]) -
                 H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0]) +
                 H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0]);
    double d[3];
    bool newton_ok = std::isfinite(det) && std::abs(det) > 1e-300;
    if (newton_ok) {
      double rhs[3] = {-g[0], -g[1], -g[2]};
      auto solve_col = [&](int col) {
        double M[3][3];
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) M[i][j] = (j == col) ? rhs[i] : H[i][j];
        return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])) /
               det;
      };
      for (int j = 0; j < 3; ++j) d[j] = solve_col(j);
      if (!std::isfinite(d[0]) || !std::isfinite(d[1]) || !std::isfinite(d[2])) newton_ok = false;
    }
    if (!newton_ok) {
      double gn = norm3(g);
      for (int j = 0; j < 3; ++j) d[j] = -1e-2 * g[j] / (gn > 0 ? gn : 1.0);
    }

    // damped update (scaled units are d[j] * w[j] in raw units)
    double gn0 = norm3(g);
    double step = 1.0;
    bool accepted = false;
    for (int halve = 0; halve <= 60; ++halve) {
      double xn[3];
      for (int j = 0; j < 3; ++j) xn[j] = x[j] + step * d[j] * b3.w[j];
      project(xn);
      double gnval[3];
      grad_at(xn, gnval);
      if (norm3(gnval) < gn0) {
        for (int j = 0; j < 3; ++j) x[j] = xn[j];
        for (int j = 0; j < 3; ++j) g[j] = gnval[j];
        fs.step = step;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // gradient already at the noise floor of the FD r-derivative
      break;
    }
  }

  fs.iterations = it;
  fs.grad_norm = norm3(g);
  fs.point = at(fs.point, x);
  fs.point.k = k;
  if (state) *state = fs;
  if (fs.grad_norm > opts.tol) {
    std::ostringstream os;
    os << "find_critical_point: no convergence, |g|=" << fs.grad_norm << " at (r,h,L)=("
       << x[0] << "," << x[1] << "," << x[2] << ")";
    throw NumericError(os.str(), x[2], fs.grad_norm);
  }
  return fs.point;
}

void scaled_hl_hessian_eigs(const SpectralParams& p, const ConstantsTable& c,
                            const PotentialModel& pot, const ReducedPoint& pt, double eigs[2]) {
  const double mu = mu_scaling(p, c.m, pt.k);
  const double scale = std::pow(mu, c.m);
  auto phi = [&](double h, double lam) {
    ReducedPoint q = pt;
    q.h = h;
    q.lambda = lam;
    return scale * (energy_expansion(q, c, p, pot) / pt.k - c.A);
  };
  double dh = std::max(1e-6, 1e-4 * pt.h);
  double dl = std::max(1e-6, 1e-4 * pt.lambda);
  double f0 = phi(pt.h, pt.lambda);
  double fhh = (phi(pt.h + dh, pt.lambda) - 2 * f0 + phi(pt.h - dh, pt.lambda)) / (dh * dh);
  double fll = (phi(pt.h, pt.lambda + dl) - 2 * f0 + phi(pt.h, pt.lambda - dl)) / (dl * dl);
  double fhl = (phi(pt.h + dh, pt.lambda + dl) - phi(pt.h + dh, pt.lambda - dl) -
                phi(pt.h - dh, pt.lambda + dl) + phi(pt.h - dh, pt.lambda - dl)) /
               (4.0 * dh * dl);
  double tr = fhh + fll, det = fhh * fll - fhl * fhl;
  double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
  eigs[0] = 0.5 * tr - disc;
  eigs[1] = 0.5 * tr + disc;
}

BoundarySignReport boundary_sign_report(const SpectralParams& p, const ConstantsTable& c, int k,
                                        double theta, int grid) {
  BoundarySignReport rep;
  const double tau = p.tau();
  const double mu = mu_scaling(p, c.m, k);
  const double h0 = solve_h0(p, c, k);
  const double lam0 = solve_lambda0(p, c, k, mu * c.r0, h0);
  rep.h0 = h0;
  rep.lambda0 = lam0;
  rep.mu = mu;
  const double wr = std::pow(mu, -theta);
  const double wh = std::pow(mu, -theta);
  const double wl = std::pow(mu, -1.5 * theta);

  auto grid_val = [&](int i, double lo, double hi) {
    return lo + (hi - lo) * i / (grid - 1);
  };

  // descent flow of -F must point into the box on every lateral face:
  //   d(-F)/dLambda > 0 on Lambda = Lambda0 + wl, < 0 on Lambda0 - wl,
  //   d(-F)/dh      > 0 on h = h0 + wh,           < 0 on h0 - wh.
  struct FaceDef {
    const char* name;
    int axis;     // 1 = h, 2 = lambda
    double off;   // +1 upper, -1 lower
  };
  const FaceDef defs[4] = {{"lambda_hi", 2, +1.0}, {"lambda_lo", 2, -1.0},
                           {"h_hi", 1, +1.0},      {"h_lo", 1, -1.0}};
  for (int f = 0; f < 4; ++f) {
    FaceCheck& fc = rep.faces[f];
    fc.name = defs[f].name;
    double hval = defs[f].axis == 1 ? h0 + defs[f].off * wh : 0.0;
    double lval = defs[f].axis == 2 ? lam0 + defs[f].off * wl : 0.0;
    if (defs[f].axis == 1 && !(hval > 0.0 && hval < 1.0)) {
      fc.valid = false;
      continue;
    }
    if (defs[f].axis == 2 && !(lval > 0.0)) {
      fc.valid = false;
      continue;
    }
    fc.valid = true;
    double min_margin = 1e300;
    bool ok = true;
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        ReducedPoint pt;
        pt.k = k;
        pt.r = grid_val(i, mu * c.r0 - wr, mu * c.r0 + wr);
        if (defs[f].axis == 1) {
          pt.h = hval;
          pt.lambda = grid_val(j, lam0 - wl, lam0 + wl);
          if (!(pt.lambda > 0)) { ok = false; continue; }
          double d_minusF = -grad_h(pt, c, p);
          double want = defs[f].off;  // >0 on upper, <0 on lower
          double margin = want * d_minusF;
          min_margin = std::min(min_margin, margin);
          ok = ok && margin > 0.0;
        } else {
          pt.lambda = lval;
          pt.h = grid_val(j, std::max(h0 - wh, 1e-12), std::min(h0 + wh, 1.0 - 1e-12));
          double d_minusF = -grad_lambda(pt, c, p);
          double want = defs[f].off;
          double margin = want * d_minusF;
          min_margin = std::min(min_margin, margin);
          ok = ok && margin > 0.0;
        }
      }
    }
    fc.passed = ok;
    fc.min_margin = min_margin;
  }

  // level inequality on |r - mu r0| = mu^{-theta}: the displayed expansion
  // (Lambda-frozen through Lambda0) against alpha_1
  {
    FaceCheck& fc = rep.level;
    fc.name = "level_r_face";
    fc.valid = true;
    double alpha1 = k * (-c.A -
                         (c.A1 / std::pow(lam0, c.m) - c.B3 / std::pow(lam0, tau)) /
                             std::pow(mu, c.m) -
                         std::pow(mu, -(c.m + 2.5 * theta)));
    double min_margin = 1e300;
    bool ok = true;
    double full_min = 1e300;
    PotentialModel pot_like;  // only r0/m enter the expansion formula
    pot_like.r0 = c.r0;
    pot_like.c0 = c.c0;
    pot_like.m = c.m;
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        double lam = grid_val(i, lam0 - wl, lam0 + wl);
        double h = std::clamp(grid_val(j, h0 - wh, h0 + wh), 1e-12, 1.0 - 1e-12);
        double fbar_38 =
            k * (-c.A + (c.B3 / std::pow(lam0, tau) - c.A1 / std::pow(lam0, c.m)) /
                            std::pow(mu, c.m) -
                 c.A2 / (std::pow(lam, c.m - 2.0) * std::pow(mu, c.m + 2.0 * theta)));
        double margin = alpha1 - fbar_38;
        min_margin = std::min(min_margin, margin);
        ok = ok && margin > 0.0;
        for (double sgn : {-1.0, 1.0}) {
          ReducedPoint pt;
          pt.k = k;
          pt.r = mu * c.r0 + sgn * wr;
          pt.h = h;
          pt.lambda = lam;
          double fbar_full = -energy_expansion(pt, c, p, pot_like);
          full_min = std::min(full_min, alpha1 - fbar_full);
        }
      }
    }
    fc.passed = ok;
    fc.min_margin = min_margin;
    rep.level_full_margin = full_min;
  }

  rep.all_passed = rep.level.passed;
  for (const auto& f : rep.faces) rep.all_passed = rep.all_passed && f.valid && f.passed;
  return rep;
}

}  // namespace fracbubble
