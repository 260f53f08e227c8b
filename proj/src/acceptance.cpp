#include "fracbubble/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "fracbubble/critical_point.hpp"
#include "fracbubble/csv.hpp"
#include "fracbubble/extension.hpp"
#include "fracbubble/interactions.hpp"
#include "fracbubble/norms.hpp"
#include "fracbubble/pohozaev.hpp"
#include "fracbubble/reduced_energy.hpp"

namespace fracbubble {

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point t0 = Clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }
};

std::string fmt(double v) { return CsvWriter::num(v); }

// ---- 1. bubble PDE identity --------------------------------------------
CriterionResult criterion_bubble_pde(const RunConfig& cfg) {
  CriterionResult r{1, "bubble_pde_identity"};
  Timer timer;
  QuadratureSpec quad = cfg.quad();
  double worst = 0.0;
  for (auto [N, s] : {std::pair<int, double>{3, 0.3}, {4, 0.5}}) {
    SpectralParams p = SpectralParams::make(N, s);
    BubbleProfile prof(p, 1.0);
    for (int i = 0; i < 20; ++i) {
      double rho = 5.0 * (i + 0.5) / 20.0;
      double trace = trace_derivative_radial(p, prof, rho, quad);
      double exact = std::pow(prof.value(rho), p.p_crit - 1.0);
      worst = std::max(worst, std::abs(trace - exact) / exact);
    }
  }
  r.seconds = timer.elapsed();
  r.passed = worst <= 1e-3 && r.seconds <= 120.0;
  r.detail = "max_rel_residual=" + fmt(worst);
  return r;
}

// ---- 2. linearized kernel identity --------------------------------------
CriterionResult criterion_kernel_identity(const RunConfig& cfg) {
  CriterionResult r{2, "linearized_kernel_identity"};
  Timer timer;
  QuadratureSpec quad = cfg.quad();
  double worst = 0.0;
  for (auto [N, s] : {std::pair<int, double>{3, 0.3}, {4, 0.5}}) {
    SpectralParams p = SpectralParams::make(N, s);
    BubbleProfile bub(p, 1.0);
    const double pm2 = p.p_crit - 2.0;
    const double lin = p.p_crit - 1.0;
    std::vector<double> rhos;
    for (int i = 0; i < 20; ++i) rhos.push_back(5.0 * (i + 0.5) / 20.0);
    {
      Z0Profile z0(p);
      double zmax = 0.0;
      for (double rho : rhos) zmax = std::max(zmax, std::abs(z0.value(rho)));
      for (double rho : rhos) {
        if (std::abs(z0.value(rho)) <= 1e-3 * zmax) continue;
        double trace = trace_derivative_radial(p, z0, rho, quad);
        double exact = lin * std::pow(bub.value(rho), pm2) * z0.value(rho);
        worst = std::max(worst, std::abs(trace - exact) / std::abs(exact));
      }
    }
    {
      ZiRadialFactor g(p);
      double gmax = 0.0;
      for (double rho : rhos) gmax = std::max(gmax, std::abs(g.value(rho)));
      for (double rho : rhos) {
        if (std::abs(g.value(rho)) <= 1e-3 * gmax) continue;
        double trace = trace_derivative_l1(p, g, rho, quad);
        double exact = lin * std::pow(bub.value(rho), pm2) * g.value(rho);
        worst = std::max(worst, std::abs(trace - exact) / std::abs(exact));
      }
    }
  }
  r.seconds = timer.elapsed();
  r.passed = worst <= 1e-3;
  r.detail = "max_rel_residual=" + fmt(worst);
  return r;
}

// ---- 3. interaction constant --------------------------------------------
CriterionResult criterion_interaction_constant(const RunConfig& cfg) {
  CriterionResult r{3, "interaction_constant"};
  Timer timer;
  SpectralParams p = cfg.params();
  QuadratureSpec quad = cfg.quad();
  double B0 = interaction_constant_B0(p, quad);
  double tau = p.tau();
  double prev_dev = 1e300;
  bool monotone = true;
  double final_dev = 0.0;
  for (double d : {20.0, 50.0, 100.0}) {
    double scaled = std::pow(d, tau) * pairwise_interaction(p, d, quad) / B0;
    double dev = std::abs(scaled - 1.0);
    if (dev > prev_dev) monotone = false;
    prev_dev = dev;
    final_dev = dev;
  }
  r.seconds = timer.elapsed();
  r.passed = final_dev <= 0.05 && monotone && r.seconds <= 60.0;
  r.detail = "dev_at_100=" + fmt(final_dev) + " monotone=" + (monotone ? "1" : "0");
  return r;
}

// ---- 4. same-circle asymptotics ------------------------------------------
CriterionResult criterion_same_circle(const RunConfig& cfg) {
  CriterionResult r{4, "lattice_same_circle"};
  Timer timer;
  SpectralParams p = cfg.params();
  PotentialModel pot = cfg.potential();
  const double tau = 3.0;
  std::vector<double> ks = {16, 32, 64, 128};
  std::vector<double> devs;
  for (double kd : ks) {
    int k = static_cast<int>(kd);
    CylinderConfig c = build_cylinder_config(p, pot.m, k, 1.0, 0.5, 1.0);
    SumSpec spec = SumSpec::make(tau, SumKind::same_circle);
    double exact = lattice_sum_exact(c, spec);
    double asym = lattice_sum_asymptotic(c, spec).value;
    devs.push_back(std::abs(exact / asym - 1.0));
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < devs.size(); ++i) decreasing = decreasing && devs[i] < devs[i - 1];
  // log-log slope by least squares
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    double x = std::log(ks[i]), y = std::log(devs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = ks.size();
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  r.seconds = timer.elapsed();
  r.passed = decreasing && std::abs(slope + 2.0) <= 0.5;
  r.detail = "slope=" + fmt(slope) + " devs=" + fmt(devs.front()) + ".." + fmt(devs.back());
  return r;
}

// ---- 5. cross-circle asymptotics ------------------------------------------
CriterionResult criterion_cross_circle(const RunConfig& cfg) {
  CriterionResult r{5, "lattice_cross_circle"};
  Timer timer;
  SpectralParams p = cfg.params();
  PotentialModel pot = cfg.potential();
  const double tau = 3.0;
  double expo = (p.tau() - 1.0) / (p.tau() + 1.0);
  auto dev_at = [&](int k) {
    double h = std::pow(static_cast<double>(k), -expo);
    CylinderConfig c = build_cylinder_config(p, pot.m, k, 1.0, h, 1.0);
    SumSpec spec = SumSpec::make(tau, SumKind::cross_circle);
    double exact = lattice_sum_exact(c, spec);
    double asym = lattice_sum_asymptotic(c, spec).value;
    return std::abs(exact / asym - 1.0);
  };
  double d16 = dev_at(16), d128 = dev_at(128);
  r.seconds = timer.elapsed();
  r.passed = d128 * 2.0 <= d16;
  r.detail = "dev16=" + fmt(d16) + " dev128=" + fmt(d128);
  return r;
}

// ---- 6. D1 closed form ----------------------------------------------------
CriterionResult criterion_d1(const RunConfig& cfg) {
  CriterionResult r{6, "d1_closed_form"};
  Timer timer;
  QuadratureSpec quad = cfg.quad();
  double worst = 0.0;
  for (double tau : {2.0, 2.5, 3.0, 4.0}) {
    double q = d1_constant(tau, quad);
    double c = d1_constant_closed_form(tau);
    worst = std::max(worst, std::abs(q / c - 1.0));
  }
  double anchor2 = std::abs(d1_constant(2.0, quad) - 0.5 * M_PI);
  double anchor3 = std::abs(d1_constant(3.0, quad) - 1.0);
  r.seconds = timer.elapsed();
  r.passed = worst <= 1e-10 && anchor2 <= 1e-12 * 0.5 * M_PI && anchor3 <= 1e-12;
  r.detail = "max_rel=" + fmt(worst);
  return r;
}

// ---- 7. critical equations -------------------------------------------------
CriterionResult criterion_critical_equations(const RunConfig& cfg) {
  CriterionResult r{7, "critical_equations"};
  Timer timer;
  SpectralParams p = cfg.params();
  PotentialModel pot = cfg.potential();
  ConstantsTable c = compute_constants(p, pot, cfg.quad());
  const double tau = p.tau();
  double worst_h = 0.0, worst_l = 0.0;
  for (int k : {16, 64, 256}) {
    double h0 = solve_h0(p, c, k);
    double t1 = c.B2 * (tau - 1.0) * k * std::pow(std::sqrt(1.0 - h0 * h0), tau + 1.0);
    double t2 = c.B1 * tau * std::pow(static_cast<double>(k), tau) * std::pow(h0, tau + 1.0);
    worst_h = std::max(worst_h, std::abs(t1 - t2) / (std::abs(t1) + std::abs(t2)));
    double mu = mu_scaling(p, c.m, k);
    double lam0 = solve_lambda0(p, c, k, mu * c.r0, h0);
    double sq = std::sqrt(1.0 - h0 * h0);
    double e1 = -c.m * c.A1 / (std::pow(lam0, c.m + 1.0) * std::pow(mu, c.m));
    double e2 = c.B1 * tau * std::pow(static_cast<double>(k), tau) /
                (std::pow(lam0, tau + 1.0) * std::pow(mu * c.r0 * sq, tau));
    double e3 = c.B2 * tau * h0 * k /
                (std::pow(lam0, tau + 1.0) * std::pow(mu * c.r0 * h0, tau) * sq);
    worst_l = std::max(worst_l, std::abs(e1 + e2 + e3) /
                                    (std::abs(e1) + std::abs(e2) + std::abs(e3)));
  }
  // large-k regression where the k -> infinity power law is in regime
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<int> ks = {256, 512, 1024, 2048, 4096};
  for (int k : ks) {
    double x = std::log(static_cast<double>(k));
    double y = std::log(solve_h0(p, c, k));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = ks.size();
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double target = -(tau - 1.0) / (tau + 1.0);
  double slope_err = std::abs(slope - target) / std::abs(target);
  r.seconds = timer.elapsed();
  r.passed = worst_h <= 1e-10 && worst_l <= 1e-10 && slope_err <= 0.02;
  r.detail = "h_resid=" + fmt(worst_h) + " l_resid=" + fmt(worst_l) + " slope=" + fmt(slope) +
             " target=" + fmt(target);
  return r;
}

// ---- 8. boundary signs -------------------------------------------------------
CriterionResult criterion_boundary_signs(const RunConfig& cfg) {
  CriterionResult r{8, "boundary_signs"};
  Timer timer;
  SpectralParams p = cfg.params();
  PotentialModel pot = cfg.potential();
  ConstantsTable c = compute_constants(p, pot, cfg.quad());
  BoundarySignReport rep = boundary_sign_report(p, c, 50, 0.1, 5);
  r.seconds = timer.elapsed();
  r.passed = rep.all_passed;
  std::ostringstream os;
  for (const auto& f : rep.faces)
    os << f.name << (f.valid ? (f.passed ? "=pass " : "=FAIL ") : "=invalid ");
  os << rep.level.name << (rep.level.passed ? "=pass" : "=FAIL")
     << " level_margin=" << fmt(rep.level.min_margin);
  r.detail = os.str();
  return r;
}

// ---- 9. Pohozaev translation -------------------------------------------------
CriterionResult criterion_pohozaev_translation(const RunConfig& cfg) {
  CriterionResult r{9, "pohozaev_translation"};
  Timer timer;
  SpectralParams p = cfg.params();
  PotentialModel flat = PotentialModel::flat(p);
  HalfBallDomain dom = HalfBallDomain::make(Point(p.N, 0.0), 3.0);
  FieldPair pair;
  pair.u = {FieldSpec::Kind::bubble, 1};
  pair.xi = {FieldSpec::Kind::zi, 1};
  QuadratureSpec quad = cfg.quad();
  ResidualReport rep = translation_identity_residual(p, pair, dom, flat, 1.0, 1, quad);
  QuadratureSpec fine = quad;
  fine.level = quad.level + 1;
  ResidualReport rep2 = translation_identity_residual(p, pair, dom, flat, 1.0, 1, fine);
  r.seconds = timer.elapsed();
  bool converges = rep2.rel_residual * 4.0 <= rep.rel_residual;
  r.passed = rep.rel_residual <= 1e-3 && converges;
  r.detail = "rel=" + fmt(rep.rel_residual) + " refined=" + fmt(rep2.rel_residual);
  return r;
}

// ---- 10. Pohozaev dilation ----------------------------------------------------
CriterionResult criterion_pohozaev_dilation(const RunConfig& cfg) {
  CriterionResult r{10, "pohozaev_dilation"};
  Timer timer;
  SpectralParams p = cfg.params();
  PotentialModel flat = PotentialModel::flat(p);
  FieldPair pair;
  pair.u = {FieldSpec::Kind::bubble, 1};
  pair.xi = {FieldSpec::Kind::bubble, 1};
  QuadratureSpec quad = cfg.quad();
  double worst = 0.0;
  for (double delta : {3.0, 6.0}) {
    HalfBallDomain dom = HalfBallDomain::make(Point(p.N, 0.0), delta);
    ResidualReport rep =
        dilation_identity_residual(p, pair, dom, flat, 1.0, Point(p.N, 0.0), quad);
    worst = std::max(worst, rep.rel_residual);
  }
  r.seconds = timer.elapsed();
  r.passed = worst <= 1e-3;
  r.detail = "max_rel_vs_term=" + fmt(worst);
  return r;
}

// ---- 11. gradient consistency ---------------------------------------------------
CriterionResult criterion_gradient_consistency(const RunConfig& cfg) {
  CriterionResult r{11, "gradient_consistency"};
  Timer timer;
  SpectralParams p = cfg.params();
  PotentialModel pot = cfg.potential();
  ConstantsTable c = compute_constants(p, pot, cfg.quad());
  const int k = 32;
  double mu = mu_scaling(p, c.m, k);
  double h0 = solve_h0(p, c, k);
  double lam0 = solve_lambda0(p, c, k, mu * c.r0, h0);
  ParameterBox box = ParameterBox::make(mu, c.r0, h0, lam0, cfg.theta_box);
  std::mt19937 rng(20240);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  bool ok = true;
  double worst_ratio_dev = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    ReducedPoint pt;
    pt.k = k;
    pt.r = mu * c.r0 + unif(rng) * 0.5 * (box.r_hi - box.r_lo) * 0.5;
    pt.h = h0 + unif(rng) * 0.5 * (box.h_hi - box.h_lo) * 0.5;
    pt.lambda = lam0 + unif(rng) * 0.5 * (box.lam_hi - box.lam_lo) * 0.5;
    double g = grad_lambda(pt, c, p);
    auto fd = [&](double step) {
      ReducedPoint hi = pt, lo = pt;
      hi.lambda += step;
      lo.lambda -= step;
      double d = (energy_expansion(hi, c, p, pot) - energy_expansion(lo, c, p, pot)) /
                 (2.0 * step);
      return std::abs(d - g);
    };
    double step = 0.04;
    double e1 = fd(step), e2 = fd(0.5 * step);
    double noise = 1e-13 * std::abs(energy_expansion(pt, c, p, pot));
    if (e1 < noise && e2 < noise) continue;  // agreement at the noise floor
    double ratio = e2 > 0.0 ? e1 / e2 : 4.0;
    worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - 4.0));
    if (ratio < 2.5 || ratio > 6.5) ok = false;
  }
  r.seconds = timer.elapsed();
  r.passed = ok;
  r.detail = "max_ratio_dev_from_4=" + fmt(worst_ratio_dev);
  return r;
}

std::vector<CriterionResult> run_once(const RunConfig& cfg) {
  std::vector<CriterionResult> out;
  out.push_back(criterion_bubble_pde(cfg));
  out.push_back(criterion_kernel_identity(cfg));
  out.push_back(criterion_interaction_constant(cfg));
  out.push_back(criterion_same_circle(cfg));
  out.push_back(criterion_cross_circle(cfg));
  out.push_back(criterion_d1(cfg));
  out.push_back(criterion_critical_equations(cfg));
  out.push_back(criterion_boundary_signs(cfg));
  out.push_back(criterion_pohozaev_translation(cfg));
  out.push_back(criterion_pohozaev_dilation(cfg));
  out.push_back(criterion_gradient_consistency(cfg));
  return out;
}

std::string csv_without_timing(const std::vector<CriterionResult>& results) {
  CsvWriter csv;
  csv.row({"id", "name", "passed", "detail"});
  for (const auto& r : results)
    csv.row({std::to_string(r.id), r.name, r.passed ? "1" : "0", r.detail});
  return csv.str();
}

}  // namespace

std::string acceptance_csv(const std::vector<CriterionResult>& results) {
  return csv_without_timing(results);
}

std::vector<CriterionResult> run_acceptance(const RunConfig& cfg) {
  std::vector<CriterionResult> results = run_once(cfg);
  // 12. determinism: a second full run must serialize byte-identically
  CriterionResult det{12, "determinism"};
  Timer timer;
  std::vector<CriterionResult> again = run_once(cfg);
  det.seconds = timer.elapsed();
  det.passed = csv_without_timing(results) == csv_without_timing(again);
  det.detail = det.passed ? "byte_identical=1" : "byte_identical=0";
  results.push_back(det);
  return results;
}

}  // namespace fracbubble
