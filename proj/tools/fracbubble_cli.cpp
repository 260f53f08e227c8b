#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "fracbubble/acceptance.hpp"
#include "fracbubble/critical_point.hpp"
#include "fracbubble/csv.hpp"
#include "fracbubble/extension.hpp"
#include "fracbubble/interactions.hpp"
#include "fracbubble/norms.hpp"
#include "fracbubble/pohozaev.hpp"
#include "fracbubble/reduced_energy.hpp"

using namespace fracbubble;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

void emit(const RunConfig& cfg, const std::string& csv) {
  if (cfg.out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + cfg.out);
    f << csv;
  }
}

int cmd_constants(const RunConfig& cfg) {
  SpectralParams p = cfg.params();
  ConstantsTable table = compute_constants(p, cfg.potential(), cfg.quad());
  CsvWriter csv;
  csv.row({"name", "value", "method"});
  for (const auto& e : table.provenance()) csv.row({e.name, CsvWriter::num(e.value), e.method});
  emit(cfg, csv.str());
  return kExitOk;
}

int cmd_config(const RunConfig& cfg) {
  SpectralParams p = cfg.params();
  PotentialModel pot = cfg.potential();
  ConstantsTable c = compute_constants(p, pot, cfg.quad());
  double mu = mu_scaling(p, pot.m, cfg.k);
  double h = cfg.h > 0.0 ? cfg.h : solve_h0(p, c, cfg.k);
  double lam = solve_lambda0(p, c, cfg.k, mu * pot.r0, solve_h0(p, c, cfg.k));
  CylinderConfig cyl = build_cylinder_config(p, pot.m, cfg.k, mu * pot.r0, h, lam);
  emit(cfg, config_to_csv(cyl));
  return kExitOk;
}

int cmd_sums(const RunConfig& cfg) {
  SpectralParams p = cfg.params();
  PotentialModel pot = cfg.potential();
  double tau = cfg.tau > 0.0 ? cfg.tau : p.tau();
  double h = cfg.h > 0.0 ? cfg.h : 0.5;
  CylinderConfig cyl = build_cylinder_config(p, pot.m, cfg.k, 1.0, h, 1.0);
  CsvWriter csv;
  csv.row({"k", "tau", "kind", "exact", "asymptotic", "ratio"});
  for (SumKind kind : {SumKind::same_circle, SumKind::cross_circle}) {
    SumSpec spec = SumSpec::make(tau, kind);
    double exact = lattice_sum_exact(cyl, spec);
    double asym = lattice_sum_asymptotic(cyl, spec).value;
    csv.row({std::to_string(cfg.k), CsvWriter::num(tau),
             kind == SumKind::same_circle ? "same_circle" : "cross_circle",
             CsvWriter::num(exact), CsvWriter::num(asym), CsvWriter::num(exact / asym)});
  }
  emit(cfg, csv.str());
  return kExitOk;
}

int cmd_energy(const RunConfig& cfg) {
  SpectralParams p = cfg.params();
  PotentialModel pot = cfg.potential();
  ConstantsTable c = compute_constants(p, pot, cfg.quad());
  double mu = mu_scaling(p, pot.m, cfg.k);
  double h0 = solve_h0(p, c, cfg.k);
  double h = cfg.h > 0.0 ? cfg.h : h0;
  double lam = solve_lambda0(p, c, cfg.k, mu * pot.r0, h0);
  ReducedPoint pt{mu * pot.r0, h, lam, cfg.k};
  double fexp = energy_expansion(pt, c, p, pot);
  CsvWriter csv;
  csv.row({"k", "r", "h", "lambda", "F_expansion", "F_direct"});
  std::string direct = "";
  if (cfg.k <= 8) {
    CylinderConfig cyl = build_cylinder_config(p, pot.m, cfg.k, pt.r, pt.h, pt.lambda);
    direct = CsvWriter::num(energy_direct(cyl, pot, p, cfg.quad()));
  }
  csv.row({std::to_string(cfg.k), CsvWriter::num(pt.r), CsvWriter::num(pt.h),
           CsvWriter::num(pt.lambda), CsvWriter::num(fexp), direct});
  emit(cfg, csv.str());
  return kExitOk;
}

int cmd_critical(const RunConfig& cfg) {
  SpectralParams p = cfg.params();
  PotentialModel pot = cfg.potential();
  ConstantsTable c = compute_constants(p, pot, cfg.quad());
  double mu = mu_scaling(p, pot.m, cfg.k);
  double h0 = solve_h0(p, c, cfg.k);
  double lam0 = solve_lambda0(p, c, cfg.k, mu * pot.r0, h0);
  ReducedPoint init{mu * pot.r0, h0, lam0, cfg.k};
  CriticalPointOptions opts;
  opts.theta_box = cfg.theta_box;
  opts.tol = 1e-10;
  opts.record_trajectory = cfg.trace;
  FlowState state;
  ReducedPoint crit = find_critical_point(p, c, pot, cfg.k, init, opts, &state);
  BoundarySignReport rep = boundary_sign_report(p, c, cfg.k, cfg.theta_box, 5);
  CsvWriter csv;
  csv.row({"quantity", "value"});
  csv.row({"r", CsvWriter::num(crit.r)});
  csv.row({"h", CsvWriter::num(crit.h)});
  csv.row({"lambda", CsvWriter::num(crit.lambda)});
  csv.row({"grad_norm", CsvWriter::num(state.grad_norm)});
  csv.row({"iterations", std::to_string(state.iterations)});
  for (const auto& f : rep.faces) {
    csv.row({std::string(f.name) + "_valid", f.valid ? "1" : "0"});
    csv.row({std::string(f.name) + "_passed", f.passed ? "1" : "0"});
    csv.row({std::string(f.name) + "_margin", CsvWriter::num(f.min_margin)});
  }
  csv.row({"level_passed", rep.level.passed ? "1" : "0"});
  csv.row({"level_margin", CsvWriter::num(rep.level.min_margin)});
  if (cfg.trace) {
    csv.row({"trace", ""});
    csv.row({"iter", "r", "h", "lambda"});
    for (std::size_t i = 0; i < state.trajectory.size(); ++i) {
      const auto& q = state.trajectory[i];
      csv.row({std::to_string(i), CsvWriter::num(q.r), CsvWriter::num(q.h),
               CsvWriter::num(q.lambda)});
    }
  }
  emit(cfg, csv.str());
  return kExitOk;
}

int cmd_pohozaev(const RunConfig& cfg) {
  SpectralParams p = cfg.params();
  PotentialModel flat = PotentialModel::flat(p);
  HalfBallDomain dom = HalfBallDomain::make(Point(p.N, 0.0), cfg.ball_delta);
  ResidualReport rep;
  if (cfg.which == "translation") {
    FieldPair pair;
    pair.u = {FieldSpec::Kind::bubble, 1};
    pair.xi = {FieldSpec::Kind::zi, 1};
    rep = translation_identity_residual(p, pair, dom, flat, 1.0, 1, cfg.quad());
  } else if (cfg.which == "dilation") {
    FieldPair pair;
    pair.u = {FieldSpec::Kind::bubble, 1};
    pair.xi = {FieldSpec::Kind::bubble, 1};
    rep = dilation_identity_residual(p, pair, dom, flat, 1.0, Point(p.N, 0.0), cfg.quad());
  } else {
    throw CLI::ValidationError("--which must be translation or dilation");
  }
  CsvWriter csv;
  csv.row({"which", "delta", "lhs", "rhs", "abs_residual", "rel_residual", "passed"});
  csv.row({cfg.which, CsvWriter::num(cfg.ball_delta), CsvWriter::num(rep.lhs),
           CsvWriter::num(rep.rhs), CsvWriter::num(rep.abs_residual),
           CsvWriter::num(rep.rel_residual), rep.passed ? "1" : "0"});
  emit(cfg, csv.str());
  return rep.passed ? kExitOk : kExitCheckFailed;
}

int cmd_norms(const RunConfig& cfg) {
  SpectralParams p = cfg.params();
  PotentialModel pot = cfg.potential();
  ConstantsTable c = compute_constants(p, pot, cfg.quad());
  double mu = mu_scaling(p, pot.m, cfg.k);
  double h0 = solve_h0(p, c, cfg.k);
  double h = cfg.h > 0.0 ? cfg.h : h0;
  double lam = solve_lambda0(p, c, cfg.k, mu * pot.r0, h0);
  CylinderConfig cyl = build_cylinder_config(p, pot.m, cfg.k, mu * pot.r0, h, lam);
  double tau = cfg.tau > 0.0 ? cfg.tau : 0.8;
  NormSpec spec = NormSpec::make(p, pot.m, tau, cyl);
  auto pts = build_sample_set(cyl);
  SampledField W, lk;
  for (const auto& y : pts) {
    W.points.push_back(y);
    W.values.push_back(symmetric_sum_value(p, cyl, y));
    lk.points.push_back(y);
    lk.values.push_back(lk_J1(p, cyl, pot, y) + lk_J2(p, cyl, pot, y));
  }
  CsvWriter csv;
  csv.row({"field", "norm", "value"});
  csv.row({"W", "star", CsvWriter::num(star_norm(p, W, spec))});
  csv.row({"W", "dstar", CsvWriter::num(dstar_norm(p, W, spec))});
  csv.row({"l_k", "dstar", CsvWriter::num(dstar_norm(p, lk, spec))});
  emit(cfg, csv.str());
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  auto results = run_acceptance(cfg);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.id << " " << r.name << "  "
              << r.detail << "\n";
  }
  emit(cfg, acceptance_csv(results));
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracbubble: bubble configurations, reduced energy and identity checks"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "key = value config file (flags override)");
  app.add_option("--n", cfg.N, "dimension N (>= 3)");
  app.add_option("--s", cfg.s, "fractional order s");
  app.add_option("--m", cfg.m, "potential flatness exponent m");
  app.add_option("--k", cfg.k, "points per circle");
  app.add_option("--tau", cfg.tau, "sum exponent / norm weight tau");
  app.add_option("--h", cfg.h, "relative cylinder height");
  app.add_option("--tol", cfg.tol, "quadrature relative tolerance");
  app.add_option("--level", cfg.level, "quadrature refinement level");
  app.add_option("--theta", cfg.theta_box, "parameter-box exponent theta");
  app.add_option("--delta", cfg.ball_delta, "half-ball radius (pohozaev)");
  app.add_option("--which", cfg.which, "pohozaev identity: translation | dilation");
  app.add_option("--out", cfg.out, "output CSV path (default stdout)");
  app.add_flag("--trace", cfg.trace, "dump the iterate trajectory (critical)");

  auto* c_constants = app.add_subcommand("constants", "expansion constants table");
  auto* c_config = app.add_subcommand("config", "cylinder configuration points");
  auto* c_sums = app.add_subcommand("sums", "lattice sums, exact vs asymptotic");
  auto* c_energy = app.add_subcommand("energy", "reduced energy at the critical data");
  auto* c_critical = app.add_subcommand("critical", "critical point and boundary signs");
  auto* c_pohozaev = app.add_subcommand("pohozaev", "identity residual on a half ball");
  auto* c_norms = app.add_subcommand("norms", "weighted norms of W and l_k");
  auto* c_verify = app.add_subcommand("verify", "run the full verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      RunConfig from_file;
      apply_config_file(from_file, config_path);
      // flags override: reparse over the file-loaded defaults
      cfg = from_file;
      CLI::App reparse{"reparse"};
      reparse.allow_extras();
      reparse.add_option("--n", cfg.N);
      reparse.add_option("--s", cfg.s);
      reparse.add_option("--m", cfg.m);
      reparse.add_option("--k", cfg.k);
      reparse.add_option("--tau", cfg.tau);
      reparse.add_option("--h", cfg.h);
      reparse.add_option("--tol", cfg.tol);
      reparse.add_option("--level", cfg.level);
      reparse.add_option("--theta", cfg.theta_box);
      reparse.add_option("--delta", cfg.ball_delta);
      reparse.add_option("--which", cfg.which);
      reparse.add_option("--out", cfg.out);
      reparse.add_flag("--trace", cfg.trace);
      std::vector<std::string> args(argv + 1, argv + argc);
      reparse.parse(args);
    }
    std::cerr << "# resolved: " << cfg.describe() << "\n";
    cfg.params();      // validate
    cfg.potential();   // validate
    if (*c_constants) return cmd_constants(cfg);
    if (*c_config) return cmd_config(cfg);
    if (*c_sums) return cmd_sums(cfg);
    if (*c_energy) return cmd_energy(cfg);
    if (*c_critical) return cmd_critical(cfg);
    if (*c_pohozaev) return cmd_pohozaev(cfg);
    if (*c_norms) return cmd_norms(cfg);
    if (*c_verify) return cmd_verify(cfg);
    return kExitUsage;
  } catch (const CLI::ParseError&) {
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << " (best=" << e.best_estimate
              << ", bound=" << e.error_bound << ")\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}
