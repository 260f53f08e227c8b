#include <cmath>

#include "doctest.h"
#include "fracbubble/norms.hpp"

using namespace fracbubble;

namespace {
const SpectralParams P3 = SpectralParams::make(3, 0.3);
const QuadratureSpec Q{};
const double M3 = 0.75 * P3.tau();

CylinderConfig cfg() { return build_cylinder_config(P3, M3, 6, 8.0, 0.3, 1.0); }
}  // namespace

TEST_CASE("norm spec admissibility window") {
  CylinderConfig c = cfg();
  CHECK_NOTHROW(NormSpec::make(P3, M3, 0.8, c));
  CHECK_THROWS_AS(NormSpec::make(P3, M3, 0.2, c), std::invalid_argument);   // below (tau-m)/tau
  CHECK_THROWS_AS(NormSpec::make(P3, M3, 1.15, c), std::invalid_argument);  // above 1 + eps
}

TEST_CASE("zero field has zero norm; weight function itself has norm one") {
  CylinderConfig c = cfg();
  NormSpec spec = NormSpec::make(P3, M3, 0.8, c);
  auto pts = build_sample_set(c);
  SampledField zero, wfield, dfield;
  for (const auto& y : pts) {
    zero.points.push_back(y);
    zero.values.push_back(0.0);
    wfield.points.push_back(y);
    wfield.values.push_back(star_weight(P3, spec, y));
    dfield.points.push_back(y);
    dfield.values.push_back(dstar_weight(P3, spec, y));
  }
  CHECK(star_norm(P3, zero, spec) == 0.0);
  CHECK(dstar_norm(P3, zero, spec) == 0.0);
  CHECK(star_norm(P3, wfield, spec) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dstar_norm(P3, dfield, spec) == doctest::Approx(1.0).epsilon(1e-14));
  SampledField empty;
  CHECK_THROWS_AS(star_norm(P3, empty, spec), std::invalid_argument);
}

TEST_CASE("homogeneity, subadditivity, refinement monotonicity") {
  CylinderConfig c = cfg();
  NormSpec spec = NormSpec::make(P3, M3, 0.8, c);
  auto pts = build_sample_set(c);
  SampledField u, v, cu, uv;
  for (const auto& y : pts) {
    double a = symmetric_sum_value(P3, c, y);
    double b = 1.0 / (1.0 + dot(y, y));
    u.points.push_back(y);
    u.values.push_back(a);
    v.points.push_back(y);
    v.values.push_back(b);
    cu.points.push_back(y);
    cu.values.push_back(-2.5 * a);
    uv.points.push_back(y);
    uv.values.push_back(a + b);
  }
  CHECK(star_norm(P3, cu, spec) == doctest::Approx(2.5 * star_norm(P3, u, spec)).epsilon(1e-14));
  CHECK(star_norm(P3, uv, spec) <= star_norm(P3, u, spec) + star_norm(P3, v, spec) + 1e-12);
  // norms are non-decreasing when samples are added
  SampledField partial = u;
  partial.points.resize(5);
  partial.values.resize(5);
  CHECK(star_norm(P3, partial, spec) <= star_norm(P3, u, spec) + 1e-15);
}

TEST_CASE("norm of W is stable under sample refinement") {
  CylinderConfig c = cfg();
  NormSpec spec = NormSpec::make(P3, M3, 0.8, c);
  auto pts = build_sample_set(c);
  SampledField base;
  for (const auto& y : pts) {
    base.points.push_back(y);
    base.values.push_back(symmetric_sum_value(P3, c, y));
  }
  // refine: add midpoints of consecutive sample pairs
  SampledField fine = base;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Point mid(pts[i].size());
    for (std::size_t j = 0; j < mid.size(); ++j) mid[j] = 0.5 * (pts[i][j] + pts[i + 1][j]);
    fine.points.push_back(mid);
    fine.values.push_back(symmetric_sum_value(P3, c, mid));
  }
  double nb = star_norm(P3, base, spec);
  double nf = star_norm(P3, fine, spec);
  CHECK(nf >= nb);
  CHECK(nf <= 1.05 * nb);
}

TEST_CASE("convolution estimate: bounded implied constant across radii") {
  double sigma = 0.5 * P3.tau();
  ResidualReport rep = convolution_estimate_check(P3, sigma, {0.0, 1.0, 10.0, 100.0}, Q);
  REQUIRE(rep.details.size() == 4);
  for (double v : rep.details) CHECK(v > 0.0);
  CHECK(rep.passed);
  // no growth: the large-radius ratios do not exceed the small-radius ones by 4x
  CHECK(rep.details[3] <= 4.0 * rep.details[1]);
  CHECK_THROWS_AS(convolution_estimate_check(P3, P3.tau(), {1.0}, Q), std::invalid_argument);
}

TEST_CASE("pair product bound: finite, scale-robust, symmetric at the midpoint") {
  Point xi{0, 0, 0}, xj{4, 0, 0};
  std::vector<Point> ys = {{0, 0, 0}, {4, 0, 0}, {2, 0, 0}, {1, 1, 0}, {10, -3, 2}};
  ResidualReport rep = pair_product_bound_check(P3, xi, xj, 1.5, 1.5, 1.0, ys);
  CHECK(rep.passed);
  CHECK(rep.lhs > 0.0);
  Point xj2{8, 0, 0};
  ResidualReport rep2 = pair_product_bound_check(P3, xi, xj2, 1.5, 1.5, 1.0,
                                                 {{0, 0, 0}, {8, 0, 0}, {4, 0, 0}});
  CHECK(rep2.lhs <= 2.0 * rep.lhs);
  CHECK(rep.lhs <= 2.0 * rep2.lhs);
  // alpha = beta at the midpoint: both envelope halves agree
  Point mid{2, 0, 0};
  double e1 = std::pow(1.0 + dist(mid, xi), -(1.5 + 1.5 - 1.0));
  double e2 = std::pow(1.0 + dist(mid, xj), -(1.5 + 1.5 - 1.0));
  CHECK(e1 == doctest::Approx(e2).epsilon(1e-15));
  CHECK_THROWS_AS(pair_product_bound_check(P3, xi, xj, 0.5, 1.5, 0.4, ys),
                  std::invalid_argument);
  CHECK_THROWS_AS(pair_product_bound_check(P3, xi, xj, 1.5, 1.5, 2.0, ys),
                  std::invalid_argument);
}

TEST_CASE("first-order error terms evaluate finitely on the sample set") {
  CylinderConfig c = cfg();
  PotentialModel pot = PotentialModel::defaults(P3);
  NormSpec spec = NormSpec::make(P3, M3, 0.8, c);
  auto pts = build_sample_set(c);
  SampledField lk;
  for (const auto& y : pts) {
    double v = lk_J1(P3, c, pot, y) + lk_J2(P3, c, pot, y);
    CHECK(std::isfinite(v));
    lk.points.push_back(y);
    lk.values.push_back(v);
  }
  CHECK(std::isfinite(dstar_norm(P3, lk, spec)));
  // with K == 1 the J2 term vanishes identically
  PotentialModel flat = PotentialModel::flat(P3);
  CHECK(lk_J2(P3, c, flat, pts[0]) == 0.0);
}
