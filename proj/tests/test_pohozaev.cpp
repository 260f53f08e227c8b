#include <cmath>

#include "doctest.h"
#include "fracbubble/pohozaev.hpp"

using namespace fracbubble;

namespace {
const SpectralParams P3 = SpectralParams::make(3, 0.3);
const SpectralParams P4 = SpectralParams::make(4, 0.5);
const QuadratureSpec Q{};
}  // namespace

TEST_CASE("weighted hemisphere area against the Beta closed form") {
  for (const auto* pp : {&P3, &P4}) {
    const SpectralParams& p = *pp;
    for (double delta : {1.0, 2.0}) {
      HalfBallDomain dom = HalfBallDomain::make(Point(p.N, 0.0), delta);
      double got = weighted_hemisphere_integral(
          p, [](const Point&, double) { return 1.0; }, dom, Q);
      double want = std::pow(delta, p.N + 1.0 - 2.0 * p.s) * sphere_area(p.N) * 0.5 *
                    beta_function(0.5 * p.N, 1.0 - p.s);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
  }
  // frozen anchor: N=3, s=0.3, delta=2
  HalfBallDomain dom = HalfBallDomain::make(Point(3, 0.0), 2.0);
  CHECK(weighted_hemisphere_integral(P3, [](const Point&, double) { return 1.0; }, dom, Q) ==
        doctest::Approx(69.249437508875433).epsilon(1e-9));
  CHECK_THROWS_AS(HalfBallDomain::make(Point(3, 0.0), 0.0), std::invalid_argument);
}

TEST_CASE("odd integrands vanish; the weight cancels for f = t^{2s-1}") {
  HalfBallDomain dom = HalfBallDomain::make(Point(3, 0.0), 1.5);
  double odd = weighted_hemisphere_integral(
      P3, [](const Point& y, double) { return y[0]; }, dom, Q);
  CHECK(std::abs(odd) <= 1e-10);
  // t^{2s-1} cancels the weight: the plain hemisphere area delta^N |S^N| / 2
  double got = weighted_hemisphere_integral(
      P3, [](const Point&, double t) { return std::pow(t, 2.0 * 0.3 - 1.0); }, dom, Q);
  double want = std::pow(1.5, 3.0) * 0.5 * sphere_area(4);
  CHECK(got == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("translation identity for the bubble against Z_1") {
  for (const auto* pp : {&P3, &P4}) {
    const SpectralParams& p = *pp;
    HalfBallDomain dom = HalfBallDomain::make(Point(p.N, 0.0), 3.0);
    FieldPair pair;
    pair.u = {FieldSpec::Kind::bubble, 1};
    pair.xi = {FieldSpec::Kind::zi, 1};
    PotentialModel flat = PotentialModel::flat(p);
    ResidualReport rep = translation_identity_residual(p, pair, dom, flat, 1.0, 1, Q);
    CHECK(rep.rel_residual <= 1e-3);
    CHECK(rep.passed);
    // with K == 1 both sides equal the pure boundary term
    CHECK(rep.rhs != 0.0);
  }
}

TEST_CASE("translation identity residual drops when the mesh is halved") {
  HalfBallDomain dom = HalfBallDomain::make(Point(3, 0.0), 3.0);
  FieldPair pair;
  pair.u = {FieldSpec::Kind::bubble, 1};
  pair.xi = {FieldSpec::Kind::zi, 1};
  PotentialModel flat = PotentialModel::flat(P3);
  ResidualReport coarse = translation_identity_residual(P3, pair, dom, flat, 1.0, 1, Q);
  QuadratureSpec fine = Q;
  fine.level = 1;
  ResidualReport refined = translation_identity_residual(P3, pair, dom, flat, 1.0, 1, fine);
  CHECK(refined.rel_residual * 4.0 <= coarse.rel_residual);
}

TEST_CASE("translation identity trivial cases") {
  HalfBallDomain dom = HalfBallDomain::make(Point(3, 0.0), 2.0);
  PotentialModel flat = PotentialModel::flat(P3);
  FieldPair zero;
  zero.u = {FieldSpec::Kind::bubble, 1};
  zero.xi = {FieldSpec::Kind::zero, 1};
  ResidualReport rep = translation_identity_residual(P3, zero, dom, flat, 1.0, 1, Q);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.rhs == 0.0);
  CHECK(rep.passed);
  // radial xi: both sides vanish by the first sphere moment
  FieldPair radial;
  radial.u = {FieldSpec::Kind::bubble, 1};
  radial.xi = {FieldSpec::Kind::z0, 1};
  ResidualReport rep2 = translation_identity_residual(P3, radial, dom, flat, 1.0, 2, Q);
  CHECK(rep2.lhs == 0.0);
  CHECK(rep2.rhs == 0.0);
  CHECK_THROWS_AS(translation_identity_residual(P3, radial, dom, flat, 1.0, 5, Q),
                  std::out_of_range);
  // mismatched direction for an l=1 xi
  FieldPair mism;
  mism.u = {FieldSpec::Kind::bubble, 1};
  mism.xi = {FieldSpec::Kind::zi, 2};
  CHECK_THROWS_AS(translation_identity_residual(P3, mism, dom, flat, 1.0, 1, Q),
                  std::invalid_argument);
}

TEST_CASE("dilation identity: boundary terms cancel for the bubble pair") {
  for (const auto* pp : {&P3, &P4}) {
    const SpectralParams& p = *pp;
    PotentialModel flat = PotentialModel::flat(p);
    FieldPair pair;
    pair.u = {FieldSpec::Kind::bubble, 1};
    pair.xi = {FieldSpec::Kind::bubble, 1};
    for (double delta : {3.0, 6.0}) {
      HalfBallDomain dom = HalfBallDomain::make(Point(p.N, 0.0), delta);
      ResidualReport rep = dilation_identity_residual(p, pair, dom, flat, 1.0,
                                                      Point(p.N, 0.0), Q);
      REQUIRE(rep.details.size() == 6);
      CHECK(rep.lhs == 0.0);  // K == 1
      CHECK(rep.rel_residual <= 1e-3);
      CHECK(rep.passed);
    }
  }
}

TEST_CASE("dilation identity input validation and trivial cases") {
  PotentialModel flat = PotentialModel::flat(P3);
  HalfBallDomain dom = HalfBallDomain::make(Point(3, 0.0), 2.0);
  FieldPair pair;
  pair.u = {FieldSpec::Kind::bubble, 1};
  pair.xi = {FieldSpec::Kind::zero, 1};
  ResidualReport rep = dilation_identity_residual(P3, pair, dom, flat, 1.0, Point(3, 0.0), Q);
  for (double t : rep.details) CHECK(t == 0.0);
  FieldPair l1;
  l1.u = {FieldSpec::Kind::bubble, 1};
  l1.xi = {FieldSpec::Kind::zi, 1};
  CHECK_THROWS_AS(dilation_identity_residual(P3, l1, dom, flat, 1.0, Point(3, 0.0), Q),
                  std::invalid_argument);
  Point outside{5.0, 0.0, 0.0};
  FieldPair bb;
  bb.u = {FieldSpec::Kind::bubble, 1};
  bb.xi = {FieldSpec::Kind::bubble, 1};
  CHECK_THROWS_AS(dilation_identity_residual(P3, bb, dom, flat, 1.0, outside, Q),
                  std::invalid_argument);
}

TEST_CASE("dilation identity is insensitive to x0 for radial pairs") {
  PotentialModel flat = PotentialModel::flat(P3);
  HalfBallDomain dom = HalfBallDomain::make(Point(3, 0.0), 3.0);
  FieldPair pair;
  pair.u = {FieldSpec::Kind::bubble, 1};
  pair.xi = {FieldSpec::Kind::z0, 1};
  ResidualReport at0 = dilation_identity_residual(P3, pair, dom, flat, 1.0, Point(3, 0.0), Q);
  Point off{0.8, -0.5, 0.3};
  ResidualReport shifted = dilation_identity_residual(P3, pair, dom, flat, 1.0, off, Q);
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(at0.details[i] == doctest::Approx(shifted.details[i]).epsilon(1e-14));
}

TEST_CASE("large-delta decay trend of the translation identity sides (s <= 1/2)") {
  // with K == 1 both sides reduce to the flat boundary term, which must
  // decay at the algebraic envelope rate as the ball grows
  PotentialModel flat = PotentialModel::flat(P3);
  FieldPair pair;
  pair.u = {FieldSpec::Kind::bubble, 1};
  pair.xi = {FieldSpec::Kind::zi, 1};
  double prev = 1e300;
  for (double delta : {4.0, 8.0, 16.0}) {
    HalfBallDomain dom = HalfBallDomain::make(Point(3, 0.0), delta);
    ResidualReport rep = translation_identity_residual(P3, pair, dom, flat, 1.0, 1, Q);
    CHECK(std::abs(rep.lhs) < prev);
    prev = std::abs(rep.lhs);
  }
}
