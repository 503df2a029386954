#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "acl/error.hpp"
#include "acl/expansion.hpp"
#include "support.hpp"

using namespace acl;

namespace {

struct Setup {
  ProblemParams pp;
  ReducedGeometry geom;
  TestFunctionParams tf;
};

Setup make(Side side, double alpha = 0.0) {
  Setup s;
  s.pp.alpha = alpha;
  s.geom = ReducedGeometry::from(s.pp);
  s.tf.side = side;
  s.tf.ground = GroundState::compute(3, s.pp.p, s.geom.kappa(side));
  return s;
}

const Setup& inner() {
  static const Setup s = make(Side::inner);
  return s;
}

} // namespace

TEST(Cutoff, PlateauAndSupport) {
  const double g = 0.3;
  const std::vector<double> a{0.5 * g, 0.0, 0.0}, b{3.0 * g, 0.0, 0.0};
  EXPECT_EQ(cutoff(a, g), 1.0);
  EXPECT_EQ(cutoff(b, g), 0.0);
  const double mid = cutoff_radial(1.5 * g, g);
  EXPECT_GT(mid, 0.0);
  EXPECT_LT(mid, 1.0);
  double last = 1.0;
  for (double r = g; r <= 2 * g; r += g / 200) {
    const double v = cutoff_radial(r, g);
    EXPECT_LE(v, last);
    last = v;
  }
}

TEST(Cutoff, DerivativeMatchesDifferences) {
  const double g = 0.4, h = 1e-6;
  for (double r : {0.45, 0.55, 0.7}) {
    const double fd = (cutoff_radial(r + h, g) - cutoff_radial(r - h, g)) / (2 * h);
    EXPECT_NEAR(cutoff_radial_deriv(r, g), fd, 1e-7);
  }
}

TEST(Terms, CriticalDilationAtOne) {
  const auto& s = inner();
  const auto rep = expansion_terms(s.tf, s.geom);
  EXPECT_LT(std::abs(rep.dI1_at_1), 1e-6);
  EXPECT_LE(std::abs(rep.argmax_t - 1.0), rep.t_step);
  EXPECT_EQ(rep.t.size(), 64u);
}

TEST(Terms, FirstTermAtOneIsGroundEnergy) {
  for (Side side : {Side::inner, Side::outer}) {
    const auto s = make(side, 3.0);
    const auto terms = make_expansion_terms(s.tf.ground, side, s.geom);
    EXPECT_LT(test::rel(terms.I1(1.0), s.tf.ground.energy), 1e-10);
  }
}

TEST(Terms, FlatBoundaryHasNoCurvatureTerm) {
  const auto& s = inner();
  auto terms = make_expansion_terms(s.tf.ground, Side::inner, s.geom);
  terms.H = 0.0;
  terms.h = 0.0;
  for (double t : {0.5, 1.0, 1.5}) {
    EXPECT_EQ(terms.I3(t), 0.0);
  }
}

TEST(Curvature, CompanionIdentity) {
  for (Side side : {Side::inner, Side::outer}) {
    const auto s = make(side);
    const auto rep = expansion_terms(s.tf, s.geom);
    EXPECT_LT(rep.curvature_identity_residual, 1e-6);
  }
}

TEST(Curvature, InnerSignIsNegative) {
  const auto& s = inner();
  EXPECT_LT(fermi_curvature(Side::inner, s.geom), 0.0);
  EXPECT_LT(curvature_functional(Side::inner, s.tf.ground, s.geom), 0.0);
  EXPECT_GT(expansion_moments(s.tf.ground, 1).K1, 0.0);
}

TEST(Quadrature, VanishingDilation) {
  auto s = inner();
  s.tf.eps = 0.04;
  s.tf.t = 2e-3;
  const double g2 = gamma_eps_of_Z(s.tf, s.geom);
  s.tf.t = 1e-3;
  const double g1 = gamma_eps_of_Z(s.tf, s.geom);
  // Only the t^{2N-1} gradient term survives as t -> 0.
  EXPECT_GT(g1, 0.0);
  EXPECT_NEAR(g1 / g2, 0.5, 0.01);
}

TEST(Quadrature, LeadingOrderAtSmallEps) {
  auto s = inner();
  s.tf.eps = 0.02;
  const double scaled = gamma_eps_of_Z(s.tf, s.geom) / std::pow(s.tf.eps, 3);
  EXPECT_LT(test::rel(scaled, s.tf.ground.energy), 0.05);
}

TEST(Quadrature, FermiDistanceIsOffsetInS) {
  const auto& s = inner();
  auto tf = s.tf;
  tf.eps = 0.05;
  // Along the pole ray the test function depends on s - s_min only.
  for (double x : {0.0, 0.02, 0.1}) {
    const double v = test_function_value(tf, s.geom, s.geom.s_min + x, 0.0);
    EXPECT_NEAR(v, tf.ground.profile.value(x / tf.eps), 1e-12);
  }
}

TEST(Quadrature, ChartOverflowIsDomainError) {
  auto s = inner();
  s.tf.gamma = 0.5 * s.geom.length();
  s.tf.eps = 0.05;
  EXPECT_THROW(gamma_eps_of_Z(s.tf, s.geom), DomainError);
}

TEST(Order, RichardsonRatios) {
  const auto& s = inner();
  auto rep = expansion_terms(s.tf, s.geom);
  const std::vector<double> eps{0.08, 0.04, 0.02};
  measure_order(rep, s.tf, s.geom, eps);
  ASSERT_EQ(rep.ratios.size(), 2u);
  for (double r : rep.ratios) {
    EXPECT_GE(r, 3.2);
    EXPECT_LE(r, 4.8);
  }
  // The transcribed first-order terms leave an O(eps) residual.
  for (double r : rep.printed_ratios) EXPECT_LT(r, 2.5);
}

TEST(Order, OuterBoundaryAtLargeAlpha) {
  const auto s = make(Side::outer, 3.0);
  auto rep = expansion_terms(s.tf, s.geom);
  const std::vector<double> eps{0.08, 0.04};
  measure_order(rep, s.tf, s.geom, eps);
  EXPECT_GE(rep.ratios.at(0), 3.2);
  EXPECT_LE(rep.ratios.at(0), 4.8);
}

TEST(Path, UpperBoundAlongDilations) {
  const auto& s = inner();
  double last_excess = 1e300;
  for (double eps : {0.08, 0.04}) {
    auto tf = s.tf;
    tf.eps = eps;
    double best = -1e300;
    for (double t = 0.8; t <= 1.2001; t += 0.05) {
      tf.t = t;
      best = std::max(best, gamma_eps_of_Z(tf, s.geom) / std::pow(eps, 3));
    }
    const double excess = best - s.tf.ground.energy;
    EXPECT_LT(excess, last_excess);
    EXPECT_LT(excess / s.tf.ground.energy, 2.0 * eps);
    last_excess = excess;
  }
}

TEST(Path, NegativeBeyondZeroOfFirstTerm) {
  auto s = inner();
  const auto terms = make_expansion_terms(s.tf.ground, Side::inner, s.geom);
  double t0 = 1.0;
  while (terms.I1(t0) > 0.0) t0 += 0.01;
  s.tf.t = t0 + 0.1;
  s.tf.gamma = s.geom.length() / 10.0;
  s.tf.eps = 0.04;
  EXPECT_LT(gamma_eps_of_Z(s.tf, s.geom), 0.0);
}
