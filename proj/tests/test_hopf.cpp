#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "acl/error.hpp"
#include "acl/hopf.hpp"
#include "acl/solver.hpp"

using namespace acl;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

SpherePoint random_point(std::mt19937_64& rng, int N, double a = 1.0, double b = 2.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SpherePoint pt;
  pt.r = a + (b - a) * u(rng);
  for (int i = 0; i < N; ++i) pt.t.push_back(0.5 * std::numbers::pi * u(rng));
  for (int i = 0; i <= N; ++i) pt.theta.push_back(two_pi * u(rng));
  return pt;
}

double norm(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double dist(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
  return std::sqrt(s);
}

double angle_gap(double a, double b) {
  const double d = std::fmod(std::abs(a - b), two_pi);
  return std::min(d, two_pi - d);
}

SolutionField bump_field(double c = 0.0) {
  ProblemParams pp;
  pp.eps = annulus_eps(1, 0.0, 0.2);
  auto f = make_grid(pp, {});
  for (std::size_t i = 0; i < f.ns(); ++i)
    for (std::size_t j = 0; j < f.nt(); ++j)
      f.at(i, j) = c != 0.0 ? c : std::exp(-std::pow(f.s[i] - 2.0, 2) - 3.0 * f.t[j] * f.t[j]);
  return f;
}

} // namespace

TEST(Embed, DegenerateAngles) {
  for (int N = 1; N <= 3; ++N) {
    SpherePoint pt{1.0, std::vector<double>(N, 0.0), std::vector<double>(N + 1, 0.0)};
    const auto x = embed(pt);
    ASSERT_EQ(x.size(), static_cast<std::size_t>(2 * N + 2));
    EXPECT_EQ(x[0], 1.0);
    for (std::size_t k = 1; k < x.size(); ++k) EXPECT_EQ(x[k], 0.0);
  }
}

TEST(Embed, NormIsRadius) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 1000; ++k) {
    const auto pt = random_point(rng, 1 + k % 3);
    EXPECT_NEAR(norm(embed(pt)), pt.r, 1e-12 * pt.r);
  }
}

TEST(Embed, InjectiveOnInterior) {
  std::mt19937_64 rng(2);
  double closest = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 2000; ++k) {
    const auto p = random_point(rng, 1), q = random_point(rng, 1);
    const double angles = std::abs(p.r - q.r) + std::abs(p.t[0] - q.t[0]) + angle_gap(p.theta[0], q.theta[0]) +
                          angle_gap(p.theta[1], q.theta[1]);
    if (angles > 1e-3) closest = std::min(closest, dist(embed(p), embed(q)) / angles);
  }
  EXPECT_GT(closest, 0.0);
}

TEST(Embed, RejectsBadAngles) {
  SpherePoint pt{1.0, {2.0}, {0.0, 0.0}};
  EXPECT_THROW(embed(pt), DomainError);
  pt = {1.0, {0.1}, {0.0, 7.0}};
  EXPECT_THROW(embed(pt), DomainError);
}

TEST(Action, IdentityAndPeriodicity) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 100; ++k) {
    const auto pt = random_point(rng, 2);
    EXPECT_EQ(embed(act(pt, 0.0)), embed(pt));
    const auto x = embed(pt), y = embed(act(pt, two_pi));
    EXPECT_LT(dist(x, y), 1e-12);
  }
}

TEST(Action, GroupLaw) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const auto pt = random_point(rng, 1);
    const auto a = embed(act(act(pt, 1.1), 2.7)), b = embed(act(pt, 3.8));
    EXPECT_LT(dist(a, b), 1e-12);
  }
}

TEST(Action, FixedPointFree) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double delta = 1e-3;
  double least = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 10000; ++k) {
    const auto pt = random_point(rng, 1 + k % 2);
    const double tau = delta + (two_pi - 2 * delta) * u(rng);
    least = std::min(least, dist(embed(act(pt, tau)), embed(pt)));
  }
  EXPECT_GT(least, 0.0);
  EXPECT_GE(least, 2.0 * std::sin(0.5 * delta) * (1.0 - 1e-9));
}

TEST(Quotient, EqualPhasesGiveZero) {
  SpherePoint pt{1.5, {0.3, 0.7}, {1.2, 1.2, 1.2}};
  for (double psi : quotient_coords(pt).psi) EXPECT_EQ(psi, 0.0);
}

TEST(Quotient, InvariantUnderAction) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    const auto pt = random_point(rng, 1 + k % 3);
    const auto q0 = quotient_coords(pt), q1 = quotient_coords(act(pt, 1.3));
    EXPECT_EQ(q0.r, q1.r);
    EXPECT_EQ(q0.t, q1.t);
    for (std::size_t i = 0; i < q0.psi.size(); ++i) EXPECT_LT(angle_gap(q0.psi[i], q1.psi[i]), 1e-12);
  }
}

TEST(Quotient, RadialCoordinateAgreesWithEmbedding) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 200; ++k) {
    const auto pt = random_point(rng, 1);
    EXPECT_NEAR(cp_radial(embed(pt)), cp_radial(quotient_coords(pt)), 1e-12);
  }
}

TEST(LiftMap, ConstantField) {
  ProblemParams pp;
  pp.eps = annulus_eps(1, 0.0, 0.2);
  const Lift lift(bump_field(2.5), pp);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) EXPECT_NEAR(lift(random_point(rng, 1)), 2.5, 1e-13);
}

TEST(LiftMap, OrbitInvariantExactly) {
  ProblemParams pp;
  pp.eps = annulus_eps(1, 0.0, 0.2);
  const Lift lift(bump_field(), pp);
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, two_pi);
  for (int k = 0; k < 500; ++k) {
    const auto pt = random_point(rng, 1);
    const double v = lift(pt);
    for (int m = 0; m < 4; ++m) EXPECT_EQ(lift(act(pt, u(rng))), v);
  }
}

TEST(LiftMap, DependsOnlyOnQuotient) {
  ProblemParams pp;
  pp.eps = annulus_eps(1, 0.0, 0.2);
  const Lift lift(bump_field(), pp);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, two_pi);
  for (int k = 0; k < 500; ++k) {
    auto p = random_point(rng, 1);
    // Second representative: same (r, t, psi), different base phase.
    auto q = p;
    const double shift = u(rng);
    for (double& th : q.theta) th = std::fmod(th + shift, two_pi);
    EXPECT_EQ(lift(p), lift(q));
  }
}

TEST(LiftMap, OutsideAnnulusIsDomainError) {
  ProblemParams pp;
  pp.eps = annulus_eps(1, 0.0, 0.2);
  const Lift lift(bump_field(), pp);
  SpherePoint pt{2.5, {0.2}, {0.0, 0.0}};
  EXPECT_THROW(lift(pt), DomainError);
}
