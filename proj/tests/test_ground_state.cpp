#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "acl/error.hpp"
#include "acl/ground_state.hpp"
#include "support.hpp"

using namespace acl;

namespace {

// Independent coarse-bracket shooting values, pinned before the solver was written.
constexpr double v0_d3_p3 = 4.337387679977136;
constexpr double v0_d3_p2 = 4.191682954442827;
constexpr double v0_d5_p2 = 26.292861256762123;

const GroundState& cached(int d, double p, double kappa) {
  static std::vector<std::pair<std::tuple<int, double, double>, GroundState>> cache;
  for (const auto& [key, gs] : cache)
    if (key == std::make_tuple(d, p, kappa)) return gs;
  cache.emplace_back(std::make_tuple(d, p, kappa), GroundState::compute(d, p, kappa));
  return cache.back().second;
}

} // namespace

TEST(Shoot, OneDimensionalSoliton) {
  const auto V = shoot_ground_state(1, 3.0);
  EXPECT_NEAR(V.value(0.0), std::sqrt(2.0), 1e-10);
  double err = 0.0;
  for (double x = 0.0; x <= V.back(); x += 0.0013) err = std::max(err, std::abs(V.value(x) - std::sqrt(2.0) / std::cosh(x)));
  EXPECT_LT(err, 1e-8);
}

TEST(Shoot, PinnedCentralValues) {
  EXPECT_NEAR(shoot_ground_state(3, 3.0).value(0.0), v0_d3_p3, 1e-8 * v0_d3_p3);
  EXPECT_NEAR(shoot_ground_state(3, 2.0).value(0.0), v0_d3_p2, 1e-8 * v0_d3_p2);
  EXPECT_NEAR(shoot_ground_state(5, 2.0).value(0.0), v0_d5_p2, 1e-8 * v0_d5_p2);
}

TEST(Shoot, MonotoneDecreasingAndDecayed) {
  for (auto [d, p] : {std::pair{1, 3.0}, {3, 2.0}, {3, 3.0}, {5, 2.0}}) {
    const auto V = shoot_ground_state(d, p);
    EXPECT_EQ(V.derivs().front(), 0.0);
    EXPECT_GT(V.value(0.0), 1.0);
    for (std::size_t k = 1; k < V.size(); ++k) EXPECT_LT(V.derivs()[k], 0.0) << "d=" << d << " r=" << V.grid()[k];
    EXPECT_LT(V.values().back(), 1e-9);
  }
}

TEST(Shoot, SupercriticalIsDomainError) {
  EXPECT_THROW(shoot_ground_state(3, 7.0), DomainError);
  EXPECT_THROW(shoot_ground_state(3, 5.0), DomainError);
}

TEST(Rescale, UnitKappaIsIdentity) {
  const auto V = shoot_ground_state(3, 2.0);
  const auto U = rescale_to_kappa(V, 1.0);
  for (double r : {0.0, 0.5, 3.0, 10.0}) EXPECT_DOUBLE_EQ(U.value(r), V.value(r));
  EXPECT_THROW(rescale_to_kappa(V, 0.0), DomainError);
}

TEST(Rescale, SolvesScaledEquation) {
  const double kappa = 2.0, p = 2.0;
  const int d = 3;
  const auto U = rescale_to_kappa(shoot_ground_state(d, p), kappa);
  EXPECT_DOUBLE_EQ(U.value(0.0), shoot_ground_state(d, p).value(0.0));
  const double h = 1e-4;
  double worst = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double r = 0.1 * k;
    const double upp = (U.deriv(r + h) - U.deriv(r - h)) / (2 * h);
    const double u = U.value(r);
    const double res = upp + (d - 1) / r * U.deriv(r) - u / kappa + std::pow(u, p) / kappa;
    worst = std::max(worst, std::abs(res) / U.value(0.0));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Rescale, EnergyScalingLaw) {
  const double g1 = cached(3, 2.0, 1.0).energy;
  for (double kappa : {0.5, 2.0, 5.0}) {
    const double gk = cached(3, 2.0, kappa).energy;
    EXPECT_LT(test::rel(gk / g1, std::pow(kappa, 0.5)), 1e-6);
  }
}

TEST(Rescale, EnergyIncreasingInKappa) {
  double last = 0.0;
  for (double kappa : {0.5, 1.0, 2.0, 5.0}) {
    const double g = cached(3, 2.0, kappa).energy;
    EXPECT_GT(g, last);
    last = g;
  }
}

TEST(Moments, AngularConstants) {
  for (int d : {2, 3, 5})
    for (int m = 0; m <= 3; ++m) EXPECT_LT(test::rel(angular_constant(d, m), angular_constant_quadrature(d, m)), 1e-10);
  EXPECT_NEAR(angular_constant(3, 0), 2.0 * std::numbers::pi, 1e-14);
}

TEST(Moments, HalfOfFullSpace) {
  const auto V = shoot_ground_state(3, 2.0);
  const double half = half_space_moment(V, 3, 0, Integrand::value_sq, 2.0);
  const double full = 4.0 * std::numbers::pi * radial_integral(V, 2, Integrand::value_sq, 2.0);
  EXPECT_LT(test::rel(half, 0.5 * full), 1e-12);
}

TEST(Moments, TangentialAndNormalSplits) {
  const auto& gs = cached(3, 2.0, 1.0);
  const auto& V = gs.profile;
  const double g0 = half_space_moment(V, 3, 0, Integrand::grad_sq, 2.0);
  EXPECT_LT(test::rel(half_space_moment(V, 3, 0, Integrand::grad_tangential_sq, 2.0), g0 / 3.0), 1e-6);
  const double g1 = half_space_moment(V, 3, 1, Integrand::grad_sq, 2.0);
  EXPECT_LT(test::rel(half_space_moment(V, 3, 1, Integrand::grad_normal_sq, 2.0), 2.0 / 4.0 * g1), 1e-6);
}

TEST(Identities, AllResidualsSmall) {
  for (auto [d, p] : {std::pair{3, 2.0}, {3, 3.0}, {5, 2.0}})
    for (double kappa : {1.0, 2.0}) {
      const auto rep = verify_identities(cached(d, p, kappa));
      EXPECT_EQ(rep.entries.size(), 9u);
      for (const auto& e : rep.entries) EXPECT_LT(e.residual, 1e-6) << e.name << " m=" << e.m << " d=" << d;
      EXPECT_LT(rep.pohozaev_residual, 1e-6);
      EXPECT_LT(rep.nehari_residual, 1e-6);
    }
}

TEST(Identities, PrintedPohozaevDoesNotVanish) {
  for (auto [d, p] : {std::pair{3, 2.0}, {3, 3.0}, {5, 2.0}}) {
    const auto rep = verify_identities(cached(d, p, 1.0));
    EXPECT_GT(rep.printed_pohozaev_residual, 0.1);
  }
}

TEST(Energy, NehariForm) {
  const auto& gs = cached(3, 3.0, 1.0);
  const double f = half_space_moment(gs.profile, 3, 0, Integrand::F, 3.0);
  // int f(V) V = (p + 1) int F(V).
  EXPECT_LT(test::rel(gs.energy, (0.5 - 1.0 / 4.0) * 4.0 * f), 1e-6);
}

TEST(Decay, FittedRates) {
  const auto s = cached(1, 3.0, 1.0).decay;
  EXPECT_NEAR(s.c, 1.0, 0.05);
  EXPECT_GT(s.C, 0.0);
  const auto d3 = cached(3, 3.0, 1.0).decay;
  EXPECT_GE(d3.c, 0.8);
  EXPECT_LE(d3.c, 1.1);
  EXPECT_GT(d3.C, 0.0);
}

TEST(Decay, NonpositiveTailIsFitError) {
  RadialProfile bad({0.0, 1.0, 2.0, 3.0}, {1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0});
  EXPECT_THROW(decay_fit(bad), FitError);
}
