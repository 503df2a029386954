#pragma once

#include <span>
#include <string>
#include <vector>

#include "acl/geometry.hpp"
#include "acl/ground_state.hpp"

namespace acl {

// Smooth plateau: 1 for |x| <= gamma, 0 for |x| >= 2 gamma, built from the
// step e^{-1/z} / (e^{-1/z} + e^{-1/(1-z)}).
double cutoff(std::span<const double> x, double gamma);
double cutoff_radial(double rho, double gamma);
double cutoff_radial_deriv(double rho, double gamma);

inline constexpr const char* cutoff_description =
    "phi(rho) = h(z)/(h(z)+h(1-z)), z = (2 gamma - rho)/gamma, h(x) = exp(-1/x) for x > 0";

struct TestFunctionParams {
  double gamma = 0.0;  // 0 selects 1/8 of the reduced interval length
  double t = 1.0;
  Side side = Side::inner;
  double eps = 0.05;   // reduced-equation eps
  GroundState ground;  // profile already rescaled to its kappa

  double gamma_for(const ReducedGeometry& geom) const;
};

// Half-space moments of the ground state entering the expansion.
struct ExpansionMoments {
  double K0 = 0;  // int |grad U|^2
  double P0 = 0;  // int U^2/2 - F(U)
  double K1 = 0;  // int |grad U|^2 y_n
  double T1 = 0;  // int |grad' U|^2 y_n, tangential part
  double P1 = 0;  // int (U^2/2 - F(U)) y_n
};

ExpansionMoments expansion_moments(const GroundState& gs, int N);

// Curvature of the boundary component seen from inside the manifold, in the
// frame whose normal coordinate increases into M: -1/s_min and +1/s_max.
double fermi_curvature(Side side, const ReducedGeometry& geom);

// The expansion coefficients as functions of the dilation t. The first-order
// terms come in two versions: one re-derived from the metric and weight
// expansions, and one transcribed from the assembled formula with
// H = h = -1/s(P0).
struct ExpansionTerms {
  int N = 1;
  Side side = Side::inner;
  double s0 = 0, weight_kappa = 0, eta = 0, H = 0, h = 0;
  ExpansionMoments mom;

  double I1(double t) const;
  double dI1(double t) const;
  double I2(double t) const;
  double I3(double t) const;
  double I2_printed(double t) const;
  double I3_printed(double t) const;
};

ExpansionTerms make_expansion_terms(const GroundState& gs, Side side, const ReducedGeometry& geom);

struct OrderRow {
  double eps = 0;
  double measured = 0;
  double predicted = 0;
  double residual = 0;
  double predicted_printed = 0;
  double residual_printed = 0;
};

struct ExpansionReport {
  ExpansionTerms terms;
  std::vector<double> t, I1, I2, I3, I2_printed, I3_printed;
  double argmax_t = 0;
  double t_step = 0;
  double dI1_at_1 = 0;
  double curvature_functional = 0;
  double curvature_identity_rhs = 0;
  double curvature_identity_residual = 0;
  std::vector<OrderRow> order;
  std::vector<double> ratios, printed_ratios;
};

// t-sweep of I1, I2, I3 on 64 points of (0, 2].
ExpansionReport expansion_terms(const TestFunctionParams& tf, const ReducedGeometry& geom);

// Value of Z at reduced coordinates (s, t1), the peak sitting at the pole
// t1 = 0 of the chosen boundary component.
double test_function_value(const TestFunctionParams& tf, const ReducedGeometry& geom, double s, double t1);

// Gamma_eps(Z) on the reduced manifold in polar coordinates about the peak, with
// the exact weight |s|^{-eta}.
double gamma_eps_of_Z(const TestFunctionParams& tf, const ReducedGeometry& geom);

// Fills report.order and the Richardson ratios R(eps_k)/R(eps_{k+1}).
void measure_order(ExpansionReport& report, const TestFunctionParams& tf, const ReducedGeometry& geom,
                   std::span<const double> eps_list);

// L(p, U): curvature functional with the Fermi-frame curvature.
double curvature_functional(Side side, const GroundState& gs, const ReducedGeometry& geom);

} // namespace acl
