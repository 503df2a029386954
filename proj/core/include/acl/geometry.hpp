#pragma once

#include <string>

#include "acl/radial_profile.hpp"

namespace acl {

// Annulus a < |x| < b in R^{2N+2}; eps is the perturbation parameter of the
// annulus equation  -eps^2 Lap u + |x|^alpha u = |x|^alpha u^p.
struct ProblemParams {
  int N = 1;
  double a = 1.0;
  double b = 2.0;
  double alpha = 0.0;
  double eps = 0.05;
  double p = 2.0;

  void validate() const;
};

enum class Side { inner, outer, interior };

std::string to_string(Side side);
Side side_from_string(const std::string& name);

double eta_exponent(int N, double alpha);
double threshold_alpha(int N);
double warp_coeff(int N);
double s_of_r(double r, int N);
double r_of_s(double s, int N);

// Second fundamental form of the level set {s = const}: -1/s times identity.
double mean_curvature(double s);

// Constant multiplying the potential after the change of variables r -> s.
double potential_constant(int N, double alpha);

// Perturbation parameters of the annulus and reduced equations.
double reduced_eps(const ProblemParams& params);
double annulus_eps(int N, double alpha, double eps_reduced);

struct ReducedGeometry {
  int N = 1;
  double s_min = 0.0;
  double s_max = 0.0;
  double eta = 0.0;
  double alpha_star = 0.0;
  double warp_coeff = 0.0;
  double kappa_inner = 0.0;
  double kappa_outer = 0.0;

  static ReducedGeometry from(const ProblemParams& params);

  double length() const { return s_max - s_min; }
  double kappa(Side side) const;
  double boundary_s(Side side) const;
};

// Exact |s(q)|^{-eta} at Fermi distance x from the chosen boundary, and its
// first-order Taylor model.
double weight_expansion(Side side, double x, const ReducedGeometry& geom);
double weight_expansion_first_order(Side side, double x, const ReducedGeometry& geom);

// F(t) = t^{p+1}/(p+1) for t >= 0, zero otherwise; f = F'.
double nonlinearity_F(double t, double p);
double nonlinearity_f(double t, double p);

// |S^n| and vol(CP^N) under Fubini-Study.
double sphere_area(int n);
double cp_volume(int N);

// Energy of a radial function u(r) on [a, b], integrated over the annulus.
double energy_direct(const RadialProfile& u, const ProblemParams& params);
// Same energy written on I' = (s_min, s_max) for v(s) = u(r(s)).
double energy_reduced(const RadialProfile& v, const ProblemParams& params);

} // namespace acl
