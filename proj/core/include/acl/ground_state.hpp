#pragma once

#include <string>
#include <vector>

#include "acl/radial_profile.hpp"

namespace acl {

struct ShootOptions {
  double match_tol = 1e-4;  // far-field matching residual allowed
  double r_end = 25.0;
  double dr = 0.005;        // output grid spacing
  double rtol = 1e-13;
  double atol = 1e-16;
};

struct ShootReport {
  double v0 = 0.0;
  double r_match = 0.0;
  double match_residual = 0.0;
  int bisections = 0;
};

// Positive radial solution of V'' + (d-1)/r V' - V + V^p = 0 decaying at
// infinity, by bisection on V(0) between undershoot and overshoot.
RadialProfile shoot_ground_state(int d, double p, double tol = 1e-4);
RadialProfile shoot_ground_state(int d, double p, const ShootOptions& opt, ShootReport* report);

// U(x) = V(x / sqrt(kappa)), which solves Lap U - U/kappa + U^p/kappa = 0.
RadialProfile rescale_to_kappa(const RadialProfile& V, double kappa);

enum class Integrand { grad_sq, value_sq, F, grad_tangential_sq, grad_normal_sq };

// Angular constant A_{d,m} = integral of omega_d^m over the upper half sphere.
double angular_constant(int d, int m);
// Same by direct quadrature in hyperspherical angles.
double angular_constant_quadrature(int d, int m);
// Upper-half-sphere integral of omega_1^2 omega_d^m, by quadrature.
double tangential_angular_quadrature(int d, int m);

// Integral over the half-space {x_d > 0} of g(|x|) x_d^m for a radial profile.
double half_space_moment(const RadialProfile& V, int d, int m, Integrand what, double p);

// Radial integral of g(r) r^{d-1+m} over the profile grid.
double radial_integral(const RadialProfile& V, int power, Integrand what, double p);

// Limit energy  int_{R^d_+} |grad U|^2/2 + U^2/(2 kappa) - F(U)/kappa.
double ground_energy(const RadialProfile& U, int d, double p, double kappa);

struct DecayFit {
  double C = 0.0;
  double c = 0.0;
};

DecayFit decay_fit(const RadialProfile& V);

struct GroundState {
  RadialProfile profile;  // already rescaled to kappa
  int dim = 3;
  double p = 2.0;
  double kappa = 1.0;
  double energy = 0.0;
  DecayFit decay;
  ShootReport shoot;

  static GroundState compute(int d, double p, double kappa = 1.0, const ShootOptions& opt = {});
};

struct IdentityEntry {
  std::string name;
  int m = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

struct IdentityReport {
  std::vector<IdentityEntry> entries;
  double pohozaev_residual = 0.0;
  double printed_pohozaev_residual = 0.0;
  double nehari_residual = 0.0;

  // Largest residual over the identities expected to hold.
  double max_residual() const;
};

IdentityReport verify_identities(const GroundState& gs);

} // namespace acl
