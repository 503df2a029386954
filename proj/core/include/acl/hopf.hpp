#pragma once

#include <vector>

#include "acl/field.hpp"
#include "acl/geometry.hpp"

namespace acl {

// Point of R^{2N+2} in polar form: radius r, N latitude angles t in [0, pi/2)
// and N+1 phase angles theta in [0, 2 pi).
struct SpherePoint {
  double r = 1.0;
  std::vector<double> t;
  std::vector<double> theta;

  int N() const { return static_cast<int>(t.size()); }
};

// Planar radial factors rho_1 = cos t_1, rho_2 = sin t_1 cos t_2, ...,
// rho_{N+1} = sin t_1 ... sin t_N.
std::vector<double> radial_factors(const std::vector<double>& t);

std::vector<double> embed(const SpherePoint& pt);

// Diagonal S^1 action: every phase shifted by tau.
SpherePoint act(const SpherePoint& pt, double tau);

struct QuotientCoords {
  double r;
  std::vector<double> t;
  std::vector<double> psi;
};

QuotientCoords quotient_coords(const SpherePoint& pt);

// Geodesic distance on CP^N from the pole [1 : 0 : ... : 0].
double cp_radial(const QuotientCoords& q);
double cp_radial(const std::vector<double>& x);

// Lifts an axisymmetric reduced field back to an S^1-invariant function on
// the annulus.
class Lift {
public:
  Lift(const SolutionField& field, const ProblemParams& params);

  double operator()(const SpherePoint& pt) const;
  double at(const std::vector<double>& x) const;

  // Residual of  -eps^2 Lap u + |x|^alpha (u - f(u))  at x by centred
  // differences with step h.
  double annulus_residual(const std::vector<double>& x, double h = 2e-4) const;
  // Continuous reduced residual of the interpolant at (s, t).
  double reduced_residual(double s, double t) const;

  const FieldInterpolant& interpolant() const { return interp_; }
  const ProblemParams& params() const { return params_; }
  const ReducedGeometry& geometry() const { return geom_; }

private:
  FieldInterpolant interp_;
  ProblemParams params_;
  ReducedGeometry geom_;
};

double lift(const SolutionField& field, const SpherePoint& pt, const ProblemParams& params);

} // namespace acl
