#include "acl/geometry.hpp"

#include <cmath>
#include <numbers>

#include "acl/error.hpp"
#include "acl/quadrature.hpp"

namespace acl {

void ProblemParams::validate() const {
  if (N < 1) throw DomainError("N must be at least 1");
  if (!(a > 0.0)) throw DomainError("inner radius must be positive");
  if (!(b > a)) throw ConfigError("annulus needs a < b");
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  const double pc = static_cast<double>(N + 2) / N;
  if (!(p > 1.0) || !(p < pc)) throw DomainError("p must satisfy 1 < p < (N+2)/N");
}

std::string to_string(Side side) {
  switch (side) {
  case Side::inner: return "inner";
  case Side::outer: return "outer";
  case Side::interior: return "interior";
  }
  return "interior";
}

Side side_from_string(const std::string& name) {
  if (name == "inner") return Side::inner;
  if (name == "outer") return Side::outer;
  if (name == "interior") return Side::interior;
  throw ConfigError("unknown side '" + name + "'");
}

double eta_exponent(int N, double alpha) { return (alpha + 2.0 - 2.0 * N * alpha) / (2.0 * N); }

double threshold_alpha(int N) { return 2.0 / (2.0 * N - 1.0); }

double warp_coeff(int N) { return 2.0 * N / (2.0 * N - 1.0); }

double s_of_r(double r, int N) {
  if (!(r > 0.0)) throw DomainError("s_of_r needs r > 0");
  const double k = 2.0 * N - 1.0;
  return std::pow(2.0 * N / k, 1.0 / k) * std::pow(r, 2.0 * N / k);
}

double r_of_s(double s, int N) {
  if (!(s > 0.0)) throw DomainError("r_of_s needs s > 0");
  const double k = 2.0 * N - 1.0;
  return std::pow(k / (2.0 * N), 1.0 / (2.0 * N)) * std::pow(s, k / (2.0 * N));
}

double mean_curvature(double s) {
  if (!(s > 0.0)) throw DomainError("mean_curvature needs s > 0");
  return -1.0 / s;
}

double potential_constant(int N, double alpha) {
  const double k = 2.0 * N - 1.0;
  return std::pow(k / (2.0 * N), (4.0 * N + 2.0 + alpha) / (2.0 * N));
}

double reduced_eps(const ProblemParams& params) {
  return params.eps / std::sqrt(potential_constant(params.N, params.alpha));
}

double annulus_eps(int N, double alpha, double eps_reduced) {
  return eps_reduced * std::sqrt(potential_constant(N, alpha));
}

ReducedGeometry ReducedGeometry::from(const ProblemParams& params) {
  params.validate();
  ReducedGeometry g;
  g.N = params.N;
  g.s_min = s_of_r(params.a, params.N);
  g.s_max = s_of_r(params.b, params.N);
  g.eta = eta_exponent(params.N, params.alpha);
  g.alpha_star = threshold_alpha(params.N);
  g.warp_coeff = acl::warp_coeff(params.N);
  g.kappa_inner = std::pow(g.s_min, g.eta);
  g.kappa_outer = std::pow(g.s_max, g.eta);
  return g;
}

double ReducedGeometry::kappa(Side side) const {
  if (side == Side::inner) return kappa_inner;
  if (side == Side::outer) return kappa_outer;
  throw DomainError("kappa is defined on the boundary only");
}

double ReducedGeometry::boundary_s(Side side) const {
  if (side == Side::inner) return s_min;
  if (side == Side::outer) return s_max;
  throw DomainError("no boundary value for an interior side");
}

namespace {

double fermi_s(Side side, double x, const ReducedGeometry& geom) {
  if (x < 0.0 || x > geom.length()) throw DomainError("Fermi distance outside the interval");
  return side == Side::inner ? geom.s_min + x : geom.s_max - x;
}

} // namespace

double weight_expansion(Side side, double x, const ReducedGeometry& geom) {
  return std::pow(fermi_s(side, x, geom), -geom.eta);
}

double weight_expansion_first_order(Side side, double x, const ReducedGeometry& geom) {
  fermi_s(side, x, geom);
  const double s0 = geom.boundary_s(side);
  const double sign = side == Side::inner ? -1.0 : 1.0;
  return std::pow(s0, -geom.eta) + sign * geom.eta * std::pow(s0, -geom.eta - 1.0) * x;
}

double nonlinearity_F(double t, double p) { return t > 0.0 ? std::pow(t, p + 1.0) / (p + 1.0) : 0.0; }

double nonlinearity_f(double t, double p) { return t > 0.0 ? std::pow(t, p) : 0.0; }

double sphere_area(int n) {
  const double h = 0.5 * (n + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

double cp_volume(int N) { return std::pow(std::numbers::pi, N) / std::tgamma(N + 1.0); }

namespace {

void check_span(const RadialProfile& u, double lo, double hi) {
  const double tol = 1e-12 * hi;
  if (std::abs(u.front() - lo) > tol || std::abs(u.back() - hi) > tol)
    throw ConfigError("profile grid does not span the required interval");
}

} // namespace

namespace {

// The profiles are piecewise polynomials on their grid, so a fixed Gauss rule
// per cell is converged; adaptive rules only chase round-off there.
double piecewise_gauss(const quad::Fn& f, const std::vector<double>& grid) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) sum += quad::gauss8(f, grid[k], grid[k + 1]);
  return sum;
}

} // namespace

double energy_direct(const RadialProfile& u, const ProblemParams& params) {
  params.validate();
  check_span(u, params.a, params.b);
  const double e2 = params.eps * params.eps;
  const int n = 2 * params.N + 1;
  auto f = [&](double r) {
    const double v = u.value(r), dv = u.deriv(r);
    const double pot = std::pow(r, params.alpha) * (0.5 * v * v - nonlinearity_F(v, params.p));
    return (0.5 * e2 * dv * dv + pot) * std::pow(r, n);
  };
  return sphere_area(n) * piecewise_gauss(f, u.grid());
}

double energy_reduced(const RadialProfile& v, const ProblemParams& params) {
  const auto geom = ReducedGeometry::from(params);
  check_span(v, geom.s_min, geom.s_max);
  const double e2 = params.eps * params.eps;
  const double ca = potential_constant(params.N, params.alpha);
  const int n = 2 * params.N;
  auto f = [&](double s) {
    const double w = v.value(s), dw = v.deriv(s);
    const double pot = ca * std::pow(s, -geom.eta) * (0.5 * w * w - nonlinearity_F(w, params.p));
    return (0.5 * e2 * dw * dw + pot) * std::pow(s, n);
  };
  return 2.0 * std::numbers::pi * cp_volume(params.N) * piecewise_gauss(f, v.grid());
}

} // namespace acl
