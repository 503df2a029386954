#include "acl/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "acl/error.hpp"

namespace acl {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap(double a) {
  double w = std::fmod(a, two_pi);
  if (w < 0.0) w += two_pi;
  return w;
}

void check_angles(const SpherePoint& pt) {
  if (pt.theta.size() != pt.t.size() + 1) throw DomainError("SpherePoint needs N latitudes and N+1 phases");
  for (double t : pt.t)
    if (!(t >= 0.0 && t < 0.5 * std::numbers::pi)) throw DomainError("latitude outside [0, pi/2)");
  for (double th : pt.theta)
    if (!(th >= 0.0 && th < two_pi)) throw DomainError("phase outside [0, 2 pi)");
}

} // namespace

std::vector<double> radial_factors(const std::vector<double>& t) {
  std::vector<double> rho(t.size() + 1);
  double prod = 1.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    rho[i] = prod * std::cos(t[i]);
    prod *= std::sin(t[i]);
  }
  rho.back() = prod;
  return rho;
}

std::vector<double> embed(const SpherePoint& pt) {
  check_angles(pt);
  const auto rho = radial_factors(pt.t);
  std::vector<double> x(2 * rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    x[2 * i] = pt.r * rho[i] * std::cos(pt.theta[i]);
    x[2 * i + 1] = pt.r * rho[i] * std::sin(pt.theta[i]);
  }
  return x;
}

SpherePoint act(const SpherePoint& pt, double tau) {
  SpherePoint out = pt;
  for (double& th : out.theta) th = wrap(th + tau);
  return out;
}

QuotientCoords quotient_coords(const SpherePoint& pt) {
  QuotientCoords q{pt.r, pt.t, {}};
  const double last = pt.theta.back();
  for (std::size_t i = 0; i + 1 < pt.theta.size(); ++i) q.psi.push_back(wrap(pt.theta[i] - last));
  return q;
}

double cp_radial(const QuotientCoords& q) { return q.t.empty() ? 0.0 : q.t.front(); }

double cp_radial(const std::vector<double>& x) {
  double rest = 0.0;
  for (std::size_t k = 2; k < x.size(); ++k) rest += x[k] * x[k];
  return std::atan2(std::sqrt(rest), std::hypot(x[0], x[1]));
}

Lift::Lift(const SolutionField& field, const ProblemParams& params)
    : interp_(field), params_(params), geom_(ReducedGeometry::from(params)) {
  if (field.N != params.N) throw ConfigError("field and problem disagree on N");
}

namespace {

void check_radius(double r, const ProblemParams& p) {
  const double slack = 1e-12 * p.b;
  if (r < p.a - slack || r > p.b + slack) throw DomainError("point outside the annulus");
}

} // namespace

double Lift::operator()(const SpherePoint& pt) const {
  check_radius(pt.r, params_);
  const auto q = quotient_coords(pt);
  const double s = std::clamp(s_of_r(q.r, params_.N), geom_.s_min, geom_.s_max);
  return interp_(s, cp_radial(q));
}

double Lift::at(const std::vector<double>& x) const {
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  const double r = std::sqrt(r2);
  check_radius(r, params_);
  const double s = std::clamp(s_of_r(r, params_.N), geom_.s_min, geom_.s_max);
  return interp_(s, cp_radial(x));
}

double Lift::annulus_residual(const std::vector<double>& x, double h) const {
  const double u0 = at(x);
  double lap = 0.0;
  std::vector<double> y = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    y[k] = x[k] + h;
    const double up = at(y);
    y[k] = x[k] - h;
    const double um = at(y);
    y[k] = x[k];
    lap += (up - 2.0 * u0 + um) / (h * h);
  }
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  const double e = params_.eps;
  return -e * e * lap + std::pow(std::sqrt(r2), params_.alpha) * (u0 - nonlinearity_f(u0, params_.p));
}

double Lift::reduced_residual(double s, double t) const {
  const auto J = interp_.jet(s, t);
  const int N = params_.N;
  const double cs = geom_.warp_coeff * s;
  double tangential;
  // Near the poles the first-order coefficient is replaced by its limit.
  if (t < 1e-8)
    tangential = 2.0 * N * J.vtt;
  else if (t > 0.5 * std::numbers::pi - 1e-8)
    tangential = 2.0 * J.vtt;
  else
    tangential = J.vtt + ((2.0 * N - 1.0) / std::tan(t) - std::tan(t)) * J.vt;
  const double lap = J.vss + (2.0 * N / s) * J.vs + tangential / (cs * cs);
  const double e = reduced_eps(params_);
  return -e * e * lap + std::pow(s, -geom_.eta) * (J.v - nonlinearity_f(J.v, params_.p));
}

double lift(const SolutionField& field, const SpherePoint& pt, const ProblemParams& params) {
  return Lift(field, params)(pt);
}

} // namespace acl
