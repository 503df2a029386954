#include "acl/ground_state.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "acl/error.hpp"
#include "acl/geometry.hpp"
#include "acl/quadrature.hpp"

namespace acl {

namespace {

using State = std::array<double, 2>;

enum class Outcome { undershoot, overshoot, undecided };

struct Radial {
  int d;
  double p;
  void operator()(const State& x, State& dx, double r) const {
    dx[0] = x[1];
    dx[1] = -(d - 1) / r * x[1] + x[0] - nonlinearity_f(x[0], p);
  }
};

constexpr double r_start = 1e-3;
constexpr double r_cap = 200.0;

State series_start(int d, double p, double v0) {
  const double c1 = (v0 - std::pow(v0, p)) / (2.0 * d);
  const double c2 = (1.0 - p * std::pow(v0, p - 1.0)) * c1 / (4.0 * (d + 2));
  const double r = r_start;
  return {v0 + c1 * r * r + c2 * r * r * r * r, 2 * c1 * r + 4 * c2 * r * r * r};
}

Outcome classify(const State& x) {
  if (x[0] < 0.0) return Outcome::overshoot;
  if (x[1] > 0.0) return Outcome::undershoot;
  return Outcome::undecided;
}

// Integrates from the series start; when xs is given, stores the state at
// r = k*dr for k >= 1 until the trajectory is classified.
Outcome trajectory(int d, double p, double v0, const ShootOptions& opt, std::vector<double>* rs,
                   std::vector<State>* xs) {
  namespace ode = boost::numeric::odeint;
  auto stepper = ode::make_dense_output(opt.atol, opt.rtol, ode::runge_kutta_dopri5<State>());
  stepper.initialize(series_start(d, p, v0), r_start, 1e-4);
  const Radial rhs{d, p};
  std::size_t k = 1;
  while (true) {
    const double r1 = stepper.do_step(rhs).second;
    const Outcome out = classify(stepper.current_state());
    if (xs != nullptr) {
      for (; k * opt.dr <= r1; ++k) {
        const double r = k * opt.dr;
        State x;
        stepper.calc_state(r, x);
        if (classify(x) != Outcome::undecided) break;
        rs->push_back(r);
        xs->push_back(x);
      }
    }
    if (out != Outcome::undecided) return out;
    if (r1 > r_cap) return Outcome::undecided;
  }
}

double tail_phi(double nu, double r) { return std::pow(r, -nu) * std::cyl_bessel_k(std::abs(nu), r); }

double tail_dphi(double nu, double r) { return -std::pow(r, -nu) * std::cyl_bessel_k(std::abs(nu + 1.0), r); }

} // namespace

RadialProfile shoot_ground_state(int d, double p, double tol) {
  ShootOptions opt;
  opt.match_tol = tol;
  return shoot_ground_state(d, p, opt, nullptr);
}

RadialProfile shoot_ground_state(int d, double p, const ShootOptions& opt, ShootReport* report) {
  if (d < 1) throw DomainError("dimension must be at least 1");
  if (!(p > 1.0)) throw DomainError("exponent must exceed 1");
  if (d >= 3 && !(p < (d + 2.0) / (d - 2.0))) throw DomainError("exponent is critical or supercritical");

  double lo = 1.0 + 1e-6;
  if (trajectory(d, p, lo, opt, nullptr, nullptr) != Outcome::undershoot)
    throw SolverError("lower shooting value does not undershoot");
  double hi = 2.0;
  while (trajectory(d, p, hi, opt, nullptr, nullptr) != Outcome::overshoot) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e4) throw SolverError("no overshooting value below 1e4; bracket not found");
  }

  int bisections = 0;
  while (bisections < 200) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const Outcome out = trajectory(d, p, mid, opt, nullptr, nullptr);
    if (out == Outcome::overshoot)
      hi = mid;
    else
      lo = mid;
    ++bisections;
  }

  std::vector<double> rs;
  std::vector<State> xs;
  trajectory(d, p, lo, opt, &rs, &xs);

  // Match the logarithmic derivative to the decaying solution of the
  // linearised equation.
  const double nu = 0.5 * (d - 2);
  std::size_t km = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rs.size(); ++k) {
    if (rs[k] < 2.0 || rs[k] > opt.r_end) continue;
    const auto& x = xs[k];
    if (!(x[0] > 0.0)) continue;
    const double target = tail_dphi(nu, rs[k]) / tail_phi(nu, rs[k]);
    const double mis = std::abs(x[1] / x[0] - target) / std::abs(target);
    if (mis < best) {
      best = mis;
      km = k;
    }
  }
  if (!std::isfinite(best)) throw SolverError("shooting trajectory too short for far-field matching");
  if (best > opt.match_tol)
    throw SolverError("far-field matching residual " + std::to_string(best) + " exceeds tolerance");

  const std::size_t n = static_cast<std::size_t>(std::llround(opt.r_end / opt.dr)) + 1;
  std::vector<double> grid(n), v(n), dv(n), d2v(n);
  const double rm = rs[km], vm = xs[km][0], phim = tail_phi(nu, rm);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = k * opt.dr;
    grid[k] = r;
    if (k == 0) {
      v[k] = lo;
      dv[k] = 0.0;
      d2v[k] = (lo - nonlinearity_f(lo, p)) / d;
    } else if (r <= rm) {
      v[k] = xs[k - 1][0];
      dv[k] = xs[k - 1][1];
      d2v[k] = -(d - 1) / r * dv[k] + v[k] - nonlinearity_f(v[k], p);
    } else {
      v[k] = vm * tail_phi(nu, r) / phim;
      dv[k] = vm * tail_dphi(nu, r) / phim;
      d2v[k] = -(d - 1) / r * dv[k] + v[k];
    }
  }
  if (report != nullptr) *report = {lo, rm, best, bisections};
  return RadialProfile(std::move(grid), std::move(v), std::move(dv), std::move(d2v));
}

RadialProfile rescale_to_kappa(const RadialProfile& V, double kappa) {
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  const double q = std::sqrt(kappa);
  std::vector<double> grid = V.grid(), dv = V.derivs(), d2v = V.seconds();
  for (double& r : grid) r *= q;
  for (double& x : dv) x /= q;
  for (double& x : d2v) x /= kappa;
  return RadialProfile(std::move(grid), V.values(), std::move(dv), std::move(d2v));
}

double angular_constant(int d, int m) {
  if (d < 1 || m < 0) throw DomainError("angular constant needs d >= 1, m >= 0");
  return std::pow(std::numbers::pi, 0.5 * (d - 1)) * std::tgamma(0.5 * (m + 1)) / std::tgamma(0.5 * (d + m));
}

double angular_constant_quadrature(int d, int m) {
  if (d == 1) return 1.0;
  auto g = [&](double phi) { return std::pow(std::cos(phi), m) * std::pow(std::sin(phi), d - 2); };
  return sphere_area(d - 2) * quad::integrate(g, 0.0, 0.5 * std::numbers::pi, 1e-14);
}

double tangential_angular_quadrature(int d, int m) {
  if (d < 2) throw DomainError("no tangential direction in dimension 1");
  double eta1;
  if (d == 2) {
    eta1 = 2.0;
  } else {
    auto h = [&](double psi) { return std::pow(std::cos(psi), 2) * std::pow(std::sin(psi), d - 3); };
    eta1 = sphere_area(d - 3) * quad::integrate(h, 0.0, std::numbers::pi, 1e-14);
  }
  auto g = [&](double phi) { return std::pow(std::cos(phi), m) * std::pow(std::sin(phi), d); };
  return eta1 * quad::integrate(g, 0.0, 0.5 * std::numbers::pi, 1e-14);
}

double radial_integral(const RadialProfile& V, int power, Integrand what, double p) {
  auto g = [&](double r) {
    double val;
    switch (what) {
    case Integrand::value_sq: val = std::pow(V.value(r), 2); break;
    case Integrand::F: val = nonlinearity_F(V.value(r), p); break;
    default: val = std::pow(V.deriv(r), 2); break;
    }
    return val * std::pow(r, power);
  };
  const auto& x = V.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) sum += quad::gauss8(g, x[k], x[k + 1]);
  return sum;
}

double half_space_moment(const RadialProfile& V, int d, int m, Integrand what, double p) {
  if (m < 0) throw DomainError("moment order must be nonnegative");
  if (std::abs(V.values().back()) > 1e-9) throw AccuracyError("profile has not decayed at the end of its grid");
  double ang;
  switch (what) {
  case Integrand::grad_tangential_sq:
    if (d < 2) throw DomainError("no tangential direction in dimension 1");
    ang = angular_constant(d, m) / (d + m);
    break;
  case Integrand::grad_normal_sq: ang = angular_constant(d, m + 2); break;
  default: ang = angular_constant(d, m); break;
  }
  return ang * radial_integral(V, d - 1 + m, what, p);
}

double ground_energy(const RadialProfile& U, int d, double p, double kappa) {
  const double k0 = half_space_moment(U, d, 0, Integrand::grad_sq, p);
  const double v2 = half_space_moment(U, d, 0, Integrand::value_sq, p);
  const double f0 = half_space_moment(U, d, 0, Integrand::F, p);
  return 0.5 * k0 + 0.5 * v2 / kappa - f0 / kappa;
}

DecayFit decay_fit(const RadialProfile& V) {
  const auto& r = V.grid();
  const double lo = 0.5 * r.back();
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] < lo) continue;
    const double y = V.values()[k] + std::abs(V.derivs()[k]);
    if (!(y > 0.0)) throw FitError("nonpositive tail in decay fit");
    const double ly = std::log(y);
    n += 1;
    sx += r[k];
    sy += ly;
    sxx += r[k] * r[k];
    sxy += r[k] * ly;
  }
  if (n < 2) throw FitError("decay window has fewer than two nodes");
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icept = (sy - slope * sx) / n;
  if (!(slope < 0.0)) throw FitError("profile does not decay on the fit window");
  return {std::exp(icept), -slope};
}

GroundState GroundState::compute(int d, double p, double kappa, const ShootOptions& opt) {
  GroundState gs;
  gs.dim = d;
  gs.p = p;
  gs.kappa = kappa;
  const RadialProfile V = shoot_ground_state(d, p, opt, &gs.shoot);
  gs.profile = rescale_to_kappa(V, kappa);
  gs.energy = ground_energy(gs.profile, d, p, kappa);
  gs.decay = decay_fit(gs.profile);
  return gs;
}

double IdentityReport::max_residual() const {
  double m = std::max(pohozaev_residual, nehari_residual);
  for (const auto& e : entries) m = std::max(m, e.residual);
  return m;
}

namespace {

double rel(double a, double b) {
  const double n = std::max(std::abs(a), std::abs(b));
  return n == 0.0 ? 0.0 : std::abs(a - b) / n;
}

} // namespace

IdentityReport verify_identities(const GroundState& gs) {
  const auto& U = gs.profile;
  const int d = gs.dim;
  const double p = gs.p, k = gs.kappa;
  IdentityReport rep;
  for (int m = 0; m <= 2; ++m) {
    const double Km = half_space_moment(U, d, m, Integrand::grad_sq, p);
    const double Vm = half_space_moment(U, d, m, Integrand::value_sq, p);
    const double Fm = half_space_moment(U, d, m, Integrand::F, p);
    const double radial = radial_integral(U, d - 1 + m, Integrand::grad_sq, p);
    {
      const double lhs = 0.5 * Km + 0.5 * Vm / k - Fm / k;
      const double rhs = (m + 1.0) / (d + m) * Km;
      rep.entries.push_back({"energy_moment", m, lhs, rhs, rel(lhs, rhs)});
    }
    if (d >= 2) {
      const double lhs = tangential_angular_quadrature(d, m) * radial;
      const double rhs = Km / (d + m);
      rep.entries.push_back({"tangential_gradient", m, lhs, rhs, rel(lhs, rhs)});
    }
    {
      const double lhs = angular_constant_quadrature(d, m + 2) * radial;
      const double rhs = (m + 1.0) / (d + m) * Km;
      rep.entries.push_back({"normal_gradient", m, lhs, rhs, rel(lhs, rhs)});
    }
  }
  const double K0 = half_space_moment(U, d, 0, Integrand::grad_sq, p);
  const double V0 = half_space_moment(U, d, 0, Integrand::value_sq, p);
  const double F0 = half_space_moment(U, d, 0, Integrand::F, p);
  const double a = 0.5 * (d - 2) * K0, b = d * 0.5 * V0 / k, c = d * F0 / k;
  const double norm = std::abs(a) + b + c;
  rep.pohozaev_residual = std::abs(a + b - c) / norm;
  rep.printed_pohozaev_residual = std::abs(a - b - c) / norm;
  const double energy = 0.5 * K0 + 0.5 * V0 / k - F0 / k;
  rep.nehari_residual = rel(energy, 0.5 * (p - 1.0) * F0 / k);
  return rep;
}

} // namespace acl
