#include "acl/cli/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "acl/error.hpp"
#include "acl/hopf.hpp"

namespace acl::cli {

RandomProfile random_profile(const ProblemParams& params, std::uint64_t seed, int index, int points) {
  params.validate();
  std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double a = params.a, b = params.b, len = b - a;
  struct Bump {
    double amp, centre, width;
  };
  std::vector<Bump> bumps(3);
  for (auto& bump : bumps)
    bump = {0.2 + 1.3 * unit(rng), a + len * unit(rng), len * (0.05 + 0.45 * unit(rng))};
  const double base = 0.1 * unit(rng);

  auto eval = [&](double r, double& d1, double& d2) {
    double u = base;
    d1 = d2 = 0.0;
    for (const auto& bump : bumps) {
      const double z = (r - bump.centre) / bump.width;
      const double g = bump.amp * std::exp(-0.5 * z * z);
      u += g;
      d1 += -z / bump.width * g;
      d2 += (z * z - 1.0) / (bump.width * bump.width) * g;
    }
    return u;
  };

  const int N = params.N;
  const double q = (2.0 * N - 1.0) / (2.0 * N);
  const double s_lo = s_of_r(a, N), s_hi = s_of_r(b, N);
  std::vector<double> r(points), u(points), du(points), ddu(points);
  std::vector<double> s(points), v(points), dv(points), ddv(points);
  for (int k = 0; k < points; ++k) {
    const double x = static_cast<double>(k) / (points - 1);
    r[k] = k + 1 == points ? b : a + len * x;
    u[k] = eval(r[k], du[k], ddu[k]);
    s[k] = k + 1 == points ? s_hi : s_lo + (s_hi - s_lo) * x;
    const double rr = std::clamp(r_of_s(s[k], N), a, b);
    double d1, d2;
    v[k] = eval(rr, d1, d2);
    // r = K s^q, so r' = q r / s and r'' = q (q - 1) r / s^2.
    const double r1 = q * rr / s[k], r2 = q * (q - 1.0) * rr / (s[k] * s[k]);
    dv[k] = d1 * r1;
    ddv[k] = d2 * r1 * r1 + d1 * r2;
  }
  return {RadialProfile(r, u, du, ddu), RadialProfile(s, v, dv, ddv)};
}

ReduceCheckReport reduce_check(const ProblemParams& params, int profiles, std::uint64_t seed) {
  params.validate();
  if (profiles < 1) throw ConfigError("need at least one profile");
  ReduceCheckReport rep;
  for (int k = 0; k < profiles; ++k) {
    const auto prof = random_profile(params, seed, k);
    ReduceRow row;
    row.index = k;
    row.direct = energy_direct(prof.u, params);
    row.reduced = energy_reduced(prof.v, params);
    row.rel = std::abs(row.direct - row.reduced) / std::abs(row.direct);
    rep.max_rel = std::max(rep.max_rel, row.rel);
    rep.rows.push_back(row);
  }
  return rep;
}

namespace {

SpherePoint random_point(std::mt19937_64& rng, int N, double r_lo, double r_hi) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Uniform direction from a Gaussian vector, converted to polar form.
  std::vector<double> x(2 * N + 2);
  double norm = 0.0;
  for (double& xi : x) {
    xi = gauss(rng);
    norm += xi * xi;
  }
  norm = std::sqrt(norm);
  SpherePoint pt;
  pt.r = r_lo + (r_hi - r_lo) * unit(rng);
  pt.t.resize(N);
  pt.theta.resize(N + 1);
  std::vector<double> rho(N + 1);
  for (int i = 0; i <= N; ++i) {
    rho[i] = std::hypot(x[2 * i], x[2 * i + 1]) / norm;
    double th = std::atan2(x[2 * i + 1], x[2 * i]);
    if (th < 0.0) th += 2.0 * std::numbers::pi;
    pt.theta[i] = th;
  }
  double tail = 1.0;
  for (int i = 0; i < N; ++i) {
    const double c = std::clamp(rho[i] / tail, 0.0, 1.0);
    pt.t[i] = std::acos(c);
    tail *= std::sin(pt.t[i]);
    if (tail <= 0.0) {
      for (int k = i + 1; k < N; ++k) pt.t[k] = 0.0;
      break;
    }
  }
  return pt;
}

double distance(const std::vector<double>& x, const std::vector<double>& y) {
  double d = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) d += (x[k] - y[k]) * (x[k] - y[k]);
  return std::sqrt(d);
}

} // namespace

LiftCheckReport lift_check(const SolutionField& field, const ProblemParams& params, int samples,
                           int fixed_point_samples, std::uint64_t seed) {
  if (samples < 1 || fixed_point_samples < 1) throw ConfigError("sample counts must be positive");
  const Lift lift(field, params);
  const int N = params.N;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LiftCheckReport rep;
  rep.samples = samples;
  rep.fixed_point_samples = fixed_point_samples;

  // Peak of the reduced field; the concentration circle sits over it.
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < field.ns(); ++i)
    for (std::size_t j = 0; j < field.nt(); ++j)
      if (field.at(i, j) > field.at(bi, bj)) {
        bi = i;
        bj = j;
      }

  // Half of the points are uniform in the annulus, half lie within a few
  // eps of the concentration circle where the residual is not negligible.
  const double margin = 1e-3 * (params.b - params.a);
  const double eps = reduced_eps(params);
  const double s_lo = s_of_r(params.a + margin, N), s_hi = s_of_r(params.b - margin, N);
  std::vector<double> ann(samples), red(samples);
  for (int k = 0; k < samples; ++k) {
    SpherePoint pt = random_point(rng, N, params.a + margin, params.b - margin);
    if (k % 2 == 1) {
      const double s = std::clamp(field.s[bi] + 6.0 * eps * (2.0 * unit(rng) - 1.0), s_lo, s_hi);
      pt.r = r_of_s(s, N);
      pt.t[0] = std::clamp(field.t[bj] + 6.0 * eps / (warp_coeff(N) * s) * (2.0 * unit(rng) - 1.0), 1e-6,
                           0.5 * std::numbers::pi - 1e-6);
    }
    const double u0 = lift(pt);
    for (int m = 1; m <= 8; ++m) {
      const double tau = 2.0 * std::numbers::pi * unit(rng);
      rep.orbit_spread = std::max(rep.orbit_spread, std::abs(lift(act(pt, tau)) - u0));
    }
    const auto x = embed(pt);
    const auto q = quotient_coords(pt);
    ann[k] = std::abs(lift.annulus_residual(x));
    red[k] = std::abs(lift.reduced_residual(s_of_r(pt.r, N), cp_radial(q)));
    rep.max_annulus_residual = std::max(rep.max_annulus_residual, ann[k]);
    rep.max_reduced_residual = std::max(rep.max_reduced_residual, red[k]);
  }
  for (int k = 0; k < samples; ++k)
    if (red[k] > 1e-6 * rep.max_reduced_residual)
      rep.max_pointwise_ratio = std::max(rep.max_pointwise_ratio, ann[k] / red[k]);

  const double delta = 1e-3;
  rep.min_displacement = std::numeric_limits<double>::infinity();
  for (int k = 0; k < fixed_point_samples; ++k) {
    const SpherePoint pt = random_point(rng, N, params.a, params.b);
    const double tau = delta + (2.0 * std::numbers::pi - 2.0 * delta) * unit(rng);
    rep.min_displacement = std::min(rep.min_displacement, distance(embed(act(pt, tau)), embed(pt)));
  }

  // Peak circle of the lift against the circle over the antipodal latitude.
  SpherePoint pk;
  pk.r = std::clamp(r_of_s(field.s[bi], N), params.a, params.b);
  pk.t.assign(N, 0.0);
  pk.t[0] = field.t[bj];
  pk.theta.assign(N + 1, 0.0);
  SpherePoint anti = pk;
  anti.t[0] = 0.5 * std::numbers::pi - field.t[bj];
  rep.peak_r = pk.r;
  rep.peak_t = pk.t[0];
  rep.concentration_value = lift(pk);
  rep.antipodal_value = lift(anti);
  rep.concentration_ratio =
      rep.concentration_value / std::max(std::abs(rep.antipodal_value), std::numeric_limits<double>::min());
  return rep;
}

} // namespace acl::cli
