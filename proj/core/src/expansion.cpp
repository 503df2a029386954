#include "acl/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "acl/error.hpp"
#include "acl/quadrature.hpp"

namespace acl {

namespace {

double step_h(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double step_dh(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }

} // namespace

double cutoff_radial(double rho, double gamma) {
  const double z = (2.0 * gamma - rho) / gamma;
  if (z >= 1.0) return 1.0;
  if (z <= 0.0) return 0.0;
  const double a = step_h(z), b = step_h(1.0 - z);
  return a / (a + b);
}

double cutoff_radial_deriv(double rho, double gamma) {
  const double z = (2.0 * gamma - rho) / gamma;
  if (z >= 1.0 || z <= 0.0) return 0.0;
  const double a = step_h(z), b = step_h(1.0 - z);
  const double da = step_dh(z), db = -step_dh(1.0 - z);
  const double dz = (da * (a + b) - a * (da + db)) / ((a + b) * (a + b));
  return -dz / gamma;
}

double cutoff(std::span<const double> x, double gamma) {
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  return cutoff_radial(std::sqrt(r2), gamma);
}

double TestFunctionParams::gamma_for(const ReducedGeometry& geom) const {
  return gamma > 0.0 ? gamma : geom.length() / 8.0;
}

ExpansionMoments expansion_moments(const GroundState& gs, int N) {
  const int d = 2 * N + 1;
  if (gs.dim != d) throw ConfigError("ground state dimension must be 2N+1");
  const auto& U = gs.profile;
  const double p = gs.p;
  ExpansionMoments m;
  m.K0 = half_space_moment(U, d, 0, Integrand::grad_sq, p);
  m.P0 = 0.5 * half_space_moment(U, d, 0, Integrand::value_sq, p) - half_space_moment(U, d, 0, Integrand::F, p);
  m.K1 = half_space_moment(U, d, 1, Integrand::grad_sq, p);
  m.T1 = 2.0 * N * half_space_moment(U, d, 1, Integrand::grad_tangential_sq, p);
  m.P1 = 0.5 * half_space_moment(U, d, 1, Integrand::value_sq, p) - half_space_moment(U, d, 1, Integrand::F, p);
  return m;
}

double fermi_curvature(Side side, const ReducedGeometry& geom) {
  if (side == Side::inner) return -1.0 / geom.s_min;
  if (side == Side::outer) return 1.0 / geom.s_max;
  throw DomainError("curvature is defined on the boundary only");
}

double ExpansionTerms::I1(double t) const {
  return std::pow(t, 2 * N - 1) * mom.K0 / 2 + std::pow(t, 2 * N + 1) * mom.P0 / weight_kappa;
}

double ExpansionTerms::dI1(double t) const {
  return (2 * N - 1) * std::pow(t, 2 * N - 2) * mom.K0 / 2 + (2 * N + 1) * std::pow(t, 2 * N) * mom.P0 / weight_kappa;
}

double ExpansionTerms::I2(double t) const {
  const double sigma = side == Side::inner ? 1.0 : -1.0;
  return sigma * eta * std::pow(t, 2 * N + 2) * mom.P1 / (weight_kappa * s0);
}

double ExpansionTerms::I3(double t) const {
  const double bulk = std::pow(t, 2 * N) * mom.K1 / 2 + std::pow(t, 2 * N + 2) * mom.P1 / weight_kappa;
  return 2 * N * H * bulk - std::pow(t, 2 * N) * h * mom.T1;
}

double ExpansionTerms::I2_printed(double t) const {
  return std::pow(t, 2 * N + 2) * mom.P1 / (weight_kappa * s0);
}

double ExpansionTerms::I3_printed(double t) const {
  const double Hp = mean_curvature(s0);
  const double bulk = std::pow(t, 2 * N) * mom.K1 / 2 + std::pow(t, 2 * N + 2) * mom.P1 / weight_kappa;
  return 2 * N * Hp * bulk + std::pow(t, 2 * N) * Hp * mom.T1;
}

ExpansionTerms make_expansion_terms(const GroundState& gs, Side side, const ReducedGeometry& geom) {
  ExpansionTerms e;
  e.N = geom.N;
  e.side = side;
  e.s0 = geom.boundary_s(side);
  e.weight_kappa = geom.kappa(side);
  e.eta = geom.eta;
  e.H = fermi_curvature(side, geom);
  e.h = e.H;
  e.mom = expansion_moments(gs, geom.N);
  return e;
}

double curvature_functional(Side side, const GroundState& gs, const ReducedGeometry& geom) {
  const auto m = expansion_moments(gs, geom.N);
  const double H = fermi_curvature(side, geom);
  const double kw = geom.kappa(side);
  return -H * m.T1 + 2.0 * geom.N * H * (0.5 * m.K1 + m.P1 / kw);
}

ExpansionReport expansion_terms(const TestFunctionParams& tf, const ReducedGeometry& geom) {
  ExpansionReport rep;
  rep.terms = make_expansion_terms(tf.ground, tf.side, geom);
  const auto& T = rep.terms;
  const int n = 64;
  rep.t_step = 2.0 / n;
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= n; ++k) {
    const double t = k * rep.t_step;
    rep.t.push_back(t);
    rep.I1.push_back(T.I1(t));
    rep.I2.push_back(T.I2(t));
    rep.I3.push_back(T.I3(t));
    rep.I2_printed.push_back(T.I2_printed(t));
    rep.I3_printed.push_back(T.I3_printed(t));
    if (rep.I1.back() > best) {
      best = rep.I1.back();
      rep.argmax_t = t;
    }
  }
  rep.dI1_at_1 = T.dI1(1.0);
  rep.curvature_functional = curvature_functional(tf.side, tf.ground, geom);
  const double N = geom.N;
  rep.curvature_identity_rhs = N / (N + 1.0) * T.H * T.mom.K1;
  rep.curvature_identity_residual = std::abs(rep.curvature_functional - rep.curvature_identity_rhs) / std::abs(rep.curvature_identity_rhs);
  return rep;
}

namespace {

struct ZEval {
  double value, drho;
};

ZEval z_radial(const TestFunctionParams& tf, double gamma, double rho) {
  const auto& U = tf.ground.profile;
  const double y = rho / (tf.eps * tf.t);
  if (y >= U.back()) return {0.0, 0.0};
  const double phi = cutoff_radial(rho / tf.t, gamma);
  if (phi == 0.0) return {0.0, 0.0};
  const double u = U.value(y), du = U.deriv(y);
  const double dphi = cutoff_radial_deriv(rho / tf.t, gamma) / tf.t;
  return {phi * u, dphi * u + phi * du / (tf.eps * tf.t)};
}

void check_chart(const TestFunctionParams& tf, const ReducedGeometry& geom, double gamma) {
  if (!(tf.t > 0.0)) throw DomainError("dilation must be positive");
  if (!(2.0 * tf.t * gamma < 0.5 * geom.length())) throw DomainError("test function support leaves the Fermi chart");
  const double s0 = geom.boundary_s(tf.side);
  if (!(2.0 * tf.t * gamma < 0.5 * std::numbers::pi * geom.warp_coeff * s0))
    throw DomainError("test function support wraps past the far pole");
}

} // namespace

double test_function_value(const TestFunctionParams& tf, const ReducedGeometry& geom, double s, double t1) {
  const double gamma = tf.gamma_for(geom);
  const double s0 = geom.boundary_s(tf.side);
  const double xt = geom.warp_coeff * s0 * t1;
  return z_radial(tf, gamma, std::hypot(s - s0, xt)).value;
}

double gamma_eps_of_Z(const TestFunctionParams& tf, const ReducedGeometry& geom) {
  const double gamma = tf.gamma_for(geom);
  check_chart(tf, geom, gamma);
  const int N = geom.N;
  const double s0 = geom.boundary_s(tf.side);
  const double sigma = tf.side == Side::inner ? 1.0 : -1.0;
  const double c = geom.warp_coeff;
  const double omega = sphere_area(2 * N - 1) * std::pow(c, 2 * N);
  const double e2 = tf.eps * tf.eps;
  const double p = tf.ground.p;
  const double R = 2.0 * tf.t * gamma;
  const double scale = tf.eps * tf.t;

  // Radial breakpoints: the profile nodes mapped to rho, the start of the
  // cutoff band and the support radius. Z is a polynomial in rho between
  // consecutive nodes, so fixed Gauss rules on these cells are exact up to
  // the smooth geometric factors.
  std::vector<double> rb;
  for (double y : tf.ground.profile.grid()) {
    const double rho = scale * y;
    if (rho >= R) break;
    rb.push_back(rho);
  }
  rb.push_back(R);
  const double band = tf.t * gamma;
  if (band < R) rb.push_back(band);
  std::sort(rb.begin(), rb.end());
  rb.erase(std::unique(rb.begin(), rb.end()), rb.end());

  auto integrand = [&](double rho, double cth, double sth) {
    const ZEval z = z_radial(tf, gamma, rho);
    if (z.value == 0.0 && z.drho == 0.0) return 0.0;
    const double xn = rho * cth, xt = rho * sth;
    const double s = s0 + sigma * xn;
    const double zn = z.drho * cth, zt = z.drho * sth;
    const double grad = zn * zn + (s0 / s) * (s0 / s) * zt * zt;
    const double pot = std::pow(s, -geom.eta) * (0.5 * z.value * z.value - nonlinearity_F(z.value, p));
    const double t1 = xt / (c * s0);
    const double vol = omega * std::pow(s, 2 * N) * std::pow(std::sin(t1), 2 * N - 1) * std::cos(t1) / (c * s0);
    return (0.5 * e2 * grad + pot) * vol * rho;
  };

  auto radial = [&](double theta) {
    const double cth = std::cos(theta), sth = std::sin(theta);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < rb.size(); ++k)
      sum += quad::gauss8([&](double rho) { return integrand(rho, cth, sth); }, rb[k], rb[k + 1]);
    return sum;
  };

  return quad::integrate(radial, 0.0, 0.5 * std::numbers::pi, 1e-12);
}

void measure_order(ExpansionReport& report, const TestFunctionParams& tf, const ReducedGeometry& geom,
                   std::span<const double> eps_list) {
  const auto& T = report.terms;
  const int N = geom.N;
  report.order.clear();
  report.ratios.clear();
  report.printed_ratios.clear();
  for (double eps : eps_list) {
    TestFunctionParams q = tf;
    q.eps = eps;
    OrderRow row;
    row.eps = eps;
    row.measured = gamma_eps_of_Z(q, geom) / std::pow(eps, 2 * N + 1);
    row.predicted = T.I1(tf.t) - eps * (T.I2(tf.t) + T.I3(tf.t));
    row.residual = std::abs(row.measured - row.predicted);
    row.predicted_printed = T.I1(tf.t) - eps * (T.I2_printed(tf.t) + T.I3_printed(tf.t));
    row.residual_printed = std::abs(row.measured - row.predicted_printed);
    report.order.push_back(row);
  }
  for (std::size_t k = 0; k + 1 < report.order.size(); ++k) {
    report.ratios.push_back(report.order[k].residual / report.order[k + 1].residual);
    report.printed_ratios.push_back(report.order[k].residual_printed / report.order[k + 1].residual_printed);
  }
}

} // namespace acl
