#include "acl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/SparseCholesky>

#include "acl/error.hpp"
#include "acl/expansion.hpp"

namespace acl {

std::vector<double> graded_axis(double lo, double hi, double h_lo, double h_hi, double growth, double h_max) {
  if (!(hi > lo) || !(h_lo > 0.0) || !(h_hi > 0.0) || !(growth >= 1.0) || !(h_max > 0.0))
    throw ConfigError("invalid graded axis specification");
  // Grading starts one cell in from each end, so the end cells never exceed h_lo and h_hi.
  auto h = [&](double x) {
    const double from_lo = std::max(0.0, x - lo - h_lo), from_hi = std::max(0.0, hi - x - h_hi);
    return std::min({h_max, h_lo + (growth - 1.0) * from_lo, h_hi + (growth - 1.0) * from_hi});
  };
  // Cumulative cell count xi(x) = int dx / h on a fine table, then equal steps in xi.
  const int m = 20000;
  std::vector<double> xs(m + 1), xi(m + 1, 0.0);
  const double dx = (hi - lo) / m;
  for (int k = 0; k <= m; ++k) xs[k] = lo + k * dx;
  for (int k = 1; k <= m; ++k) xi[k] = xi[k - 1] + dx / h(lo + (k - 0.5) * dx);
  const int n = std::max(2, static_cast<int>(std::ceil(xi[m])));
  std::vector<double> out(n + 1);
  out.front() = lo;
  out.back() = hi;
  int k = 0;
  for (int q = 1; q < n; ++q) {
    const double target = xi[m] * q / n;
    while (xi[k + 1] < target) ++k;
    const double w = (target - xi[k]) / (xi[k + 1] - xi[k]);
    out[q] = xs[k] + w * dx;
  }
  return out;
}

SolutionField make_grid(const ProblemParams& params, const GridSpec& spec) {
  const auto geom = ReducedGeometry::from(params);
  if (params.N != 1) throw DomainError("the PDE solver supports N = 1 only");
  if (spec.first_cell > 0.1) throw ConfigError("first cell must resolve eps with at least 10 cells");
  const double eps = reduced_eps(params);
  const double c = geom.warp_coeff;
  const double h0 = spec.first_cell * eps * spec.refine;
  const double hm = spec.max_cell * eps * spec.refine;
  SolutionField f;
  f.N = params.N;
  f.s = graded_axis(geom.s_min, geom.s_max, h0, h0, spec.growth, hm);
  const double t0 = h0 / (c * geom.s_max);
  const double tm = 2.0 * hm / (c * geom.s_min);
  f.t = graded_axis(0.0, 0.5 * std::numbers::pi, t0, tm, spec.growth, tm);
  f.v.assign(f.s.size() * f.t.size(), 0.0);
  return f;
}

namespace {

double power_integral(double lo, double hi, double e) {
  if (std::abs(e) < 1e-14) return std::log(hi / lo);
  return (std::pow(hi, e) - std::pow(lo, e)) / e;
}

} // namespace

Discretization::Discretization(const SolutionField& grid, const ProblemParams& params)
    : ns_(grid.ns()), nt_(grid.nt()), n_(grid.ns() * grid.nt()), eps_(reduced_eps(params)), p_(params.p) {
  grid.check();
  const int N = grid.N;
  const double eta = eta_exponent(N, params.alpha);
  const double c = warp_coeff(N);
  const double omega = sphere_area(2 * N - 1) * std::pow(c, 2 * N);
  const auto& s = grid.s;
  const auto& t = grid.t;
  const double e = 2.0 * N + 1.0;
  auto sinp = [&](double x) { return std::pow(std::sin(x), 2 * N) / (2.0 * N); };

  std::vector<double> Ws(ns_), Q(ns_), Rs(ns_), Es(ns_ - 1), Wt(nt_), Et(nt_ - 1);
  for (std::size_t i = 0; i < ns_; ++i) {
    const double lo = i == 0 ? s[0] : 0.5 * (s[i - 1] + s[i]);
    const double hi = i + 1 == ns_ ? s[i] : 0.5 * (s[i] + s[i + 1]);
    Ws[i] = power_integral(lo, hi, e);
    Q[i] = power_integral(lo, hi, e - eta);
    Rs[i] = power_integral(lo, hi, e - 2.0) / (c * c);
  }
  for (std::size_t i = 0; i + 1 < ns_; ++i) {
    const double h = s[i + 1] - s[i];
    Es[i] = power_integral(s[i], s[i + 1], e) / (h * h);
  }
  for (std::size_t j = 0; j < nt_; ++j) {
    const double lo = j == 0 ? t[0] : 0.5 * (t[j - 1] + t[j]);
    const double hi = j + 1 == nt_ ? t[j] : 0.5 * (t[j] + t[j + 1]);
    Wt[j] = sinp(hi) - sinp(lo);
  }
  for (std::size_t j = 0; j + 1 < nt_; ++j) {
    const double k = t[j + 1] - t[j];
    Et[j] = (sinp(t[j + 1]) - sinp(t[j])) / (k * k);
  }

  cs_.assign(n_, 0.0);
  ct_.assign(n_, 0.0);
  mass_.assign(n_, 0.0);
  volume_.assign(n_, 0.0);
  for (std::size_t i = 0; i < ns_; ++i)
    for (std::size_t j = 0; j < nt_; ++j) {
      const std::size_t k = i * nt_ + j;
      if (i + 1 < ns_) cs_[k] = omega * Es[i] * Wt[j];
      if (j + 1 < nt_) ct_[k] = omega * Rs[i] * Et[j];
      mass_[k] = omega * Q[i] * Wt[j];
      volume_[k] = omega * Ws[i] * Wt[j];
    }
}

std::vector<double> Discretization::stiffness(const std::vector<double>& v) const {
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < ns_; ++i)
    for (std::size_t j = 0; j < nt_; ++j) {
      const std::size_t k = i * nt_ + j;
      if (i + 1 < ns_) {
        const double flux = cs_[k] * (v[k] - v[k + nt_]);
        out[k] += flux;
        out[k + nt_] -= flux;
      }
      if (j + 1 < nt_) {
        const double flux = ct_[k] * (v[k] - v[k + 1]);
        out[k] += flux;
        out[k + 1] -= flux;
      }
    }
  return out;
}

double Discretization::dirichlet(const std::vector<double>& v) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < ns_; ++i)
    for (std::size_t j = 0; j < nt_; ++j) {
      const std::size_t k = i * nt_ + j;
      if (i + 1 < ns_) sum += cs_[k] * std::pow(v[k] - v[k + nt_], 2);
      if (j + 1 < nt_) sum += ct_[k] * std::pow(v[k] - v[k + 1], 2);
    }
  return sum;
}

double Discretization::norm_sq(const std::vector<double>& v) const {
  double m = 0.0;
  for (std::size_t k = 0; k < n_; ++k) m += mass_[k] * v[k] * v[k];
  return eps_ * eps_ * dirichlet(v) + m;
}

double Discretization::nonlinear_mass(const std::vector<double>& v) const {
  double m = 0.0;
  for (std::size_t k = 0; k < n_; ++k)
    if (v[k] > 0.0) m += mass_[k] * std::pow(v[k], p_ + 1.0);
  return m;
}

double Discretization::energy(const std::vector<double>& v) const {
  return 0.5 * norm_sq(v) - nonlinear_mass(v) / (p_ + 1.0);
}

Eigen::SparseMatrix<double> Discretization::matrix() const {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(5 * n_);
  const double e2 = eps_ * eps_;
  std::vector<double> diag(mass_);
  for (std::size_t i = 0; i < ns_; ++i)
    for (std::size_t j = 0; j < nt_; ++j) {
      const std::size_t k = i * nt_ + j;
      auto edge = [&](std::size_t a, std::size_t b, double c) {
        diag[a] += e2 * c;
        diag[b] += e2 * c;
        trip.emplace_back(a, b, -e2 * c);
        trip.emplace_back(b, a, -e2 * c);
      };
      if (i + 1 < ns_) edge(k, k + nt_, cs_[k]);
      if (j + 1 < nt_) edge(k, k + 1, ct_[k]);
    }
  for (std::size_t k = 0; k < n_; ++k) trip.emplace_back(k, k, diag[k]);
  Eigen::SparseMatrix<double> A(n_, n_);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

SolutionField laplace_beltrami(const SolutionField& field) {
  ProblemParams geo;
  geo.N = field.N;
  geo.alpha = threshold_alpha(field.N);
  const Discretization d(field, geo);
  const auto kv = d.stiffness(field.v);
  SolutionField out = field;
  for (std::size_t k = 0; k < kv.size(); ++k) out.v[k] = -kv[k] / d.cell_volume()[k];
  return out;
}

double nehari_scale(const SolutionField& field, const ProblemParams& params) {
  const Discretization d(field, params);
  const double den = d.nonlinear_mass(field.v);
  if (!(den > 0.0)) throw DomainError("Nehari scaling needs a field with positive part");
  return std::pow(d.norm_sq(field.v) / den, 1.0 / (params.p - 1.0));
}

double gamma_eps(const SolutionField& field, const ProblemParams& params) {
  return Discretization(field, params).energy(field.v);
}

double constant_level(const ProblemParams& params) {
  const auto geom = ReducedGeometry::from(params);
  const int N = params.N;
  const double c = geom.warp_coeff;
  const double omega = sphere_area(2 * N - 1) * std::pow(c, 2 * N);
  const double e = 2.0 * N + 1.0 - geom.eta;
  const double integral = omega * power_integral(geom.s_min, geom.s_max, e) / (2.0 * N);
  return (0.5 - 1.0 / (params.p + 1.0)) * integral;
}

std::string SeedSpec::label() const {
  std::string s = kind == Kind::bump ? "bump" : "test_function";
  s += ':' + to_string(side);
  if (kind == Kind::bump && t_hat != 0.0) s += ":t=" + format_double(t_hat);
  return s;
}

std::vector<SeedSpec> default_seeds() {
  return {{SeedSpec::Kind::bump, Side::inner, 0.0},
          {SeedSpec::Kind::bump, Side::outer, 0.0},
          {SeedSpec::Kind::test_function, Side::inner, 0.0}};
}

namespace {

SolutionField seed_field(const SolutionField& grid, const ProblemParams& params, const SeedSpec& seed) {
  const auto geom = ReducedGeometry::from(params);
  const double eps = reduced_eps(params);
  const double s0 = geom.boundary_s(seed.side);
  const double kappa = geom.kappa(seed.side);
  SolutionField f = grid;
  if (seed.kind == SeedSpec::Kind::bump) {
    for (std::size_t i = 0; i < f.ns(); ++i)
      for (std::size_t j = 0; j < f.nt(); ++j) {
        const double ds = f.s[i] - s0;
        const double dt = geom.warp_coeff * s0 * (f.t[j] - seed.t_hat);
        f.at(i, j) = std::exp(-(ds * ds + dt * dt) / (kappa * eps * eps));
      }
    return f;
  }
  TestFunctionParams tf;
  tf.side = seed.side;
  tf.eps = eps;
  tf.ground = GroundState::compute(2 * params.N + 1, params.p, kappa);
  for (std::size_t i = 0; i < f.ns(); ++i)
    for (std::size_t j = 0; j < f.nt(); ++j) f.at(i, j) = test_function_value(tf, geom, f.s[i], f.t[j]);
  return f;
}

struct Factored {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

MPResult descend(const ProblemParams& params, const SolutionField& seed, const SolverOptions& opt,
                 const Discretization& disc, Factored& fac) {
  const std::size_t n = disc.size();
  const auto& mass = disc.potential_mass();
  const double p = params.p;
  std::vector<double> v = seed.v;

  auto project = [&](std::vector<double>& w) {
    const double den = disc.nonlinear_mass(w);
    if (!(den > 0.0)) throw SeedError("descent reached the zero field");
    const double ts = std::pow(disc.norm_sq(w) / den, 1.0 / (p - 1.0));
    for (double& x : w) x *= ts;
  };
  project(v);
  double E = disc.energy(v);

  MPResult res;
  res.history.push_back(E);
  Eigen::VectorXd rhs(n), u;
  std::vector<double> g(n), w(n);
  double g0 = 0.0, gnorm = 0.0, tau = 1.0;
  int it = 0;
  bool converged = false;
  for (; it <= opt.max_iter; ++it) {
    for (std::size_t k = 0; k < n; ++k) rhs[k] = mass[k] * nonlinearity_f(v[k], p);
    u = fac.ldlt.solve(rhs);
    for (std::size_t k = 0; k < n; ++k) g[k] = v[k] - u[k];
    // ||g||_A^2 = g . (A v - M f(v)).
    auto kv = disc.stiffness(v);
    double ga = 0.0;
    const double e2 = disc.eps() * disc.eps();
    for (std::size_t k = 0; k < n; ++k) ga += g[k] * (e2 * kv[k] + mass[k] * v[k] - rhs[k]);
    gnorm = std::sqrt(std::max(ga, 0.0));
    if (it == 0) g0 = gnorm;
    if (gnorm <= opt.tol * g0) {
      converged = true;
      break;
    }
    if (it == opt.max_iter) break;
    tau = std::min(1.0, 2.0 * tau);
    bool accepted = false;
    while (tau > 1e-12) {
      for (std::size_t k = 0; k < n; ++k) w[k] = std::max(v[k] - tau * g[k], 0.0);
      project(w);
      const double Ew = disc.energy(w);
      if (Ew <= E + 1e-14 * std::abs(E)) {
        v.swap(w);
        E = Ew;
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    res.history.push_back(E);
    if (!accepted) break;
  }
  if (!converged) {
    std::string msg = "descent did not converge: gradient ratio " + std::to_string(gnorm / g0) + " after " +
                      std::to_string(it) + " iterations; energy history tail";
    for (std::size_t k = res.history.size() > 5 ? res.history.size() - 5 : 0; k < res.history.size(); ++k)
      msg += ' ' + format_double(res.history[k]);
    throw SolverError(msg);
  }

  res.field = seed;
  res.field.v = v;
  res.params = params;
  res.eps = disc.eps();
  res.level = E;
  res.iterations = it;
  res.gradient_ratio = g0 > 0.0 ? gnorm / g0 : 0.0;
  const auto kv = disc.stiffness(v);
  const double e2 = disc.eps() * disc.eps();
  double r = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double rk = (e2 * kv[k] + mass[k] * (v[k] - nonlinearity_f(v[k], p))) / disc.cell_volume()[k];
    r = std::max(r, std::abs(rk));
  }
  res.residual = r;
  res.constant_level = constant_level(params);
  res.peak = locate_peak(res.field, res.eps);
  return res;
}

} // namespace

MPResult solve_from_seed(const ProblemParams& params, const SolutionField& seed, const SolverOptions& opt) {
  const Discretization disc(seed, params);
  Factored fac;
  fac.ldlt.compute(disc.matrix());
  if (fac.ldlt.info() != Eigen::Success) throw SolverError("factorisation of the eps-norm matrix failed");
  return descend(params, seed, opt, disc, fac);
}

MPResult solve_mountain_pass(const ProblemParams& params, const SolverOptions& opt) {
  if (opt.seeds.empty()) throw ConfigError("no seeds given");
  const SolutionField grid = make_grid(params, opt.grid);
  const Discretization disc(grid, params);
  Factored fac;
  fac.ldlt.compute(disc.matrix());
  if (fac.ldlt.info() != Eigen::Success) throw SolverError("factorisation of the eps-norm matrix failed");

  std::vector<SeedOutcome> outcomes;
  MPResult best;
  bool have = false;
  std::string failures;
  for (const auto& seed : opt.seeds) {
    SeedOutcome o;
    o.label = seed.label();
    try {
      MPResult r = descend(params, seed_field(grid, params, seed), opt, disc, fac);
      o.level = r.level;
      o.iterations = r.iterations;
      o.converged = true;
      if (!have || r.level < best.level) {
        best = std::move(r);
        best.seed = o.label;
        have = true;
      }
    } catch (const SolverError& e) {
      o.note = e.what();
      failures += o.label + ": " + e.what() + "\n";
    }
    outcomes.push_back(o);
  }
  if (!have) throw SolverError("no seed converged\n" + failures);
  best.seeds = std::move(outcomes);
  return best;
}

PeakInfo locate_peak(const SolutionField& field, double eps) {
  PeakInfo pk;
  const std::size_t ns = field.ns(), nt = field.nt();
  double vmax = -std::numeric_limits<double>::infinity(), vmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j) {
      const double x = field.at(i, j);
      vmin = std::min(vmin, x);
      if (x > vmax) {
        vmax = x;
        pk.i = i;
        pk.j = j;
      }
    }
  pk.value = vmax;
  pk.s = field.s[pk.i];
  pk.t = field.t[pk.j];
  pk.side = pk.i == 0 ? Side::inner : (pk.i + 1 == ns ? Side::outer : Side::interior);
  pk.distance_eps = std::min(pk.s - field.s.front(), field.s.back() - pk.s) / eps;
  if (vmax - vmin <= 1e-12 * std::abs(vmax)) {
    pk.degenerate = true;
    return pk;
  }
  // Discrete local maxima above 1: strictly above earlier neighbours and not
  // below later ones, so a flat top is counted once.
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j) {
      const double x = field.at(i, j);
      if (x < 1.0) continue;
      bool is_max = true;
      for (int di = -1; di <= 1 && is_max; ++di)
        for (int dj = -1; dj <= 1 && is_max; ++dj) {
          if (di == 0 && dj == 0) continue;
          const long a = static_cast<long>(i) + di, b = static_cast<long>(j) + dj;
          if (a < 0 || b < 0 || a >= static_cast<long>(ns) || b >= static_cast<long>(nt)) continue;
          const double y = field.at(a, b);
          const bool earlier = di < 0 || (di == 0 && dj < 0);
          if (earlier ? y >= x : y > x) is_max = false;
        }
      if (is_max) ++pk.local_maxima;
    }
  return pk;
}

PeakInfo locate_peak(const MPResult& result) { return locate_peak(result.field, result.eps); }

DecayFit decay_profile(const MPResult& result, const ReducedGeometry& geom) {
  const auto& pk = result.peak;
  if (pk.side == Side::interior) throw DomainError("decay profile is not applicable to an interior peak");
  const double q = std::sqrt(geom.kappa(pk.side));
  const auto& f = result.field;
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < f.ns(); ++i) {
    const double x = std::abs(f.s[i] - pk.s) / result.eps;
    if (x < 6.0 * q || x > 14.0 * q) continue;
    const double v = f.at(i, pk.j);
    if (!(v > 0.0)) throw FitError("nonpositive value on the decay ray");
    const double y = std::log(v);
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (n < 3) throw FitError("decay window holds fewer than three nodes");
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icept = (sy - slope * sx) / n;
  if (!(slope < 0.0)) throw FitError("field does not decay away from the peak");
  return {std::exp(icept), -slope};
}

double peak_profile_error(const MPResult& result, const GroundState& gs, double radius) {
  const auto& pk = result.peak;
  if (pk.side == Side::interior) throw DomainError("peak profile comparison needs a boundary peak");
  const FieldInterpolant interp(result.field);
  const double sigma = pk.side == Side::inner ? 1.0 : -1.0;
  const double c = warp_coeff(result.field.N);
  const double u0 = gs.profile.value(0.0);
  double err = 0.0;
  const int nr = 60, na = 24;
  for (int a = 0; a <= nr; ++a) {
    const double rho = radius * a / nr;
    for (int b = 0; b <= na; ++b) {
      const double th = 0.5 * std::numbers::pi * b / na;
      const double yn = rho * std::cos(th), yt = rho * std::sin(th);
      const double s = pk.s + sigma * result.eps * yn;
      const double t = pk.t + result.eps * yt / (c * pk.s);
      const double v = interp(s, t);
      err = std::max(err, std::abs(v - gs.profile.value(rho)));
    }
  }
  return err / u0;
}

} // namespace acl
