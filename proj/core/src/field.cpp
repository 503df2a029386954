#include "acl/field.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>

#include "acl/error.hpp"
#include "acl/geometry.hpp"

namespace acl {

double SolutionField::volume_weight(std::size_t i, std::size_t j) const {
  return std::pow(s[i], 2 * N) * std::pow(std::sin(t[j]), 2 * N - 1) * std::cos(t[j]);
}

double SolutionField::inverse_metric_t(std::size_t i) const {
  const double cs = warp_coeff(N) * s[i];
  return 1.0 / (cs * cs);
}

void SolutionField::check() const {
  if (s.size() < 3 || t.size() < 3) throw ConfigError("field grid needs at least 3 nodes per axis");
  if (v.size() != s.size() * t.size()) throw ConfigError("field value count does not match grid");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!(s[i] > s[i - 1])) throw ConfigError("s grid not strictly increasing");
  for (std::size_t j = 1; j < t.size(); ++j)
    if (!(t[j] > t[j - 1])) throw ConfigError("t grid not strictly increasing");
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_field_csv(const SolutionField& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path);
  out << "s,t,v\n";
  for (std::size_t i = 0; i < field.ns(); ++i)
    for (std::size_t j = 0; j < field.nt(); ++j)
      out << format_double(field.s[i]) << ',' << format_double(field.t[j]) << ','
          << format_double(field.at(i, j)) << '\n';
}

namespace {

template <class T> void put(std::ofstream& out, T x) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  char b[sizeof(T)];
  std::memcpy(b, &x, sizeof(T));
  out.write(b, sizeof(T));
}

template <class T> T get(std::ifstream& in) {
  char b[sizeof(T)];
  if (!in.read(b, sizeof(T))) throw ConfigError("truncated ACL1 file");
  T x;
  std::memcpy(&x, b, sizeof(T));
  return x;
}

} // namespace

void write_field_acl1(const SolutionField& field, const std::string& path) {
  field.check();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path);
  out.write("ACL1", 4);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(field.ns()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(field.nt()));
  put<double>(out, field.s.front());
  put<double>(out, field.s.back());
  put<double>(out, field.t.front());
  put<double>(out, field.t.back());
  for (double x : field.s) put<double>(out, x);
  for (double x : field.t) put<double>(out, x);
  for (double x : field.v) put<double>(out, x);
}

SolutionField read_field_acl1(const std::string& path, int N) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "ACL1", 4) != 0) throw ConfigError(path + " is not an ACL1 file");
  SolutionField f;
  f.N = N;
  const auto ns = get<std::uint32_t>(in);
  const auto nt = get<std::uint32_t>(in);
  double bounds[4];
  for (double& b : bounds) b = get<double>(in);
  f.s.resize(ns);
  f.t.resize(nt);
  f.v.resize(static_cast<std::size_t>(ns) * nt);
  for (double& x : f.s) x = get<double>(in);
  for (double& x : f.t) x = get<double>(in);
  for (double& x : f.v) x = get<double>(in);
  f.check();
  if (f.s.front() != bounds[0] || f.s.back() != bounds[1] || f.t.front() != bounds[2] || f.t.back() != bounds[3])
    throw ConfigError("ACL1 bounds disagree with node arrays");
  return f;
}

namespace {

// Second derivatives of the clamped cubic spline with zero end slopes.
// The tridiagonal system depends only on the nodes, so it is factored once.
class ClampedSpline {
public:
  explicit ClampedSpline(const std::vector<double>& x) : x_(x) {
    const std::size_t n = x.size();
    lower_.assign(n, 0.0);
    diag_.assign(n, 0.0);
    upper_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double hl = i > 0 ? x[i] - x[i - 1] : 0.0;
      const double hr = i + 1 < n ? x[i + 1] - x[i] : 0.0;
      lower_[i] = hl;
      diag_[i] = 2.0 * (hl + hr);
      upper_[i] = hr;
    }
    // Thomas forward sweep on the matrix only.
    cprime_.assign(n, 0.0);
    denom_.assign(n, 0.0);
    denom_[0] = diag_[0];
    cprime_[0] = upper_[0] / denom_[0];
    for (std::size_t i = 1; i < n; ++i) {
      denom_[i] = diag_[i] - lower_[i] * cprime_[i - 1];
      cprime_[i] = upper_[i] / denom_[i];
    }
  }

  // y is read with the given stride; m receives the second derivatives.
  void solve(const double* y, std::size_t stride, double* m, std::size_t mstride) const {
    const std::size_t n = x_.size();
    auto Y = [&](std::size_t i) { return y[i * stride]; };
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double sl = i > 0 ? (Y(i) - Y(i - 1)) / (x_[i] - x_[i - 1]) : 0.0;
      const double sr = i + 1 < n ? (Y(i + 1) - Y(i)) / (x_[i + 1] - x_[i]) : 0.0;
      d[i] = 6.0 * (sr - sl);
    }
    d[0] /= denom_[0];
    for (std::size_t i = 1; i < n; ++i) d[i] = (d[i] - lower_[i] * d[i - 1]) / denom_[i];
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= cprime_[i] * d[i + 1];
    for (std::size_t i = 0; i < n; ++i) m[i * mstride] = d[i];
  }

private:
  std::vector<double> x_, lower_, diag_, upper_, cprime_, denom_;
};

struct Basis {
  std::size_t i;
  double b[4], d1[4], d2[4];
};

Basis basis(const std::vector<double>& x, double q) {
  const double slack = 1e-12 * (x.back() - x.front());
  if (q < x.front() - slack || q > x.back() + slack) throw DomainError("field evaluated outside its grid");
  q = std::clamp(q, x.front(), x.back());
  auto it = std::upper_bound(x.begin(), x.end(), q);
  std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  i = std::min(i, x.size() - 2);
  const double h = x[i + 1] - x[i];
  const double A = (x[i + 1] - q) / h, B = 1.0 - A;
  Basis r{};
  r.i = i;
  r.b[0] = A;
  r.b[1] = B;
  r.b[2] = (A * A * A - A) * h * h / 6.0;
  r.b[3] = (B * B * B - B) * h * h / 6.0;
  r.d1[0] = -1.0 / h;
  r.d1[1] = 1.0 / h;
  r.d1[2] = -(3.0 * A * A - 1.0) * h / 6.0;
  r.d1[3] = (3.0 * B * B - 1.0) * h / 6.0;
  r.d2[0] = 0.0;
  r.d2[1] = 0.0;
  r.d2[2] = A;
  r.d2[3] = B;
  return r;
}

} // namespace

FieldInterpolant::FieldInterpolant(const SolutionField& field) : field_(field) {
  field_.check();
  const std::size_t ns = field_.ns(), nt = field_.nt();
  ms_.assign(ns * nt, 0.0);
  mt_.assign(ns * nt, 0.0);
  mst_.assign(ns * nt, 0.0);
  const ClampedSpline ss(field_.s), st(field_.t);
  for (std::size_t j = 0; j < nt; ++j) ss.solve(&field_.v[j], nt, &ms_[j], nt);
  for (std::size_t i = 0; i < ns; ++i) {
    st.solve(&field_.v[i * nt], 1, &mt_[i * nt], 1);
    st.solve(&ms_[i * nt], 1, &mst_[i * nt], 1);
  }
}

double FieldInterpolant::operator()(double s, double t) const { return jet(s, t).v; }

FieldInterpolant::Jet FieldInterpolant::jet(double s, double t) const {
  const Basis bs = basis(field_.s, s), bt = basis(field_.t, t);
  const std::size_t nt = field_.nt();
  // Coefficient for (basis_s[a], basis_t[b]).
  auto coef = [&](int a, int b) {
    const std::size_t ii = bs.i + (a & 1), jj = bt.i + (b & 1);
    const std::size_t k = ii * nt + jj;
    const bool cs = a >= 2, ct = b >= 2;
    if (cs && ct) return mst_[k];
    if (cs) return ms_[k];
    if (ct) return mt_[k];
    return field_.v[k];
  };
  Jet J{0, 0, 0, 0, 0, 0};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double c = coef(a, b);
      J.v += c * bs.b[a] * bt.b[b];
      J.vs += c * bs.d1[a] * bt.b[b];
      J.vt += c * bs.b[a] * bt.d1[b];
      J.vss += c * bs.d2[a] * bt.b[b];
      J.vtt += c * bs.b[a] * bt.d2[b];
      J.vst += c * bs.d1[a] * bt.d1[b];
    }
  return J;
}

} // namespace acl
