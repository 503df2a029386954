#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "acl/geometry.hpp"
#include "acl/radial_profile.hpp"

namespace acl::test {

// f returns value, first and second derivative at x.
using Jet = std::function<void(double, double&, double&, double&)>;

inline RadialProfile sample(const Jet& f, double lo, double hi, int n) {
  std::vector<double> x(n), v(n), d(n), dd(n);
  for (int k = 0; k < n; ++k) {
    x[k] = k + 1 == n ? hi : lo + (hi - lo) * k / (n - 1);
    f(x[k], v[k], d[k], dd[k]);
  }
  return RadialProfile(x, v, d, dd);
}

// v(s) = u(r(s)) with the chain rule through r = K s^q.
inline RadialProfile pull_back(const Jet& u, const ProblemParams& pp, int n) {
  const int N = pp.N;
  const double q = (2.0 * N - 1.0) / (2.0 * N);
  Jet v = [&](double s, double& val, double& d1, double& d2) {
    const double r = r_of_s(s, N);
    double u1, u2;
    u(r, val, u1, u2);
    const double r1 = q * r / s, r2 = q * (q - 1.0) * r / (s * s);
    d1 = u1 * r1;
    d2 = u2 * r1 * r1 + u1 * r2;
  };
  return sample(v, s_of_r(pp.a, N), s_of_r(pp.b, N), n);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

} // namespace acl::test
