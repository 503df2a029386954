#include "acl/radial_profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "acl/error.hpp"

namespace acl {

RadialProfile::RadialProfile(std::vector<double> grid, std::vector<double> values,
                             std::vector<double> derivs, std::vector<double> second)
    : grid_(std::move(grid)), values_(std::move(values)), derivs_(std::move(derivs)),
      second_(std::move(second)) {
  if (grid_.size() < 2) throw ConfigError("profile needs at least two nodes");
  if (values_.size() != grid_.size() || derivs_.size() != grid_.size())
    throw ConfigError("profile arrays differ in length");
  if (!second_.empty() && second_.size() != grid_.size())
    throw ConfigError("profile second-derivative array differs in length");
  for (std::size_t i = 1; i < grid_.size(); ++i)
    if (!(grid_[i] > grid_[i - 1])) throw ConfigError("profile grid not strictly increasing");
}

RadialProfile::Local RadialProfile::locate(double r) const {
  const double span = grid_.back() - grid_.front();
  const double slack = 1e-12 * std::max(1.0, span);
  if (r < grid_.front() - slack || r > grid_.back() + slack)
    throw DomainError("profile evaluated outside its grid");
  r = std::clamp(r, grid_.front(), grid_.back());
  auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
  std::size_t i = it == grid_.begin() ? 0 : static_cast<std::size_t>(it - grid_.begin()) - 1;
  i = std::min(i, grid_.size() - 2);
  const double h = grid_[i + 1] - grid_[i];
  return {i, h, (r - grid_[i]) / h};
}

namespace {

// Coefficients of the Hermite polynomial in the local variable u in [0, 1].
std::array<double, 6> coeffs(double h, double y0, double d0, double y1, double d1,
                             const double* s0, const double* s1) {
  std::array<double, 6> c{};
  c[0] = y0;
  c[1] = h * d0;
  if (s0 == nullptr) {
    c[2] = -3 * y0 - 2 * h * d0 + 3 * y1 - h * d1;
    c[3] = 2 * y0 + h * d0 - 2 * y1 + h * d1;
    return c;
  }
  const double a = h * h * *s0, b = h * h * *s1;
  c[2] = 0.5 * a;
  c[3] = -10 * y0 - 6 * h * d0 - 1.5 * a + 0.5 * b - 4 * h * d1 + 10 * y1;
  c[4] = 15 * y0 + 8 * h * d0 + 1.5 * a - b + 7 * h * d1 - 15 * y1;
  c[5] = -6 * y0 - 3 * h * d0 - 0.5 * a + 0.5 * b - 3 * h * d1 + 6 * y1;
  return c;
}

} // namespace

double RadialProfile::value(double r) const {
  const auto [i, h, u] = locate(r);
  const bool q = has_second();
  const auto c = coeffs(h, values_[i], derivs_[i], values_[i + 1], derivs_[i + 1],
                        q ? &second_[i] : nullptr, q ? &second_[i + 1] : nullptr);
  return c[0] + u * (c[1] + u * (c[2] + u * (c[3] + u * (c[4] + u * c[5]))));
}

double RadialProfile::deriv(double r) const {
  const auto [i, h, u] = locate(r);
  const bool q = has_second();
  const auto c = coeffs(h, values_[i], derivs_[i], values_[i + 1], derivs_[i + 1],
                        q ? &second_[i] : nullptr, q ? &second_[i + 1] : nullptr);
  return (c[1] + u * (2 * c[2] + u * (3 * c[3] + u * (4 * c[4] + u * 5 * c[5])))) / h;
}

double RadialProfile::second(double r) const {
  const auto [i, h, u] = locate(r);
  const bool q = has_second();
  const auto c = coeffs(h, values_[i], derivs_[i], values_[i + 1], derivs_[i + 1],
                        q ? &second_[i] : nullptr, q ? &second_[i + 1] : nullptr);
  return (2 * c[2] + u * (6 * c[3] + u * (12 * c[4] + u * 20 * c[5]))) / (h * h);
}

} // namespace acl
