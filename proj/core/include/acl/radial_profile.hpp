#pragma once

#include <cstddef>
#include <vector>

namespace acl {

// Samples of a 1D function with first (and optionally second) derivatives on
// a strictly increasing grid. Evaluation is cubic Hermite, or quintic Hermite
// when second derivatives are present.
class RadialProfile {
public:
  RadialProfile() = default;
  RadialProfile(std::vector<double> grid, std::vector<double> values,
                std::vector<double> derivs, std::vector<double> second = {});

  double value(double r) const;
  double deriv(double r) const;
  double second(double r) const;

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& derivs() const { return derivs_; }
  const std::vector<double>& seconds() const { return second_; }

  std::size_t size() const { return grid_.size(); }
  double front() const { return grid_.front(); }
  double back() const { return grid_.back(); }
  bool has_second() const { return !second_.empty(); }

private:
  struct Local {
    std::size_t i;
    double h, u;
  };
  Local locate(double r) const;

  std::vector<double> grid_, values_, derivs_, second_;
};

} // namespace acl
