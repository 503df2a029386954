#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace acl {

// Axisymmetric field v(s, t) on I' x [0, pi/2]; t is the geodesic polar angle
// on CP^N measured from a pole. Values are row-major, index i * nt + j.
struct SolutionField {
  int N = 1;
  std::vector<double> s;
  std::vector<double> t;
  std::vector<double> v;

  std::size_t ns() const { return s.size(); }
  std::size_t nt() const { return t.size(); }
  double& at(std::size_t i, std::size_t j) { return v[i * t.size() + j]; }
  double at(std::size_t i, std::size_t j) const { return v[i * t.size() + j]; }

  // s^{2N} sin^{2N-1} t cos t, up to the constant factor of the CP^N sphere.
  double volume_weight(std::size_t i, std::size_t j) const;
  // Inverse metric factor in the t direction, (c s)^{-2}.
  double inverse_metric_t(std::size_t i) const;

  void check() const;
};

std::string format_double(double x);

void write_field_csv(const SolutionField& field, const std::string& path);
void write_field_acl1(const SolutionField& field, const std::string& path);
SolutionField read_field_acl1(const std::string& path, int N = 1);

// Tensor-product cubic spline through the nodal values, with zero normal
// slope on all four sides of the box.
class FieldInterpolant {
public:
  struct Jet {
    double v, vs, vt, vss, vtt, vst;
  };

  explicit FieldInterpolant(const SolutionField& field);

  double operator()(double s, double t) const;
  Jet jet(double s, double t) const;

  const SolutionField& field() const { return field_; }

private:
  SolutionField field_;
  std::vector<double> ms_, mt_, mst_;
};

} // namespace acl
