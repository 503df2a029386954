#include "acl/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace acl::quad {

double integrate(const Fn& f, double a, double b, double rtol) {
  if (a == b) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 30, rtol, &err);
}

double integrate(const Fn& f, std::span<const double> breaks, double rtol) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) sum += integrate(f, breaks[k], breaks[k + 1], rtol);
  return sum;
}

double gauss8(const Fn& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 8>::integrate(f, a, b);
}

} // namespace acl::quad
