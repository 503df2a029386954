#pragma once

#include <functional>
#include <span>

namespace acl::quad {

using Fn = std::function<double(double)>;

// Adaptive Gauss-Kronrod on [a, b]; refines until the embedded error estimate
// falls below rtol times the L1 norm of the integrand.
double integrate(const Fn& f, double a, double b, double rtol = 1e-12);

// Same, summed over consecutive pieces of a sorted breakpoint list.
double integrate(const Fn& f, std::span<const double> breaks, double rtol = 1e-12);

// Fixed 8-point Gauss-Legendre on [a, b].
double gauss8(const Fn& f, double a, double b);

} // namespace acl::quad
