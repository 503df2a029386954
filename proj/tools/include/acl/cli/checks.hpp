#pragma once

#include <cstdint>
#include <vector>

#include "acl/field.hpp"
#include "acl/geometry.hpp"
#include "acl/radial_profile.hpp"

namespace acl::cli {

// Sum of random Gaussian bumps on [a, b] plus a constant, with exact first
// and second derivatives on a uniform grid.
struct RandomProfile {
  RadialProfile u;  // u(r)
  RadialProfile v;  // v(s) = u(r(s))
};

RandomProfile random_profile(const ProblemParams& params, std::uint64_t seed, int index, int points = 2001);

struct ReduceRow {
  int index = 0;
  double direct = 0;
  double reduced = 0;
  double rel = 0;
};

struct ReduceCheckReport {
  std::vector<ReduceRow> rows;
  double max_rel = 0;
};

ReduceCheckReport reduce_check(const ProblemParams& params, int profiles, std::uint64_t seed);

struct LiftCheckReport {
  int samples = 0;
  double orbit_spread = 0;       // max |u(T_tau x) - u(x)| over sampled orbits
  double max_annulus_residual = 0;
  double max_reduced_residual = 0;
  double max_pointwise_ratio = 0;  // where the reduced residual is not negligible
  int fixed_point_samples = 0;
  double min_displacement = 0;   // min |T_tau x - x| for tau in (delta, 2 pi - delta)
  double concentration_value = 0;
  double antipodal_value = 0;
  double concentration_ratio = 0;
  double peak_r = 0, peak_t = 0;
};

LiftCheckReport lift_check(const SolutionField& field, const ProblemParams& params, int samples,
                           int fixed_point_samples, std::uint64_t seed);

} // namespace acl::cli
