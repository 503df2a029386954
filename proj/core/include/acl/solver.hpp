#pragma once

#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "acl/field.hpp"
#include "acl/geometry.hpp"
#include "acl/ground_state.hpp"

namespace acl {

// Graded grid on [lo, hi]: cell sizes start at h_lo and h_hi at the ends and
// grow geometrically by `growth` up to h_max.
std::vector<double> graded_axis(double lo, double hi, double h_lo, double h_hi, double growth, double h_max);

struct GridSpec {
  double first_cell = 0.1;  // first s cell, in units of eps
  double max_cell = 0.5;    // largest s cell, in units of eps
  double growth = 1.06;
  double refine = 1.0;      // all cell sizes are multiplied by this factor
};

// Empty field on I' x [0, pi/2] for the reduced eps of `params`.
SolutionField make_grid(const ProblemParams& params, const GridSpec& spec);

// Vertex-centred finite volumes with exact cell integrals of the metric
// weights. Neumann data at the s ends and regularity at the poles come from
// the truncated control volumes.
class Discretization {
public:
  Discretization(const SolutionField& grid, const ProblemParams& params);

  std::size_t size() const { return n_; }
  // K v, the stiffness (Dirichlet form) applied to v, without eps.
  std::vector<double> stiffness(const std::vector<double>& v) const;
  double dirichlet(const std::vector<double>& v) const;
  // Lumped integral of |s|^{-eta} g over the cell of each node.
  const std::vector<double>& potential_mass() const { return mass_; }
  // Riemannian volume of each control cell.
  const std::vector<double>& cell_volume() const { return volume_; }

  double norm_sq(const std::vector<double>& v) const;  // ||v||_eps^2
  double energy(const std::vector<double>& v) const;   // Gamma_eps
  double nonlinear_mass(const std::vector<double>& v) const;  // int v^{p+1} / |s|^eta
  Eigen::SparseMatrix<double> matrix() const;           // eps^2 K + mass

  double eps() const { return eps_; }
  double p() const { return p_; }

private:
  std::size_t ns_, nt_, n_;
  double eps_, p_;
  std::vector<double> cs_, ct_;  // edge conductances in s and t
  std::vector<double> mass_, volume_;
};

// Nodewise Laplace-Beltrami operator of the reduced metric.
SolutionField laplace_beltrami(const SolutionField& field);

// Factor t* placing t* v on the Nehari set.
double nehari_scale(const SolutionField& field, const ProblemParams& params);

double gamma_eps(const SolutionField& field, const ProblemParams& params);

// Constant-solution level (1/2 - 1/(p+1)) int |s|^{-eta} dv_g.
double constant_level(const ProblemParams& params);

struct SeedSpec {
  enum class Kind { bump, test_function };
  Kind kind = Kind::bump;
  Side side = Side::inner;
  double t_hat = 0.0;  // latitude of the bump centre

  std::string label() const;
};

std::vector<SeedSpec> default_seeds();

struct SolverOptions {
  GridSpec grid;
  std::vector<SeedSpec> seeds = default_seeds();
  double tol = 1e-8;      // relative to the initial gradient norm
  int max_iter = 50000;
};

struct PeakInfo {
  double s = 0, t = 0;
  std::size_t i = 0, j = 0;
  double value = 0;
  Side side = Side::interior;
  int local_maxima = 0;
  double distance_eps = 0;  // distance to the boundary in units of eps
  bool degenerate = false;
};

struct SeedOutcome {
  std::string label;
  double level = 0;
  int iterations = 0;
  bool converged = false;
  std::string note;
};

struct MPResult {
  SolutionField field;
  ProblemParams params;
  double eps = 0;          // reduced eps
  double level = 0;
  double constant_level = 0;
  PeakInfo peak;
  double residual = 0;     // max nodewise residual of the discrete equation
  int iterations = 0;
  double gradient_ratio = 0;
  std::string seed;
  std::vector<SeedOutcome> seeds;
  std::vector<double> history;  // energy per accepted step
};

MPResult solve_from_seed(const ProblemParams& params, const SolutionField& seed, const SolverOptions& opt);
MPResult solve_mountain_pass(const ProblemParams& params, const SolverOptions& opt = {});

PeakInfo locate_peak(const SolutionField& field, double eps);
PeakInfo locate_peak(const MPResult& result);

// Exponential rate of v along the s ray through the peak, in units of 1/eps.
DecayFit decay_profile(const MPResult& result, const ReducedGeometry& geom);

// Sup-norm of v(P + eps y) - U(y) over |y| <= radius on the half ball,
// relative to U(0), where U is the kappa-rescaled ground state.
double peak_profile_error(const MPResult& result, const GroundState& gs, double radius = 3.0);

} // namespace acl
